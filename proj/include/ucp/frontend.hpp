#pragma once

#include <vector>

#include "ucp/common.hpp"

namespace ucp {

// Root-raised-cosine polyphase shaping.
struct ShapingConfig {
    int oversampling = 8;
    double rolloff = 0.25;
    int group_delay_syms = 8;  // filter half-length in low-rate samples
};

// Unit-energy symmetric RRC taps, length 2*group_delay*oversampling + 1.
RVec rrc_taps(const ShapingConfig& cfg);

// Closed-form RRC impulse response at t symbol periods (unnormalized taps).
double rrc_impulse(double t, double rolloff);

// Upsample by cfg.oversampling and filter; output length
// len*ov + 2*group_delay*ov (full convolution, transients included).
RVec shape(const RVec& lowrate, const ShapingConfig& cfg);

// Matched filter + downsample. Returns n_lowrate samples; sample i is taken
// at high-rate index i*ov + 2*group_delay*ov (the cascade delay of the two
// linear-phase filters).
RVec matched_downsample(const RVec& highrate, const ShapingConfig& cfg, int n_lowrate);

// Optical front-end dynamic range and scaling.
struct FrontEndConfig {
    double range_lo = 0.0;
    double range_hi = 1.0;
    double bias = 0.5;                // used for bipolar schemes
    double gain = 1.0;
    double target_clip_prob = 1e-2;   // in (0, 0.5)
};

enum class Polarity { bipolar, unipolar };

// Bisects the gain until the empirical clipping probability of
// clip(bias + gain*x) (bipolar) or clip(gain*x) (unipolar) over the
// calibration stream matches target_clip_prob; stores and returns the gain.
double calibrate_gain(const RVec& calib_stream, FrontEndConfig& fe, Polarity pol);

// clip(bias + gain*x) for bipolar input, clip(gain*x) for unipolar.
RVec scale_and_bias(const RVec& stream, const FrontEndConfig& fe, Polarity pol);

// Per-window PAPR in dB: 10*log10(max|s|^2 / mean|s|^2). Zero-power windows
// are skipped; `skipped` (optional) receives their count.
std::vector<double> papr_db(const RVec& stream, int window, int* skipped = nullptr);

// Empirical CCDF of `values` on `grid`: P(value > grid[i]).
std::vector<double> ccdf(const std::vector<double>& values, const std::vector<double>& grid);

// PAPR (dB) at a CCDF level, linearly interpolated on a sorted sample.
double papr_at_ccdf(std::vector<double> values, double level);

}  // namespace ucp
