#include "ucp/frontend.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ucp {

double rrc_impulse(double t, double beta) {
    const double pi = std::numbers::pi;
    if (std::abs(t) < 1e-12)  // analytic limit at t = 0
        return 1.0 - beta + 4.0 * beta / pi;
    if (beta > 0.0 && std::abs(std::abs(t) - 1.0 / (4.0 * beta)) < 1e-9) {
        // analytic limit at the denominator root t = +-1/(4*beta)
        return beta / std::sqrt(2.0) *
               ((1.0 + 2.0 / pi) * std::sin(pi / (4.0 * beta)) +
                (1.0 - 2.0 / pi) * std::cos(pi / (4.0 * beta)));
    }
    const double num = std::sin(pi * t * (1.0 - beta)) +
                       4.0 * beta * t * std::cos(pi * t * (1.0 + beta));
    const double den = pi * t * (1.0 - 16.0 * beta * beta * t * t);
    return num / den;
}

RVec rrc_taps(const ShapingConfig& cfg) {
    const int half = cfg.group_delay_syms * cfg.oversampling;
    RVec taps(2 * half + 1);
    for (int i = -half; i <= half; ++i)
        taps(i + half) = rrc_impulse(static_cast<double>(i) / cfg.oversampling, cfg.rolloff);
    taps /= taps.norm();
    return taps;
}

RVec shape(const RVec& lowrate, const ShapingConfig& cfg) {
    const int ov = cfg.oversampling;
    const int half = cfg.group_delay_syms * ov;
    const RVec taps = rrc_taps(cfg);
    const int n_low = static_cast<int>(lowrate.size());
    if (n_low < 1) throw SizeError("shape: empty stream");
    const int n_out = n_low * ov + 2 * half;
    RVec out = RVec::Zero(n_out);
    // Polyphase: the upsampled input is nonzero only at multiples of ov, so
    // out[j] = sum_i lowrate[i] * taps[j - i*ov].
    for (int i = 0; i < n_low; ++i) {
        const double v = lowrate(i);
        if (v == 0.0) continue;
        out.segment(i * ov, 2 * half + 1) += v * taps;
    }
    return out;
}

RVec matched_downsample(const RVec& highrate, const ShapingConfig& cfg, int n_lowrate) {
    const int ov = cfg.oversampling;
    const int half = cfg.group_delay_syms * ov;
    const RVec taps = rrc_taps(cfg);
    const int n_hi = static_cast<int>(highrate.size());
    if (n_hi < 2 * half + 1)
        throw SizeError("matched_downsample: stream shorter than the filter span");
    RVec out(n_lowrate);
    for (int i = 0; i < n_lowrate; ++i) {
        // Matched output at high-rate index i*ov + 2*half equals the dot
        // product of taps with the input window starting at i*ov.
        const int start = i * ov;
        if (start + 2 * half + 1 > n_hi)
            throw SizeError("matched_downsample: stream too short for requested samples");
        out(i) = taps.dot(highrate.segment(start, 2 * half + 1));
    }
    return out;
}

namespace {

double clip_fraction(const RVec& x, const FrontEndConfig& fe, Polarity pol, double gain) {
    // Unipolar streams pick up gain-invariant undershoot from pulse-shaping
    // ringing at the zero rail, so only the upper rail is calibrated there.
    Eigen::Index clipped = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double v = (pol == Polarity::bipolar) ? fe.bias + gain * x(i) : gain * x(i);
        if (v > fe.range_hi || (pol == Polarity::bipolar && v < fe.range_lo)) ++clipped;
    }
    return static_cast<double>(clipped) / static_cast<double>(x.size());
}

}  // namespace

double calibrate_gain(const RVec& calib_stream, FrontEndConfig& fe, Polarity pol) {
    if (fe.target_clip_prob <= 0.0 || fe.target_clip_prob >= 0.5)
        throw ConfigError("calibrate_gain: target_clip_prob must be in (0, 0.5)");
    if (calib_stream.size() < 1000)
        throw ConfigError("calibrate_gain: calibration stream too short");
    if (!(fe.range_lo < fe.bias && fe.bias < fe.range_hi))
        throw ConfigError("calibrate_gain: need range_lo < bias < range_hi");

    double lo = 0.0, hi = 1.0;
    while (clip_fraction(calib_stream, fe, pol, hi) < fe.target_clip_prob) {
        hi *= 2.0;
        if (hi > 1e12)
            throw ConfigError("calibrate_gain: target clipping probability unreachable");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (clip_fraction(calib_stream, fe, pol, mid) < fe.target_clip_prob)
            lo = mid;
        else
            hi = mid;
    }
    fe.gain = hi;  // smallest probed gain meeting the target
    const double achieved = clip_fraction(calib_stream, fe, pol, fe.gain);
    if (achieved > 10.0 * fe.target_clip_prob)
        throw ConfigError("calibrate_gain: empirical clip probability overshoots target");
    return fe.gain;
}

RVec scale_and_bias(const RVec& stream, const FrontEndConfig& fe, Polarity pol) {
    RVec out(stream.size());
    const double offset = (pol == Polarity::bipolar) ? fe.bias : 0.0;
    for (Eigen::Index i = 0; i < stream.size(); ++i)
        out(i) = std::clamp(offset + fe.gain * stream(i), fe.range_lo, fe.range_hi);
    return out;
}

std::vector<double> papr_db(const RVec& stream, int window, int* skipped) {
    if (window < 1 || stream.size() < window)
        throw SizeError("papr_db: stream shorter than one window");
    std::vector<double> out;
    int skip = 0;
    const int n_win = static_cast<int>(stream.size()) / window;
    out.reserve(n_win);
    for (int w = 0; w < n_win; ++w) {
        const auto seg = stream.segment(static_cast<Eigen::Index>(w) * window, window);
        const double mean_p = seg.squaredNorm() / window;
        if (mean_p <= 0.0) {
            ++skip;
            continue;
        }
        const double max_p = seg.cwiseAbs2().maxCoeff();
        out.push_back(10.0 * std::log10(max_p / mean_p));
    }
    if (skipped) *skipped = skip;
    return out;
}

std::vector<double> ccdf(const std::vector<double>& values, const std::vector<double>& grid) {
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto it = std::upper_bound(sorted.begin(), sorted.end(), grid[i]);
        out[i] = static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
    }
    return out;
}

double papr_at_ccdf(std::vector<double> values, double level) {
    if (values.empty()) throw SizeError("papr_at_ccdf: no values");
    std::sort(values.begin(), values.end());
    // value v with P(PAPR > v) = level sits at rank (1 - level) * n.
    const double rank = (1.0 - level) * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(rank);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = rank - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

}  // namespace ucp
