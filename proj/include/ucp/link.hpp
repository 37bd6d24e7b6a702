#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ucp/channel.hpp"
#include "ucp/common.hpp"
#include "ucp/frontend.hpp"
#include "ucp/precoder.hpp"
#include "ucp/qam.hpp"
#include "ucp/waveforms.hpp"

namespace ucp {

enum class SchemeId { ucp, dco, aco, uofdm, bb };

std::string scheme_name(SchemeId id);
SchemeId scheme_from_name(const std::string& name);

// Scheme defaults following the throughput-parity pairing: full-rate schemes
// use 16-QAM, half-rate schemes double the bits per symbol (256-QAM).
int default_qam_order(SchemeId id);
double default_clip_target(SchemeId id);
Polarity scheme_polarity(SchemeId id);

struct LinkConfig {
    int n = 256;
    int cp = 16;
    double bandwidth = 625e6;
    int payload_syms = 10;
    int packets_per_run = 5;
    int runs = 100;
    ChannelKind channel = ChannelKind::awgn;
    std::vector<double> pn_grid_db;  // noise power P_N = 20*log10(sigma)
    std::uint64_t seed = 1;
    int threads = 0;  // 0 = hardware concurrency
    std::vector<SchemeId> schemes = {SchemeId::ucp, SchemeId::dco, SchemeId::aco,
                                     SchemeId::uofdm};
    ShapingConfig shaping;
    FrontEndConfig frontend;  // range/bias template; gain and clip target are set per scheme
    bool calibrate = true;    // false keeps frontend.gain as given (ideal dynamic range)
    RoomGeometry geometry;   // rx position is set from `channel` kind
    int zc_root = 1;
    // Optional overrides; empty means scheme defaults.
    std::vector<double> clip_targets;
};

// Single-tap zero-forcing equalizer diagonal; zeros at null bins.
struct Equalizer {
    CVec d;
};

// d[k] = training[k] / rx_fft[k] on the active bins of `mask`, 0 elsewhere.
// `preamble_rx` is the received CP-prefixed preamble block.
Equalizer estimate_channel(const RVec& preamble_rx, const CVec& training_freq,
                           const SpectralMask& mask, int cp_len);

struct ReportRow {
    std::string scheme;
    std::string channel;
    double pn_db = 0.0;
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    double ber = 0.0;
    double evm_db = 0.0;
    double clip_prob = 0.0;   // calibrated clipping probability target
    double papr_db = 0.0;     // mean per-packet PAPR of the shaped stream
    double ops_per_block = 0.0;  // demod multiply count per block (ucp only)
};

struct LinkReport {
    std::vector<ReportRow> rows;
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::string to_csv() const;
    std::string to_json() const;
};

LinkReport run_campaign(const LinkConfig& cfg);

// Baseline-wander experiment: BB vs UCP-OFDM under sinusoidal wander on a
// flat AWGN channel.
struct WanderResult {
    RVec tx_bb, tx_ucp;        // wander-impaired received streams (high rate)
    CVec rx_symbols_bb, rx_symbols_ucp;
    CVec tx_symbols_bb, tx_symbols_ucp;
    double evm_bb_db = 0.0, evm_ucp_db = 0.0;
    std::uint64_t ucp_symbol_errors = 0;
};

WanderResult run_wander(const LinkConfig& cfg, double noise_power_db, int n_symbols,
                        double wander_period_syms);

// PAPR experiment: per-symbol PAPR samples of the shaped optical stream for
// each scheme in cfg.schemes. Bipolar streams carry a 3-sigma DC bias with no
// clipping; unipolar streams are measured as emitted.
std::vector<std::pair<std::string, std::vector<double>>> run_papr(const LinkConfig& cfg,
                                                                  int n_symbols);

}  // namespace ucp
