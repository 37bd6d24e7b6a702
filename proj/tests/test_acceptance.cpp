// End-to-end acceptance gate: one pass/fail line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "ucp/fft.hpp"
#include "ucp/link.hpp"

using namespace ucp;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int idx, const char* label, bool ok, const Timer& t, const std::string& detail) {
    std::printf("criterion %d (%s): %s (%.1f s) %s\n", idx, label, ok ? "PASS" : "FAIL",
                t.seconds(), detail.c_str());
    if (!ok) ++g_failures;
}

RVec random_vec(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> nd;
    RVec v(n);
    for (int i = 0; i < n; ++i) v(i) = nd(rng);
    return v;
}

CVec random_qam_block(std::mt19937_64& rng, const QamMap& qm, int n_syms) {
    std::vector<std::uint8_t> bits(n_syms * qm.bits_per_symbol);
    for (auto& b : bits) b = rng() & 1u;
    return qam_map(bits, qm);
}

// Noise level where the (pn, ber) curve crosses `target`, by log-linear
// interpolation; NaN if the curve never crosses.
double crossing_pn(const std::vector<std::pair<double, double>>& curve, double target) {
    for (size_t i = 1; i < curve.size(); ++i) {
        double b0 = curve[i - 1].second, b1 = curve[i].second;
        if (b0 >= target && b1 < target && b1 > 0.0) {
            double f = (std::log10(b0) - std::log10(target)) /
                       (std::log10(b0) - std::log10(b1));
            return curve[i - 1].first + f * (curve[i].first - curve[i - 1].first);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::vector<std::pair<double, double>> scheme_curve(const LinkReport& rep,
                                                    const std::string& scheme) {
    std::vector<std::pair<double, double>> curve;
    for (const auto& r : rep.rows)
        if (r.scheme == scheme) curve.emplace_back(r.pn_db, r.ber);
    std::sort(curve.begin(), curve.end(),
              [](auto& a, auto& b) { return a.first > b.first; });
    return curve;
}

void criterion_1() {
    Timer t;
    bool ok = true;
    std::string detail;
    const int masks[][3] = {{32, 2, 3}, {64, 0, 5}, {256, 0, 0}};
    std::mt19937_64 rng(1);
    for (auto& ms : masks) {
        SpectralMask mask = build_mask(ms[0], ms[1], ms[2]);
        Precoder pre = synthesize(mask);
        const int n = mask.n_total;

        double unit = (pre.w.adjoint() * pre.w - CMat::Identity(n, n)).cwiseAbs().maxCoeff();
        if (unit >= 1e-10) ok = false;

        Eigen::MatrixXi pat = pattern_matrix(mask);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (pat(i, j) == 0 && pre.w(i, j) != cplx(0.0)) ok = false;

        double imag_max = 0.0;
        for (int j = 0; j < n; ++j) {
            CVec col = fft_unitary(pre.w.col(j), FftDirection::forward);
            imag_max = std::max(imag_max, col.imag().cwiseAbs().maxCoeff());
        }
        if (imag_max >= 1e-10) ok = false;

        Eigen::JacobiSVD<RMat> svd(pre.p - RMat::Identity(n, n));
        const auto& sv = svd.singularValues();
        int rank = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > 1e-10 * sv(0)) ++rank;
        if (rank != 2 * mask.z_null) ok = false;

        RVec x = random_vec(rng, n);
        RVec y = encode_fast(pre, x);
        if ((decode_fast(pre, y) - x).cwiseAbs().maxCoeff() >= 1e-9) ok = false;
        if ((y - pre.p * x).cwiseAbs().maxCoeff() >= 1e-10) ok = false;

        detail += " n=" + std::to_string(n) + ":rank=" + std::to_string(rank);
    }
    report(1, "precoder properties", ok && t.seconds() < 10.0, t, detail);
}

void criterion_2() {
    Timer t;
    SpectralMask mask = build_mask(256, 0, 0);
    Precoder pre = synthesize(mask);
    SubcarrierMap map = make_subcarrier_map(mask);
    QamMap qm = make_qam(16);
    std::mt19937_64 rng(2);
    double worst_db = -1e9;
    for (int trial = 0; trial < 1000; ++trial) {
        CVec x = random_qam_block(rng, qm, mask.m_active / 2);
        RVec block = encode_fast(pre, subcarrier_place(map, x));
        CVec spec = fft_unitary(block.cast<cplx>(), FftDirection::forward);
        double active_mean = 0.0;
        for (int k : mask.active_natural()) active_mean += std::norm(spec(k));
        active_mean /= mask.m_active;
        for (int k = 0; k < mask.n_total; ++k)
            if (!mask.is_active_natural(k))
                worst_db = std::max(worst_db,
                                    10.0 * std::log10(std::norm(spec(k)) / active_mean));
    }
    bool ok = worst_db < -90.0 && t.seconds() < 10.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst null bin %.1f dB", worst_db);
    report(2, "null-bin guarantee", ok, t, buf);
}

void criterion_3() {
    Timer t;
    LinkConfig cfg;
    cfg.schemes = {SchemeId::bb, SchemeId::ucp, SchemeId::dco, SchemeId::aco,
                   SchemeId::uofdm};
    auto samples = run_papr(cfg, 10000);
    double papr[5] = {0, 0, 0, 0, 0};
    for (auto& [name, vals] : samples) {
        double v = papr_at_ccdf(vals, 1e-3);
        if (name == "bb") papr[0] = v;
        if (name == "ucp") papr[1] = v;
        if (name == "dco") papr[2] = v;
        if (name == "aco") papr[3] = v;
        if (name == "uofdm") papr[4] = v;
    }
    double gap_bb = papr[1] - papr[0];
    bool ok = gap_bb >= 0.5 && gap_bb <= 3.0 && papr[0] < papr[1] &&
              papr[1] <= papr[2] && papr[3] > papr[1] + 2.0 && papr[4] > papr[1] + 2.0 &&
              t.seconds() < 300.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "bb=%.2f ucp=%.2f dco=%.2f aco=%.2f uofdm=%.2f dB",
                  papr[0], papr[1], papr[2], papr[3], papr[4]);
    report(3, "papr ccdf", ok, t, buf);
}

void criterion_4() {
    Timer t;
    LinkConfig cfg;
    WanderResult res = run_wander(cfg, -40.0, 200, 45.0);
    bool ok = res.evm_ucp_db < -25.0 && res.evm_bb_db >= res.evm_ucp_db + 15.0 &&
              res.ucp_symbol_errors == 0 && t.seconds() < 60.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "evm ucp=%.2f bb=%.2f dB, ucp symbol errors=%llu",
                  res.evm_ucp_db, res.evm_bb_db,
                  (unsigned long long)res.ucp_symbol_errors);
    report(4, "baseline-wander resilience", ok, t, buf);
}

void criterion_5() {
    Timer t;
    LinkConfig cfg;
    cfg.runs = 100;
    cfg.channel = ChannelKind::awgn;
    cfg.schemes = {SchemeId::ucp, SchemeId::dco, SchemeId::aco, SchemeId::uofdm};
    for (double pn = -20.0; pn >= -28.0; pn -= 1.0) cfg.pn_grid_db.push_back(pn);
    LinkReport rep = run_campaign(cfg);

    double pn_ucp = crossing_pn(scheme_curve(rep, "ucp"), 1e-3);
    double pn_dco = crossing_pn(scheme_curve(rep, "dco"), 1e-3);
    bool ok = std::isfinite(pn_ucp) && std::isfinite(pn_dco) &&
              std::abs(pn_ucp - pn_dco) <= 1.5;
    // Unipolar schemes: BER still above 1e-3 four dB past the ucp crossing
    // (they either need >= 4 dB more headroom or sit on an error floor).
    for (const char* s : {"aco", "uofdm"}) {
        auto curve = scheme_curve(rep, s);
        double pn_uni = crossing_pn(curve, 1e-3);
        if (std::isfinite(pn_uni) && pn_uni > pn_ucp - 4.0) ok = false;
    }
    ok = ok && t.seconds() < 600.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "ucp@1e-3=%.2f dB, dco@1e-3=%.2f dB, gap=%.2f dB",
                  pn_ucp, pn_dco, pn_ucp - pn_dco);
    report(5, "awgn ber ordering", ok, t, buf);
}

void criterion_6() {
    Timer t;
    LinkConfig cfg;
    cfg.runs = 100;
    cfg.channel = ChannelKind::ndlos;
    cfg.schemes = {SchemeId::ucp, SchemeId::dco};
    for (double pn = -50.0; pn >= -66.0; pn -= 2.0) cfg.pn_grid_db.push_back(pn);
    LinkReport rep = run_campaign(cfg);
    double pn_ucp = crossing_pn(scheme_curve(rep, "ucp"), 1e-3);
    double pn_dco = crossing_pn(scheme_curve(rep, "dco"), 1e-3);
    double gap = pn_ucp - pn_dco;
    bool ok = std::isfinite(pn_ucp) && std::isfinite(pn_dco) && gap >= 3.0 &&
              gap <= 7.0 && t.seconds() < 1200.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "ucp@1e-3=%.2f dB, dco@1e-3=%.2f dB, gap=%.2f dB",
                  pn_ucp, pn_dco, gap);
    report(6, "ndlos ber gap", ok, t, buf);
}

void criterion_7() {
    const int n = 256, z = 2;
    Precoder pre = synthesize(build_mask(n, 0, 0));  // setup, not timed
    Timer t;
    PrecoderCost cost = op_count(pre);
    std::mt19937_64 rng(7);
    OpCounter enc_ops, dec_ops;
    RVec x = random_vec(rng, n);
    encode_fast(pre, x, &enc_ops);
    decode_fast(pre, x, &dec_ops);
    bool ok = cost.encode_macs == std::uint64_t(4 * n * z) &&
              cost.storage_reals == std::uint64_t(8 * n) &&
              enc_ops.multiplies == std::uint64_t(4 * n * z) &&
              dec_ops.multiplies == std::uint64_t(4 * n * z) && t.seconds() < 1.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "macs=%llu (4NZ=%d), storage=%llu (8N=%d)",
                  (unsigned long long)cost.encode_macs, 4 * n * z,
                  (unsigned long long)cost.storage_reals, 8 * n);
    report(7, "complexity telemetry", ok, t, buf);
}

void criterion_8() {
    Timer t;
    LinkConfig cfg;
    cfg.n = 64;
    cfg.runs = 6;
    cfg.packets_per_run = 2;
    cfg.payload_syms = 4;
    cfg.channel = ChannelKind::ndlos;
    cfg.schemes = {SchemeId::ucp, SchemeId::dco};
    cfg.pn_grid_db = {-40.0, -50.0};
    cfg.seed = 99;
    cfg.threads = 1;
    std::string csv1 = run_campaign(cfg).to_csv();
    cfg.threads = 4;
    std::string csv4 = run_campaign(cfg).to_csv();
    bool ok = csv1 == csv4 && !csv1.empty() && t.seconds() < 60.0;
    report(8, "determinism across thread counts", ok, t,
           ok ? "csv bit-identical for 1 and 4 threads" : "csv outputs differ");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (g_failures) std::printf("%d criterion(s) FAILED\n", g_failures);
    else std::printf("all criteria passed\n");
    return g_failures == 0 ? 0 : 1;
}
