#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "json.hpp"
#include "ucp/fft.hpp"
#include "ucp/link.hpp"

using namespace ucp;

namespace {

// Wide-open front end: unit gain, no clipping, no calibration.
LinkConfig ideal_config(int n) {
    LinkConfig cfg;
    cfg.n = n;
    cfg.calibrate = false;
    cfg.frontend.range_lo = -1e9;
    cfg.frontend.range_hi = 1e9;
    cfg.frontend.bias = 0.0;
    return cfg;
}

const ReportRow& row_of(const LinkReport& rep, const std::string& scheme, double pn) {
    for (const auto& r : rep.rows)
        if (r.scheme == scheme && r.pn_db == pn) return r;
    throw std::runtime_error("row not found: " + scheme);
}

}  // namespace

TEST_CASE("scheme naming and defaults") {
    for (SchemeId id : {SchemeId::ucp, SchemeId::dco, SchemeId::aco, SchemeId::uofdm,
                        SchemeId::bb})
        CHECK(scheme_from_name(scheme_name(id)) == id);
    CHECK_THROWS_AS(scheme_from_name("ofdm"), ConfigError);

    // Throughput-parity pairing: half-rate schemes double the bits per symbol.
    CHECK(default_qam_order(SchemeId::ucp) == 16);
    CHECK(default_qam_order(SchemeId::dco) == 16);
    CHECK(default_qam_order(SchemeId::bb) == 16);
    CHECK(default_qam_order(SchemeId::aco) == 256);
    CHECK(default_qam_order(SchemeId::uofdm) == 256);

    CHECK(scheme_polarity(SchemeId::ucp) == Polarity::bipolar);
    CHECK(scheme_polarity(SchemeId::aco) == Polarity::unipolar);
    CHECK(scheme_polarity(SchemeId::uofdm) == Polarity::unipolar);

    for (SchemeId id : {SchemeId::ucp, SchemeId::dco, SchemeId::aco, SchemeId::uofdm})
        CHECK(default_clip_target(id) > 0.0);
}

TEST_CASE("channel estimation from the preamble") {
    const int n = 16, cp = 4;
    const SpectralMask mask = build_mask(n, 0, 0);
    const ZcPreamble pre = zadoff_chu_preamble(mask, 1, cp, 1.0);

    SUBCASE("flat gain inverts to 1/g") {
        const double g = 0.37;
        const Equalizer eq = estimate_channel(g * pre.time_block, pre.training, mask, cp);
        for (int k : mask.active_natural())
            CHECK(std::abs(eq.d(k) - 1.0 / g) < 1e-9);
    }

    SUBCASE("two-tap channel: equalizer times true response is unity") {
        ChannelRealization ch;
        ch.taps = RVec::Zero(2);
        ch.taps << 0.8, 0.3;
        Rng rng(1);
        const RVec rx = apply_channel(pre.time_block, ch, 1, rng);
        const Equalizer eq = estimate_channel(rx, pre.training, mask, cp);
        CVec padded = CVec::Zero(n);
        padded(0) = ch.taps(0);
        padded(1) = ch.taps(1);
        const CVec hf = fft_unitary(padded, FftDirection::forward);
        for (int k : mask.active_natural())
            CHECK(std::abs(eq.d(k) * std::sqrt(double(n)) * hf(k) - 1.0) < 1e-9);
    }

    SUBCASE("null bins are exactly zero") {
        const Equalizer eq = estimate_channel(pre.time_block, pre.training, mask, cp);
        CHECK(eq.d(0) == cplx(0.0));
        CHECK(eq.d(n / 2) == cplx(0.0));
    }

    SUBCASE("vanishing pilot names the offending bin") {
        const RVec dead = RVec::Zero(n + cp);
        CHECK_THROWS_WITH_AS(estimate_channel(dead, pre.training, mask, cp),
                             doctest::Contains("bin"), SingularityError);
    }

    SUBCASE("length mismatch is rejected") {
        CHECK_THROWS_AS(estimate_channel(RVec::Zero(n), pre.training, mask, cp),
                        SizeError);
    }
}

TEST_CASE("noiseless ideal link delivers zero bit errors for every scheme") {
    LinkConfig cfg = ideal_config(64);
    cfg.runs = 1;
    cfg.packets_per_run = 1;
    cfg.payload_syms = 4;
    cfg.pn_grid_db = {-300.0};
    cfg.schemes = {SchemeId::ucp, SchemeId::dco, SchemeId::aco, SchemeId::uofdm,
                   SchemeId::bb};
    const LinkReport rep = run_campaign(cfg);
    REQUIRE(rep.rows.size() == 5);
    for (const auto& r : rep.rows) {
        INFO(r.scheme);
        CHECK(r.bits > 0);
        CHECK(r.errors == 0);
        // Bounded by the truncated-cascade ISI floor, not by noise.
        CHECK(r.evm_db < -50.0);
    }
}

TEST_CASE("campaign validation errors") {
    LinkConfig cfg = ideal_config(64);
    cfg.pn_grid_db = {-20.0};
    SUBCASE("bad fft size") {
        cfg.n = 48;
        CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
    }
    SUBCASE("empty grid") {
        cfg.pn_grid_db.clear();
        CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
    }
    SUBCASE("clip target list length mismatch") {
        cfg.clip_targets = {1e-2};
        CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
    }
    SUBCASE("no schemes") {
        cfg.schemes.clear();
        CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
    }
}

TEST_CASE("determinism: same seed, any thread count") {
    LinkConfig cfg = ideal_config(64);
    cfg.runs = 4;
    cfg.packets_per_run = 1;
    cfg.payload_syms = 2;
    cfg.pn_grid_db = {-25.0, -20.0};
    cfg.schemes = {SchemeId::ucp, SchemeId::dco};
    cfg.seed = 42;
    cfg.threads = 1;
    const std::string a = run_campaign(cfg).to_csv();
    const std::string b = run_campaign(cfg).to_csv();
    CHECK(a == b);
    cfg.threads = 3;
    CHECK(run_campaign(cfg).to_csv() == a);
    cfg.seed = 43;
    CHECK(run_campaign(cfg).to_csv() != a);
}

TEST_CASE("ucp does not trail dco in awgn under paired seeds") {
    // Moderate-SNR operating point: both schemes make errors, ucp leads.
    LinkConfig cfg;
    cfg.n = 256;
    cfg.runs = 12;
    cfg.packets_per_run = 2;
    cfg.payload_syms = 6;
    cfg.pn_grid_db = {-24.0};
    cfg.schemes = {SchemeId::ucp, SchemeId::dco};
    cfg.seed = 7;
    const LinkReport rep = run_campaign(cfg);
    const ReportRow& ucp = row_of(rep, "ucp", -24.0);
    const ReportRow& dco = row_of(rep, "dco", -24.0);
    CHECK(ucp.ber <= dco.ber);
    CHECK(ucp.ber > 0.0);  // the operating point actually exercises errors
}

TEST_CASE("unipolar 256-qam schemes floor out at low noise") {
    LinkConfig cfg;
    cfg.n = 256;
    cfg.runs = 6;
    cfg.packets_per_run = 1;
    cfg.payload_syms = 4;
    cfg.pn_grid_db = {-60.0};
    cfg.schemes = {SchemeId::aco, SchemeId::uofdm};
    const LinkReport rep = run_campaign(cfg);
    for (const auto& r : rep.rows) {
        INFO(r.scheme);
        CHECK(r.ber > 1e-3);
    }
}

TEST_CASE("op telemetry stays within the demodulation budget") {
    LinkConfig cfg = ideal_config(64);
    cfg.runs = 1;
    cfg.packets_per_run = 1;
    cfg.payload_syms = 3;
    cfg.pn_grid_db = {-300.0};
    cfg.schemes = {SchemeId::ucp};
    const LinkReport rep = run_campaign(cfg);
    const ReportRow& r = rep.rows.at(0);
    const SpectralMask mask = build_mask(cfg.n, 0, 0);
    const double budget = 2.0 * cfg.n * std::log2(double(cfg.n)) +
                          2.0 * cfg.n * mask.z_null + 2.0 * mask.m_active;
    CHECK(r.ops_per_block > 0.0);
    CHECK(r.ops_per_block <= budget);
    // Exact accounting: two transforms at (N/2)log2 N multiplies each, one
    // equalizer multiply per active bin, 4NZ for the nulling-matrix factors.
    const double expect = cfg.n * std::log2(double(cfg.n)) + mask.m_active +
                          4.0 * cfg.n * mask.z_null;
    CHECK(r.ops_per_block == expect);
}

TEST_CASE("report serialization") {
    LinkConfig cfg = ideal_config(64);
    cfg.runs = 1;
    cfg.packets_per_run = 1;
    cfg.payload_syms = 2;
    cfg.pn_grid_db = {-30.0};
    cfg.schemes = {SchemeId::dco, SchemeId::bb};
    const LinkReport rep = run_campaign(cfg);

    const std::string csv = rep.to_csv();
    CHECK(csv.find("scheme,channel,pn_db,ber,bits,errors,evm_db,clip_prob,papr_db,"
                   "ops_per_block") != std::string::npos);
    CHECK(csv.find("# seed=1") != std::string::npos);
    CHECK(csv.find("dco,awgn,-30,") != std::string::npos);

    const auto j = nlohmann::json::parse(rep.to_json());
    REQUIRE(j.at("rows").size() == 2);
    for (const auto& r : j.at("rows")) {
        CHECK(r.at("ber").get<double>() >= 0.0);
        CHECK(r.at("ber").get<double>() <= 0.5);
        CHECK(r.at("bits").get<std::uint64_t>() > 0);
    }
    CHECK(j.at("config").at("channel") == "awgn");
}

TEST_CASE("baseline wander: precoded link shrugs, baseband collapses") {
    LinkConfig cfg = ideal_config(64);
    const WanderResult res = run_wander(cfg, -40.0, 60, 45.0);
    CHECK(res.evm_ucp_db < -25.0);
    CHECK(res.evm_bb_db - res.evm_ucp_db >= 15.0);
    CHECK(res.ucp_symbol_errors == 0);
    CHECK(res.rx_symbols_ucp.size() == res.tx_symbols_ucp.size());
    CHECK(res.tx_ucp.size() > 0);
}
