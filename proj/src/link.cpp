#include "ucp/link.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "ucp/fft.hpp"

namespace ucp {

std::string scheme_name(SchemeId id) {
    switch (id) {
        case SchemeId::ucp: return "ucp";
        case SchemeId::dco: return "dco";
        case SchemeId::aco: return "aco";
        case SchemeId::uofdm: return "uofdm";
        case SchemeId::bb: return "bb";
    }
    throw ConfigError("unknown scheme id");
}

SchemeId scheme_from_name(const std::string& name) {
    if (name == "ucp") return SchemeId::ucp;
    if (name == "dco") return SchemeId::dco;
    if (name == "aco") return SchemeId::aco;
    if (name == "uofdm") return SchemeId::uofdm;
    if (name == "bb") return SchemeId::bb;
    throw ConfigError("unknown scheme: " + name);
}

int default_qam_order(SchemeId id) {
    switch (id) {
        case SchemeId::aco:
        case SchemeId::uofdm: return 256;  // half-rate schemes, doubled bits/sym
        default: return 16;
    }
}

double default_clip_target(SchemeId id) {
    switch (id) {
        case SchemeId::ucp: return 2.2e-2;
        case SchemeId::dco: return 4.4e-2;
        case SchemeId::aco: return 0.69e-3;
        case SchemeId::uofdm: return 0.97e-3;
        case SchemeId::bb: return 2.2e-2;
    }
    throw ConfigError("unknown scheme id");
}

Polarity scheme_polarity(SchemeId id) {
    return (id == SchemeId::aco || id == SchemeId::uofdm) ? Polarity::unipolar
                                                          : Polarity::bipolar;
}

static std::string channel_name(ChannelKind k) {
    switch (k) {
        case ChannelKind::awgn: return "awgn";
        case ChannelKind::dlos: return "dlos";
        case ChannelKind::ndlos: return "ndlos";
    }
    return "?";
}

Equalizer estimate_channel(const RVec& preamble_rx, const CVec& training_freq,
                           const SpectralMask& mask, int cp_len) {
    const int n = mask.n_total;
    if ((int)preamble_rx.size() != n + cp_len)
        throw SizeError("estimate_channel: preamble block length mismatch");
    RVec body = remove_cp(preamble_rx, cp_len);
    CVec spec = fft_unitary(body.cast<cplx>(), FftDirection::forward);
    Equalizer eq;
    eq.d = CVec::Zero(n);
    for (int k : mask.active_natural()) {
        if (std::abs(spec(k)) < 1e-12)
            throw SingularityError("estimate_channel: vanishing received pilot on bin " +
                                   std::to_string(k));
        eq.d(k) = training_freq(k) / spec(k);
    }
    return eq;
}

namespace {

struct SchemeRuntime {
    SchemeId id = SchemeId::ucp;
    QamMap qam;
    Polarity pol = Polarity::bipolar;
    FrontEndConfig fe;
    int syms_per_block = 0;
    int block_len = 0;  // low-rate samples per payload block
    SpectralMask mask;
    SubcarrierMap map;
    const Precoder* pre = nullptr;
    ZcPreamble preamble;
    double preamble_shift = 0.0;  // DC lift for unipolar front ends
};

RVec modulate_block(const SchemeRuntime& rt, const CVec& x, int cp) {
    switch (rt.id) {
        case SchemeId::ucp: return ucp_modulate(*rt.pre, rt.map, x, cp);
        case SchemeId::dco: return dco_modulate(rt.mask, x, cp);
        case SchemeId::aco: return aco_modulate(rt.mask.n_total, x, cp);
        case SchemeId::uofdm: return u_ofdm_modulate(rt.mask, x, cp);
        case SchemeId::bb: return bb_modulate(x, cp);
    }
    throw ConfigError("unknown scheme id");
}

CVec demodulate_block(const SchemeRuntime& rt, const RVec& y, const CVec& d, int cp,
                      OpCounter* ops = nullptr) {
    switch (rt.id) {
        case SchemeId::ucp: return ucp_demodulate(*rt.pre, rt.map, y, d, cp, ops);
        case SchemeId::dco: return dco_demodulate(rt.mask, y, d, cp);
        case SchemeId::aco: return aco_demodulate(rt.mask.n_total, y, d, cp);
        case SchemeId::uofdm: return u_ofdm_demodulate(rt.mask, y, d, cp);
        case SchemeId::bb: return bb_demodulate(y, d, cp);
    }
    throw ConfigError("unknown scheme id");
}

int scheme_syms_per_block(SchemeId id, const SpectralMask& mask) {
    switch (id) {
        case SchemeId::ucp: return mask.m_active / 2;
        case SchemeId::dco: return dco_symbols_per_block(mask);
        case SchemeId::aco: return mask.n_total / 4;
        case SchemeId::uofdm: return dco_symbols_per_block(mask);
        case SchemeId::bb: return mask.n_total / 2;
    }
    throw ConfigError("unknown scheme id");
}

std::vector<std::uint8_t> draw_bits(Rng& rng, int count) {
    std::vector<std::uint8_t> bits(count);
    std::uint64_t word = 0;
    int avail = 0;
    for (int i = 0; i < count; ++i) {
        if (avail == 0) {
            word = rng();
            avail = 64;
        }
        bits[i] = word & 1u;
        word >>= 1;
        --avail;
    }
    return bits;
}

SchemeRuntime make_runtime(const LinkConfig& cfg, SchemeId id, const Precoder* pre,
                           double clip_target) {
    SchemeRuntime rt;
    rt.id = id;
    rt.qam = make_qam(default_qam_order(id));
    rt.pol = scheme_polarity(id);
    rt.pre = pre;
    rt.mask = build_mask(cfg.n, 0, 0);
    if (id == SchemeId::ucp) rt.map = make_subcarrier_map(rt.mask);
    rt.syms_per_block = scheme_syms_per_block(id, rt.mask);
    rt.block_len = (id == SchemeId::uofdm) ? 2 * (cfg.n + cfg.cp) : cfg.n + cfg.cp;
    rt.fe = cfg.frontend;
    rt.fe.target_clip_prob = clip_target;

    // Calibrate the front-end gain on a fixed shaped payload stream, then
    // size the preamble so its time-domain RMS matches the payload's.
    Rng calib_rng(derive_seed(cfg.seed, 0xCA11B, (std::uint64_t)id));
    const int calib_blocks = 32;
    RVec lowrate(calib_blocks * rt.block_len);
    for (int b = 0; b < calib_blocks; ++b) {
        auto bits = draw_bits(calib_rng, rt.syms_per_block * rt.qam.bits_per_symbol);
        lowrate.segment(b * rt.block_len, rt.block_len) =
            modulate_block(rt, qam_map(bits, rt.qam), cfg.cp);
    }
    RVec shaped = shape(lowrate, cfg.shaping);

    // Clip levels follow the Gaussian clipping-ratio convention: the target
    // probability is mapped to an amplitude via the quantile of a Gaussian
    // surrogate at the stream's measured power, not via the scheme's own
    // amplitude distribution.  For the OFDM-based schemes (dco, aco, uofdm)
    // the surrogate is statistically identical to the stream itself; the
    // quasi-baseband schemes (ucp, bb) have sub-Gaussian amplitudes and
    // deliberately give back part of their headroom at the front end.  The
    // unipolar streams are rectified halves of a bipolar frame, so their
    // underlying frame power is twice the stream power.
    if (cfg.calibrate) {
        const double rms = std::sqrt(shaped.squaredNorm() / shaped.size());
        const double sigma = rt.pol == Polarity::unipolar ? rms * std::sqrt(2.0) : rms;
        Rng srng(derive_seed(cfg.seed, 0x5123A7E, (std::uint64_t)id));
        std::normal_distribution<double> gauss(0.0, sigma);
        RVec surrogate(100000);
        for (int i = 0; i < surrogate.size(); ++i) surrogate(i) = gauss(srng);
        calibrate_gain(surrogate, rt.fe, rt.pol);
    }

    const double payload_rms = std::sqrt(lowrate.squaredNorm() / lowrate.size());
    const int mp = dco_symbols_per_block(rt.mask);  // positive active bins
    const double amp = payload_rms * std::sqrt(cfg.n / (2.0 * mp));
    rt.preamble = zadoff_chu_preamble(rt.mask, cfg.zc_root, cfg.cp, amp);
    if (rt.pol == Polarity::unipolar)
        rt.preamble_shift = -rt.preamble.time_block.minCoeff();
    return rt;
}

struct Accum {
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    double evm_num = 0.0;
    double evm_den = 0.0;
    double papr_sum = 0.0;
    std::uint64_t packets = 0;
    std::uint64_t demod_multiplies = 0;
    std::uint64_t blocks = 0;
};

void run_packet(const SchemeRuntime& rt, const LinkConfig& cfg,
                const ChannelRealization& ch, Rng& data_rng, Rng& noise_rng,
                Accum& acc) {
    const int n = cfg.n, cp = cfg.cp, ov = cfg.shaping.oversampling;
    const int pre_len = n + cp;
    const int len_lr = pre_len + cfg.payload_syms * rt.block_len;
    const int tail_pad = 2 * cfg.shaping.group_delay_syms;

    std::vector<std::vector<std::uint8_t>> tx_bits(cfg.payload_syms);
    std::vector<CVec> tx_syms(cfg.payload_syms);
    RVec lowrate = RVec::Zero(len_lr + tail_pad);
    lowrate.head(pre_len) = rt.preamble.time_block.array() + rt.preamble_shift;
    for (int b = 0; b < cfg.payload_syms; ++b) {
        tx_bits[b] = draw_bits(data_rng, rt.syms_per_block * rt.qam.bits_per_symbol);
        tx_syms[b] = qam_map(tx_bits[b], rt.qam);
        lowrate.segment(pre_len + b * rt.block_len, rt.block_len) =
            modulate_block(rt, tx_syms[b], cp);
    }

    RVec shaped = shape(lowrate, cfg.shaping);
    for (double p : papr_db(shaped, rt.block_len * ov)) {
        acc.papr_sum += p;
        ++acc.packets;
    }
    RVec optical = scale_and_bias(shaped, rt.fe, rt.pol);
    RVec rx_hi = apply_channel(optical, ch, ov, noise_rng);
    RVec lr = matched_downsample(rx_hi, cfg.shaping, len_lr);

    Equalizer eq = estimate_channel(lr.head(pre_len), rt.preamble.training, rt.mask, cp);
    if (rt.id == SchemeId::bb) {
        // Baseband FDE needs a gain estimate on the null bins too; borrow the
        // mean of the active-bin estimates and strip the DC bias first.
        cplx mean = 0.0;
        for (int k : rt.mask.active_natural()) mean += eq.d(k);
        mean /= (double)rt.mask.m_active;
        for (int k = 0; k < n; ++k)
            if (eq.d(k) == cplx(0.0)) eq.d(k) = mean;
        // The preamble body is zero-mean by construction (null DC bin), so its
        // received mean isolates the front-end bias DC offset exactly.
        lr.tail(len_lr - pre_len).array() -= lr.segment(cp, n).mean();
    }

    for (int b = 0; b < cfg.payload_syms; ++b) {
        RVec y = lr.segment(pre_len + b * rt.block_len, rt.block_len);
        OpCounter ops;
        CVec est = demodulate_block(rt, y, eq.d, cp,
                                    rt.id == SchemeId::ucp ? &ops : nullptr);
        acc.demod_multiplies += ops.multiplies;
        ++acc.blocks;
        auto bits = qam_demap(est, rt.qam);
        for (size_t i = 0; i < bits.size(); ++i)
            if (bits[i] != tx_bits[b][i]) ++acc.errors;
        acc.bits += bits.size();
        acc.evm_num += (est - tx_syms[b]).squaredNorm();
        acc.evm_den += tx_syms[b].squaredNorm();
    }
}

}  // namespace

LinkReport run_campaign(const LinkConfig& cfg) {
    if (!is_pow2(cfg.n) || cfg.n < 8) throw ConfigError("n must be a power of two >= 8");
    if (cfg.cp < 0 || cfg.cp >= cfg.n) throw ConfigError("bad cyclic prefix length");
    if (cfg.pn_grid_db.empty()) throw ConfigError("empty noise power grid");
    if (cfg.runs < 1 || cfg.packets_per_run < 1 || cfg.payload_syms < 1)
        throw ConfigError("runs, packets and payload length must be positive");
    if (cfg.schemes.empty()) throw ConfigError("no schemes selected");
    if (!cfg.clip_targets.empty() && cfg.clip_targets.size() != cfg.schemes.size())
        throw ConfigError("clip target list does not match scheme list");

    RoomGeometry geom = cfg.geometry;
    if (cfg.channel == ChannelKind::dlos) {
        geom.rx_x = 0.0;
        geom.rx_y = 0.0;
    } else if (cfg.channel == ChannelKind::ndlos) {
        geom.rx_x = 1.5;
        geom.rx_y = 1.5;
    }
    std::unique_ptr<RoomIllumination> illum;
    if (cfg.channel != ChannelKind::awgn)
        illum = std::make_unique<RoomIllumination>(geom);

    Precoder pre;
    std::vector<SchemeRuntime> rts;
    const bool wants_ucp = std::any_of(cfg.schemes.begin(), cfg.schemes.end(),
                                       [](SchemeId s) { return s == SchemeId::ucp; });
    if (wants_ucp) pre = synthesize(build_mask(cfg.n, 0, 0));
    for (size_t si = 0; si < cfg.schemes.size(); ++si) {
        double target = cfg.clip_targets.empty() ? default_clip_target(cfg.schemes[si])
                                                 : cfg.clip_targets[si];
        rts.push_back(make_runtime(cfg, cfg.schemes[si], &pre, target));
    }

    const int ns = (int)rts.size(), ng = (int)cfg.pn_grid_db.size();
    // Per-run accumulator slabs, reduced in run order afterwards so the
    // result is independent of the thread count.
    std::vector<std::vector<Accum>> per_run(cfg.runs,
                                            std::vector<Accum>(ns * ng));

    std::atomic<int> next_run{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto worker = [&]() {
        for (;;) {
            int r = next_run.fetch_add(1);
            if (r >= cfg.runs) return;
            try {
                Rng ch_rng(derive_seed(cfg.seed, r, 0xC4A11));
                ChannelRealization base =
                    realize_channel(geom, cfg.channel, 0.0, ch_rng, illum.get());
                if (base.taps.sum() > 0.0) base.taps /= base.taps.sum();
                for (int gi = 0; gi < ng; ++gi) {
                    ChannelRealization ch = base;
                    ch.noise_sigma = std::pow(10.0, cfg.pn_grid_db[gi] / 20.0);
                    for (int si = 0; si < ns; ++si) {
                        Rng noise_rng(derive_seed(cfg.seed, r, 0xA0, gi));
                        Rng data_rng(derive_seed(cfg.seed, r, 0xDA7A,
                                                 (std::uint64_t)rts[si].id));
                        Accum& acc = per_run[r][si * ng + gi];
                        for (int p = 0; p < cfg.packets_per_run; ++p)
                            run_packet(rts[si], cfg, ch, data_rng, noise_rng, acc);
                    }
                }
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    int nthreads = cfg.threads > 0 ? cfg.threads
                                   : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min(nthreads, cfg.runs);
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);

    LinkReport rep;
    for (int si = 0; si < ns; ++si) {
        for (int gi = 0; gi < ng; ++gi) {
            Accum total;
            for (int r = 0; r < cfg.runs; ++r) {
                const Accum& a = per_run[r][si * ng + gi];
                total.bits += a.bits;
                total.errors += a.errors;
                total.evm_num += a.evm_num;
                total.evm_den += a.evm_den;
                total.papr_sum += a.papr_sum;
                total.packets += a.packets;
                total.demod_multiplies += a.demod_multiplies;
                total.blocks += a.blocks;
            }
            ReportRow row;
            row.scheme = scheme_name(rts[si].id);
            row.channel = channel_name(cfg.channel);
            row.pn_db = cfg.pn_grid_db[gi];
            row.bits = total.bits;
            row.errors = total.errors;
            row.ber = total.bits ? (double)total.errors / (double)total.bits : 0.0;
            row.evm_db = total.evm_den > 0.0
                             ? 10.0 * std::log10(total.evm_num / total.evm_den)
                             : 0.0;
            row.clip_prob = rts[si].fe.target_clip_prob;
            row.papr_db = total.packets ? total.papr_sum / (double)total.packets : 0.0;
            row.ops_per_block =
                total.blocks ? (double)total.demod_multiplies / (double)total.blocks
                             : 0.0;
            rep.rows.push_back(row);
        }
    }

    rep.config_echo = {
        {"n", std::to_string(cfg.n)},
        {"cp", std::to_string(cfg.cp)},
        {"bandwidth_hz", std::to_string(cfg.bandwidth)},
        {"payload_syms", std::to_string(cfg.payload_syms)},
        {"packets_per_run", std::to_string(cfg.packets_per_run)},
        {"runs", std::to_string(cfg.runs)},
        {"channel", channel_name(cfg.channel)},
        {"seed", std::to_string(cfg.seed)},
    };
    return rep;
}

std::string LinkReport::to_csv() const {
    std::ostringstream os;
    for (const auto& [k, v] : config_echo) os << "# " << k << "=" << v << "\n";
    os << "scheme,channel,pn_db,ber,bits,errors,evm_db,clip_prob,papr_db,ops_per_block\n";
    for (const auto& r : rows)
        os << r.scheme << "," << r.channel << "," << r.pn_db << "," << r.ber << ","
           << r.bits << "," << r.errors << "," << r.evm_db << "," << r.clip_prob << ","
           << r.papr_db << "," << r.ops_per_block << "\n";
    return os.str();
}

std::string LinkReport::to_json() const {
    nlohmann::json j;
    for (const auto& [k, v] : config_echo) j["config"][k] = v;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        j["rows"].push_back({{"scheme", r.scheme},
                             {"channel", r.channel},
                             {"pn_db", r.pn_db},
                             {"ber", r.ber},
                             {"bits", r.bits},
                             {"errors", r.errors},
                             {"evm_db", r.evm_db},
                             {"clip_prob", r.clip_prob},
                             {"papr_db", r.papr_db},
                             {"ops_per_block", r.ops_per_block}});
    }
    return j.dump(2);
}

std::vector<std::pair<std::string, std::vector<double>>> run_papr(const LinkConfig& cfg,
                                                                  int n_symbols) {
    if (n_symbols < 3) throw ConfigError("run_papr: need at least 3 symbols");
    const int n = cfg.n, cp = cfg.cp, ov = cfg.shaping.oversampling;
    const SpectralMask mask = build_mask(n, 0, 0);
    Precoder pre;
    const bool wants_ucp = std::any_of(cfg.schemes.begin(), cfg.schemes.end(),
                                       [](SchemeId s) { return s == SchemeId::ucp; });
    if (wants_ucp) pre = synthesize(mask);

    std::vector<std::pair<std::string, std::vector<double>>> out;
    for (SchemeId id : cfg.schemes) {
        SchemeRuntime rt;
        rt.id = id;
        rt.qam = make_qam(default_qam_order(id));
        rt.pol = scheme_polarity(id);
        rt.pre = &pre;
        rt.mask = mask;
        if (id == SchemeId::ucp) rt.map = make_subcarrier_map(mask);
        rt.syms_per_block = scheme_syms_per_block(id, mask);
        rt.block_len = (id == SchemeId::uofdm) ? 2 * (n + cp) : n + cp;

        Rng rng(derive_seed(cfg.seed, 0xFA42, (std::uint64_t)id));
        std::vector<double> paprs;
        paprs.reserve(n_symbols);
        // Shape in batches to bound memory; the first and last block of each
        // batch carry filter ramp transients and are excluded.
        const int batch = std::min(n_symbols + 2, 514);
        int produced = 0;
        while (produced < n_symbols) {
            const int want = std::min(batch - 2, n_symbols - produced);
            RVec lowrate((want + 2) * rt.block_len);
            for (int b = 0; b < want + 2; ++b) {
                auto bits = draw_bits(rng, rt.syms_per_block * rt.qam.bits_per_symbol);
                lowrate.segment(b * rt.block_len, rt.block_len) =
                    modulate_block(rt, qam_map(bits, rt.qam), cp);
            }
            RVec shaped = shape(lowrate, cfg.shaping);
            if (rt.pol == Polarity::bipolar) {
                const double sigma = std::sqrt(shaped.squaredNorm() / shaped.size());
                shaped.array() += 3.0 * sigma;
            }
            const int wlen = rt.block_len * ov;
            for (int b = 1; b <= want; ++b)
                paprs.push_back(papr_db(shaped.segment(b * wlen, wlen), wlen).at(0));
            produced += want;
        }
        out.emplace_back(scheme_name(id), std::move(paprs));
    }
    return out;
}

WanderResult run_wander(const LinkConfig& cfg, double noise_power_db, int n_symbols,
                        double wander_period_syms) {
    const int n = cfg.n, cp = cfg.cp, ov = cfg.shaping.oversampling;
    SpectralMask mask = build_mask(n, 0, 0);
    Precoder pre = synthesize(mask);
    SubcarrierMap map = make_subcarrier_map(mask);
    QamMap qam = make_qam(16);
    const int block = n + cp;
    const int tail_pad = 2 * cfg.shaping.group_delay_syms;

    Rng data_rng(derive_seed(cfg.seed, 0, 0xDA7A));
    Rng noise_rng(derive_seed(cfg.seed, 0, 0xA0));

    WanderResult res;
    auto run_one = [&](SchemeId id, CVec& tx_syms_out, CVec& rx_syms_out, RVec& rx_out,
                       std::uint64_t* sym_errs) {
        const int spb = (id == SchemeId::ucp) ? mask.m_active / 2 : n / 2;
        RVec lowrate = RVec::Zero(n_symbols * block + tail_pad);
        std::vector<CVec> syms(n_symbols);
        for (int b = 0; b < n_symbols; ++b) {
            auto bits = draw_bits(data_rng, spb * qam.bits_per_symbol);
            syms[b] = qam_map(bits, qam);
            lowrate.segment(b * block, block) =
                id == SchemeId::ucp ? ucp_modulate(pre, map, syms[b], cp)
                                    : bb_modulate(syms[b], cp);
        }
        RVec hi = shape(lowrate, cfg.shaping);
        const double sig_rms = std::sqrt(hi.squaredNorm() / hi.size());
        WanderConfig w;
        w.rms = sig_rms;
        w.period_syms = wander_period_syms;
        RVec impaired = apply_wander(hi, w, block * ov);
        ChannelRealization flat;
        flat.taps = RVec::Ones(1);
        flat.noise_sigma = sig_rms * std::pow(10.0, noise_power_db / 20.0);
        RVec rx = apply_channel(impaired, flat, ov, noise_rng);
        RVec lr = matched_downsample(rx, cfg.shaping, n_symbols * block);

        CVec ones = CVec::Ones(n);
        tx_syms_out.resize(n_symbols * spb);
        rx_syms_out.resize(n_symbols * spb);
        double num = 0.0, den = 0.0;
        std::uint64_t errs = 0;
        for (int b = 0; b < n_symbols; ++b) {
            RVec y = lr.segment(b * block, block);
            CVec est = id == SchemeId::ucp ? ucp_demodulate(pre, map, y, ones, cp)
                                           : bb_demodulate(y, ones, cp);
            tx_syms_out.segment(b * spb, spb) = syms[b];
            rx_syms_out.segment(b * spb, spb) = est;
            num += (est - syms[b]).squaredNorm();
            den += syms[b].squaredNorm();
            auto bits_tx = qam_demap(syms[b], qam);
            auto bits_rx = qam_demap(est, qam);
            for (int i = 0; i < spb; ++i)
                for (int k = 0; k < qam.bits_per_symbol; ++k)
                    if (bits_tx[i * qam.bits_per_symbol + k] !=
                        bits_rx[i * qam.bits_per_symbol + k]) {
                        ++errs;
                        break;
                    }
        }
        if (sym_errs) *sym_errs = errs;
        rx_out = rx;
        return 10.0 * std::log10(num / den);
    };

    res.evm_bb_db = run_one(SchemeId::bb, res.tx_symbols_bb, res.rx_symbols_bb,
                            res.tx_bb, nullptr);
    res.evm_ucp_db = run_one(SchemeId::ucp, res.tx_symbols_ucp, res.rx_symbols_ucp,
                             res.tx_ucp, &res.ucp_symbol_errors);
    return res;
}

}  // namespace ucp
