#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ucp/fft.hpp"
#include "ucp/link.hpp"

using namespace ucp;

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

ChannelKind channel_from_name(const std::string& name) {
    if (name == "awgn") return ChannelKind::awgn;
    if (name == "dlos") return ChannelKind::dlos;
    if (name == "ndlos") return ChannelKind::ndlos;
    throw ConfigError("unknown channel kind: " + name);
}

// One experiment per key/value document; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::string scheme_list;
    std::string channel;
    std::uint64_t seed = 0;
    int runs = 0;
    bool full = false;
    bool seed_set = false, runs_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opt) {
    cmd->add_option("--config", opt.config_path, "key=value experiment config file");
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_option("--scheme", opt.scheme_list,
                    "comma-separated schemes (ucp,dco,aco,uofdm,bb)");
    cmd->add_option("--channel", opt.channel, "channel kind: awgn, dlos, ndlos");
    cmd->add_option("--seed", opt.seed, "campaign seed")
        ->each([&](const std::string&) { opt.seed_set = true; });
    cmd->add_option("--runs", opt.runs, "Monte Carlo runs")
        ->each([&](const std::string&) { opt.runs_set = true; });
    cmd->add_flag("--full", opt.full, "full-scale 1000 runs");
}

// Config file first, CLI flags second.
LinkConfig make_link_config(const CommonOpts& opt) {
    LinkConfig cfg;
    if (!opt.config_path.empty()) {
        for (const auto& [key, val] : read_config_file(opt.config_path)) {
            if (key == "n") cfg.n = std::stoi(val);
            else if (key == "cp") cfg.cp = std::stoi(val);
            else if (key == "bandwidth") cfg.bandwidth = std::stod(val);
            else if (key == "payload_syms") cfg.payload_syms = std::stoi(val);
            else if (key == "packets_per_run") cfg.packets_per_run = std::stoi(val);
            else if (key == "runs") cfg.runs = std::stoi(val);
            else if (key == "channel") cfg.channel = channel_from_name(val);
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "threads") cfg.threads = std::stoi(val);
            else if (key == "zc_root") cfg.zc_root = std::stoi(val);
            else if (key == "schemes") {
                cfg.schemes.clear();
                for (const auto& s : split_list(val))
                    cfg.schemes.push_back(scheme_from_name(s));
            } else if (key == "pn_grid_db") {
                cfg.pn_grid_db.clear();
                for (const auto& s : split_list(val))
                    cfg.pn_grid_db.push_back(std::stod(s));
            } else if (key == "clip_targets") {
                cfg.clip_targets.clear();
                for (const auto& s : split_list(val))
                    cfg.clip_targets.push_back(std::stod(s));
            } else {
                throw ConfigError("unknown config key: " + key);
            }
        }
    }
    if (!opt.scheme_list.empty()) {
        cfg.schemes.clear();
        for (const auto& s : split_list(opt.scheme_list))
            cfg.schemes.push_back(scheme_from_name(s));
    }
    if (!opt.channel.empty()) cfg.channel = channel_from_name(opt.channel);
    if (opt.seed_set) cfg.seed = opt.seed;
    if (opt.runs_set) cfg.runs = opt.runs;
    if (opt.full) cfg.runs = 1000;
    return cfg;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write output file: " + path);
    out << content;
}

std::string echo_header(const LinkConfig& cfg,
                        std::initializer_list<std::pair<std::string, std::string>> extra) {
    std::ostringstream os;
    os << "# schema=1\n";
    os << "# n=" << cfg.n << "\n# cp=" << cfg.cp << "\n# seed=" << cfg.seed << "\n";
    os << "# schemes=";
    for (size_t i = 0; i < cfg.schemes.size(); ++i)
        os << (i ? "," : "") << scheme_name(cfg.schemes[i]);
    os << "\n";
    for (const auto& [k, v] : extra) os << "# " << k << "=" << v << "\n";
    return os.str();
}

int cmd_synthesize(int n, int n_middle, int n_edge, const std::string& mask_file,
                   const std::string& out_path) {
    SpectralMask mask;
    if (!mask_file.empty()) {
        std::ifstream in(mask_file);
        if (!in) throw ConfigError("cannot open mask file: " + mask_file);
        std::vector<int> active;
        int k;
        while (in >> k) active.push_back(k);
        mask = build_mask_from_set(n, active);
    } else {
        mask = build_mask(n, n_middle, n_edge);
    }
    const Precoder pre = synthesize(mask);
    save_precoder(pre, out_path);

    CMat g = pre.w.adjoint() * pre.w;
    g.diagonal().array() -= 1.0;
    const double unit_res = g.cwiseAbs().maxCoeff();
    double realness = 0.0;  // residual imaginary part of F*W, column by column
    for (int j = 0; j < mask.n_total; ++j) {
        const CVec col = fft_unitary(pre.w.col(j), FftDirection::inverse);
        realness = std::max(realness, col.imag().cwiseAbs().maxCoeff());
    }
    RMat e = pre.p;
    e.diagonal().array() -= 1.0;

    std::printf("n=%d m_active=%d z_null=%d\n", mask.n_total, mask.m_active, mask.z_null);
    std::printf("rank_r=%d\n", pre.rank_r);
    std::printf("unitarity_residual=%.3e\n", unit_res);
    std::printf("realness_residual=%.3e\n", realness);
    std::printf("nulling_frobenius=%.6f\n", e.norm());
    std::printf("cache=%s\n", out_path.c_str());
    return 0;
}

int cmd_papr(const CommonOpts& opt, int n_symbols) {
    LinkConfig cfg = make_link_config(opt);
    if (opt.scheme_list.empty())
        cfg.schemes = {SchemeId::bb, SchemeId::ucp, SchemeId::dco, SchemeId::aco,
                       SchemeId::uofdm};
    const auto samples = run_papr(cfg, n_symbols);
    std::ostringstream os;
    os << echo_header(cfg, {{"symbols", std::to_string(n_symbols)}});
    os << "scheme,papr_db,ccdf\n";
    for (const auto& [name, values] : samples) {
        std::vector<double> v = values;
        std::sort(v.begin(), v.end());
        for (size_t i = 0; i < v.size(); ++i)
            os << name << "," << v[i] << ","
               << static_cast<double>(v.size() - i) / static_cast<double>(v.size())
               << "\n";
        std::printf("%s: papr at ccdf 1e-3 = %.2f dB\n", name.c_str(),
                    papr_at_ccdf(values, 1e-3));
    }
    const std::string path = opt.out_dir + "/papr_ccdf.csv";
    write_file(path, os.str());
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

int cmd_wander(const CommonOpts& opt, int n_symbols, double noise_db, double period) {
    LinkConfig cfg = make_link_config(opt);
    const WanderResult res = run_wander(cfg, noise_db, n_symbols, period);
    const std::string echo =
        echo_header(cfg, {{"noise_power_db", std::to_string(noise_db)},
                          {"wander_period_syms", std::to_string(period)},
                          {"symbols", std::to_string(n_symbols)}});

    std::ostringstream wf;
    wf << echo << "symbol_time,bb,ucp\n";
    const int ov = cfg.shaping.oversampling;
    const Eigen::Index len = std::min(res.tx_bb.size(), res.tx_ucp.size());
    for (Eigen::Index i = 0; i < len; i += ov)  // symbol-rate view for plotting
        wf << static_cast<double>(i) / ov << "," << res.tx_bb(i) << ","
           << res.tx_ucp(i) << "\n";
    write_file(opt.out_dir + "/wander_waveform.csv", wf.str());

    std::ostringstream cs;
    cs << echo << "scheme,tx_re,tx_im,rx_re,rx_im\n";
    auto dump = [&](const char* name, const CVec& tx, const CVec& rx) {
        for (Eigen::Index i = 0; i < tx.size(); ++i)
            cs << name << "," << tx(i).real() << "," << tx(i).imag() << ","
               << rx(i).real() << "," << rx(i).imag() << "\n";
    };
    dump("bb", res.tx_symbols_bb, res.rx_symbols_bb);
    dump("ucp", res.tx_symbols_ucp, res.rx_symbols_ucp);
    write_file(opt.out_dir + "/wander_constellation.csv", cs.str());

    std::printf("evm_bb_db=%.2f\nevm_ucp_db=%.2f\nucp_symbol_errors=%llu\n",
                res.evm_bb_db, res.evm_ucp_db,
                static_cast<unsigned long long>(res.ucp_symbol_errors));
    std::printf("wrote %s and %s\n", (opt.out_dir + "/wander_waveform.csv").c_str(),
                (opt.out_dir + "/wander_constellation.csv").c_str());
    return 0;
}

int cmd_ber(const CommonOpts& opt) {
    LinkConfig cfg = make_link_config(opt);
    if (cfg.pn_grid_db.empty())
        for (double pn = -30.0; pn <= -10.0 + 1e-9; pn += 2.0)
            cfg.pn_grid_db.push_back(pn);
    const LinkReport rep = run_campaign(cfg);
    write_file(opt.out_dir + "/ber.csv", rep.to_csv());
    write_file(opt.out_dir + "/ber.json", rep.to_json());
    for (const auto& r : rep.rows)
        std::printf("%s %s pn=%g ber=%.3g (%llu/%llu)\n", r.scheme.c_str(),
                    r.channel.c_str(), r.pn_db, r.ber,
                    static_cast<unsigned long long>(r.errors),
                    static_cast<unsigned long long>(r.bits));
    std::printf("wrote %s/ber.csv and %s/ber.json\n", opt.out_dir.c_str(),
                opt.out_dir.c_str());
    return 0;
}

int cmd_clip_sweep(const CommonOpts& opt, double pn_db, const std::string& grid_str) {
    LinkConfig base = make_link_config(opt);
    base.pn_grid_db = {pn_db};
    std::vector<double> grid;
    for (const auto& s : split_list(grid_str)) grid.push_back(std::stod(s));
    if (grid.empty()) throw ConfigError("empty clip-probability grid");

    std::ostringstream os;
    os << echo_header(base, {{"pn_db", std::to_string(pn_db)}});
    os << "scheme,clip_prob,ber\n";
    for (SchemeId id : base.schemes) {
        double best_ber = 1.0, best_clip = grid.front();
        for (double clip : grid) {
            LinkConfig cfg = base;
            cfg.schemes = {id};
            cfg.clip_targets = {clip};
            const LinkReport rep = run_campaign(cfg);
            const double ber = rep.rows.at(0).ber;
            os << scheme_name(id) << "," << clip << "," << ber << "\n";
            if (ber < best_ber) {
                best_ber = ber;
                best_clip = clip;
            }
        }
        std::printf("%s: best clip_prob=%g (ber=%.3g)\n", scheme_name(id).c_str(),
                    best_clip, best_ber);
    }
    const std::string path = opt.out_dir + "/clip_sweep.csv";
    write_file(path, os.str());
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UCP-OFDM optical wireless link simulator"};
    app.require_subcommand(1);

    auto* syn = app.add_subcommand("synthesize", "build and cache a precoder");
    int syn_n = 256, syn_mid = 0, syn_edge = 0;
    std::string syn_mask_file, syn_out = "precoder.bin";
    syn->add_option("--n", syn_n, "FFT size");
    syn->add_option("--n-middle", syn_mid, "extra null bins beside DC");
    syn->add_option("--n-edge", syn_edge, "null bins at the band edges");
    syn->add_option("--mask-file", syn_mask_file,
                    "file of active centered bin indices (overrides --n-middle/--n-edge)");
    syn->add_option("--out", syn_out, "precoder cache path");

    CommonOpts papr_opt;
    int papr_symbols = 10000;
    auto* papr = app.add_subcommand("papr", "PAPR CCDF per scheme");
    add_common(papr, papr_opt);
    papr->add_option("--symbols", papr_symbols, "OFDM symbols per scheme");

    CommonOpts wander_opt;
    int wander_symbols = 200;
    double wander_noise = -40.0, wander_period = 45.0;
    auto* wander = app.add_subcommand("wander", "baseline-wander experiment (bb vs ucp)");
    add_common(wander, wander_opt);
    wander->add_option("--symbols", wander_symbols, "OFDM symbols");
    wander->add_option("--noise-db", wander_noise, "noise power in dB");
    wander->add_option("--period", wander_period, "wander period in OFDM symbols");

    CommonOpts ber_opt;
    auto* ber = app.add_subcommand("ber", "BER-vs-noise-power campaign");
    add_common(ber, ber_opt);

    CommonOpts sweep_opt;
    double sweep_pn = -20.0;
    std::string sweep_grid = "2e-4,5e-4,1e-3,2e-3,5e-3,1e-2,2.2e-2,4.4e-2,8e-2";
    auto* sweep = app.add_subcommand("clip-sweep", "clip-probability sweep at fixed noise");
    add_common(sweep, sweep_opt);
    sweep->add_option("--pn-db", sweep_pn, "noise power grid point");
    sweep->add_option("--grid", sweep_grid, "comma-separated clip probabilities");

    try {
        app.parse(argc, argv);
        if (syn->parsed())
            return cmd_synthesize(syn_n, syn_mid, syn_edge, syn_mask_file, syn_out);
        if (papr->parsed()) return cmd_papr(papr_opt, papr_symbols);
        if (wander->parsed())
            return cmd_wander(wander_opt, wander_symbols, wander_noise, wander_period);
        if (ber->parsed()) return cmd_ber(ber_opt);
        if (sweep->parsed()) return cmd_clip_sweep(sweep_opt, sweep_pn, sweep_grid);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
