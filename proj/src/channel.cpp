#include "ucp/channel.hpp"

#include <cmath>
#include <numbers>

namespace ucp {

namespace {

constexpr double kLightSpeed = 299792458.0;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct Optics {
    double m;         // Lambertian order
    double cos_fov;
    double rx_gain;   // detector area * concentrator * filter gains
};

Optics optics_of(const RoomGeometry& g) {
    Optics o;
    o.m = lambertian_order(g.half_power_deg);
    const double fov = g.fov_half_deg * std::numbers::pi / 180.0;
    o.cos_fov = std::cos(fov);
    const double conc = g.concentrator_index * g.concentrator_index /
                        (std::sin(fov) * std::sin(fov));
    o.rx_gain = g.detector_area * conc * db_to_linear(g.filter_gain_db) *
                db_to_linear(g.concentrator_gain_db);
    return o;
}

Eigen::Vector3d tx_pos(const RoomGeometry& g) { return {g.tx_x, g.tx_y, g.tx_height}; }

}  // namespace

double lambertian_order(double half_power_deg) {
    return -std::numbers::ln2 / std::log(std::cos(half_power_deg * std::numbers::pi / 180.0));
}

double direct_path_gain(const RoomGeometry& g, double rx_x, double rx_y) {
    const Optics o = optics_of(g);
    const Eigen::Vector3d rx(rx_x, rx_y, g.rx_plane_z);
    const Eigen::Vector3d v = tx_pos(g) - rx;
    const double d = v.norm();
    const double cos_phi = v.z() / d;  // emission angle at the down-pointing TX
    const double cos_psi = v.z() / d;  // incidence at the up-pointing RX
    if (cos_phi <= 0.0 || cos_psi < o.cos_fov) return 0.0;
    return (o.m + 1.0) / (2.0 * std::numbers::pi * d * d) * std::pow(cos_phi, o.m) *
           o.rx_gain * cos_psi;
}

double reflection_path_gain(const RoomGeometry& g, const Eigen::Vector3d& patch,
                            const Eigen::Vector3d& normal, double area, double rx_x,
                            double rx_y) {
    const Optics o = optics_of(g);
    const Eigen::Vector3d v1 = patch - tx_pos(g);
    const double d1 = v1.norm();
    const double cos_phi1 = -v1.z() / d1;
    const double cos_a1 = -v1.dot(normal) / d1;
    if (cos_phi1 <= 0.0 || cos_a1 <= 0.0) return 0.0;
    const Eigen::Vector3d rx(rx_x, rx_y, g.rx_plane_z);
    const Eigen::Vector3d v2 = rx - patch;
    const double d2 = v2.norm();
    const double cos_a2 = v2.dot(normal) / d2;
    if (cos_a2 <= 0.0) return 0.0;
    const double cos_psi2 = -v2.z() / d2;  // incidence at the up-pointing RX
    if (cos_psi2 <= 0.0 || cos_psi2 < o.cos_fov) return 0.0;
    return (o.m + 1.0) * g.wall_reflectivity * area /
           (2.0 * std::numbers::pi * std::numbers::pi * d1 * d1 * d2 * d2) *
           std::pow(cos_phi1, o.m) * cos_a1 * cos_a2 * cos_psi2 * o.rx_gain;
}

RoomIllumination::RoomIllumination(const RoomGeometry& g) : geom_(g) {
    const Optics o = optics_of(g);
    const double ps = g.patch_size;
    area_ = ps * ps;
    const double hx = g.room_x / 2.0, hy = g.room_y / 2.0;
    const Eigen::Vector3d tx = tx_pos(g);

    auto add_patch = [&](double x, double y, double z, const Eigen::Vector3d& n) {
        Patch p;
        p.pos = {x, y, z};
        p.normal = n;
        p.direct_delay = (p.pos - tx).norm() / kLightSpeed;
        patches_.push_back(std::move(p));
    };
    for (double z = ps / 2; z < g.room_z; z += ps) {
        for (double s = -hx + ps / 2; s < hx; s += ps) {
            add_patch(s, -hy, z, {0, 1, 0});
            add_patch(s, hy, z, {0, -1, 0});
        }
        for (double s = -hy + ps / 2; s < hy; s += ps) {
            add_patch(-hx, s, z, {1, 0, 0});
            add_patch(hx, s, z, {-1, 0, 0});
        }
    }
    for (double x = -hx + ps / 2; x < hx; x += ps)
        for (double y = -hy + ps / 2; y < hy; y += ps) {
            add_patch(x, y, 0.0, {0, 0, 1});        // floor
            add_patch(x, y, g.room_z, {0, 0, -1});  // ceiling
        }

    // Direct illumination (unit TX power) per patch.
    const double ts = g.sample_period;
    std::vector<double> e0(patches_.size(), 0.0);
    int hist_bins = 1;
    for (std::size_t i = 0; i < patches_.size(); ++i) {
        const Eigen::Vector3d v = patches_[i].pos - tx;
        const double d = v.norm();
        const double cos_phi = -v.z() / d;
        const double cos_a = -v.dot(patches_[i].normal) / d;
        if (cos_phi > 0.0 && cos_a > 0.0)
            e0[i] = (o.m + 1.0) / (2.0 * std::numbers::pi * d * d) *
                    std::pow(cos_phi, o.m) * cos_a * area_;
        hist_bins = std::max(hist_bins,
                             static_cast<int>(patches_[i].direct_delay / ts) + 2);
    }

    // One patch-to-patch bounce; delays accumulate along the path. The
    // histogram length covers the room diagonal twice, which bounds any
    // two-bounce path.
    const double diag = std::sqrt(g.room_x * g.room_x + g.room_y * g.room_y +
                                  g.room_z * g.room_z);
    hist_bins += static_cast<int>(2.0 * diag / kLightSpeed / ts) + 2;
    for (auto& p : patches_) p.incident.assign(hist_bins, 0.0);
    for (std::size_t i = 0; i < patches_.size(); ++i)
        patches_[i].incident[static_cast<int>(patches_[i].direct_delay / ts)] += e0[i];

    const double rho = g.wall_reflectivity;
    for (std::size_t i = 0; i < patches_.size(); ++i) {
        if (e0[i] <= 0.0) continue;
        const Patch& src = patches_[i];
        const int src_bin = static_cast<int>(src.direct_delay / ts);
        for (std::size_t j = 0; j < patches_.size(); ++j) {
            if (j == i) continue;
            Patch& dst = patches_[j];
            const Eigen::Vector3d v = dst.pos - src.pos;
            const double d2 = v.squaredNorm();
            const double d = std::sqrt(d2);
            const double cos_out = v.dot(src.normal) / d;
            if (cos_out <= 0.0) continue;
            const double cos_in = -v.dot(dst.normal) / d;
            if (cos_in <= 0.0) continue;
            const int bin = src_bin + static_cast<int>(d / kLightSpeed / ts);
            dst.incident[bin] +=
                e0[i] * rho / std::numbers::pi * cos_out * cos_in * area_ / d2;
        }
    }
}

RVec RoomIllumination::gather(double rx_x, double rx_y) const {
    const RoomGeometry& g = geom_;
    const Optics o = optics_of(g);
    const double ts = g.sample_period;
    const Eigen::Vector3d rx(rx_x, rx_y, g.rx_plane_z);
    const double rho = g.wall_reflectivity;

    const double los = direct_path_gain(g, rx_x, rx_y);
    const double los_delay = (tx_pos(g) - rx).norm() / kLightSpeed;

    std::vector<double> taps;
    auto tap_at = [&](int bin, double v) {
        if (bin >= static_cast<int>(taps.size())) taps.resize(bin + 1, 0.0);
        taps[bin] += v;
    };

    std::vector<std::pair<double, double>> arrivals;  // (delay, gain)
    if (los > 0.0) arrivals.emplace_back(los_delay, los);
    for (const auto& p : patches_) {
        const Eigen::Vector3d v = rx - p.pos;
        const double d2v = v.squaredNorm();
        const double d = std::sqrt(d2v);
        const double cos_out = v.dot(p.normal) / d;
        if (cos_out <= 0.0) continue;
        const double cos_psi = (p.pos - rx).normalized().z();
        if (cos_psi <= 0.0 || cos_psi < o.cos_fov) continue;
        const double k = rho / std::numbers::pi * cos_out * cos_psi / d2v * o.rx_gain;
        const double seg_delay = d / kLightSpeed;
        for (std::size_t b = 0; b < p.incident.size(); ++b) {
            if (p.incident[b] <= 0.0) continue;
            arrivals.emplace_back(static_cast<double>(b) * ts + seg_delay,
                                  p.incident[b] * k);
        }
    }
    if (arrivals.empty()) throw ConfigError("gather: no optical path reaches the receiver");
    double t0 = arrivals[0].first;
    for (const auto& a : arrivals) t0 = std::min(t0, a.first);
    for (const auto& a : arrivals)
        tap_at(static_cast<int>(std::lround((a.first - t0) / ts)), a.second);

    RVec out = Eigen::Map<RVec>(taps.data(), static_cast<Eigen::Index>(taps.size()));
    return out;
}

ChannelRealization realize_channel(const RoomGeometry& g, ChannelKind kind,
                                   double noise_sigma, Rng& rng,
                                   const RoomIllumination* illum) {
    ChannelRealization ch;
    ch.kind = kind;
    ch.noise_sigma = noise_sigma;
    if (kind == ChannelKind::awgn) {
        ch.taps = RVec::Ones(1);
        return ch;
    }
    if (!illum) throw ConfigError("realize_channel: multipath kinds need a RoomIllumination");
    std::uniform_real_distribution<double> jit(-g.rx_jitter, g.rx_jitter);
    const double rx_x = g.rx_x + jit(rng);
    const double rx_y = g.rx_y + jit(rng);
    RVec taps = illum->gather(rx_x, rx_y);
    const double total = taps.sum();
    if (taps.size() > g.max_taps) {
        const double lost = taps.tail(taps.size() - g.max_taps).sum();
        if (lost > 1e-3 * total)
            throw ConfigError("realize_channel: delay spread exceeds the cyclic prefix");
        taps.conservativeResize(g.max_taps);
    }
    ch.taps = taps;
    return ch;
}

RVec apply_channel(const RVec& stream, const ChannelRealization& ch, int tap_spacing,
                   Rng& rng) {
    RVec out = RVec::Zero(stream.size());
    for (Eigen::Index t = 0; t < ch.taps.size(); ++t) {
        const double gain = ch.taps(t);
        if (gain == 0.0) continue;
        const Eigen::Index shift = t * tap_spacing;
        if (shift >= stream.size()) break;
        out.tail(stream.size() - shift) += gain * stream.head(stream.size() - shift);
    }
    if (ch.noise_sigma > 0.0) {
        std::normal_distribution<double> noise(0.0, ch.noise_sigma);
        for (Eigen::Index i = 0; i < out.size(); ++i) out(i) += noise(rng);
    }
    return out;
}

RVec apply_wander(const RVec& stream, const WanderConfig& w, int symbol_span) {
    if (w.rms == 0.0) return stream;
    const double period = w.period_syms * symbol_span;
    RVec out(stream.size());
    const double amp = std::sqrt(2.0) * w.rms;
    for (Eigen::Index i = 0; i < stream.size(); ++i)
        out(i) = stream(i) +
                 amp * std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / period +
                                w.phase);
    return out;
}

}  // namespace ucp
