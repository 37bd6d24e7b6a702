#pragma once

#include <random>
#include <vector>

#include "ucp/common.hpp"

namespace ucp {

// Indoor office geometry. Coordinates are centered on the transmitter's
// floor projection: the luminaire sits at (0, 0, tx_height) pointing down,
// the receiver plane is a desk at rx_plane_z pointing up, floor at z = 0,
// ceiling at z = room_z, walls at x, y = +-room_x/2, +-room_y/2.
struct RoomGeometry {
    double room_x = 5.0, room_y = 5.0, room_z = 3.0;
    double tx_height = 1.8;
    double tx_x = 0.0, tx_y = 0.0;
    double rx_x = 0.0, rx_y = 0.0;
    double rx_plane_z = 0.85;
    double half_power_deg = 30.0;
    double fov_half_deg = 60.0;
    double detector_area = 7.8e-7;
    double concentrator_index = 1.46;
    double filter_gain_db = 1.0;
    double concentrator_gain_db = 1.0;
    double wall_reflectivity = 0.7;
    double tx_power = 20.0;
    double patch_size = 0.10;        // reflector discretization, meters
    double sample_period = 1.6e-9;   // 1 / 625 MHz
    int max_taps = 17;               // CP length + 1
    double rx_jitter = 0.05;         // per-run receiver position jitter, meters
};

enum class ChannelKind { awgn, dlos, ndlos };

// Symbol-rate impulse response (power gains, receiver power / transmitter
// power) plus the per-sample noise standard deviation.
struct ChannelRealization {
    RVec taps;
    double noise_sigma = 0.0;
    ChannelKind kind = ChannelKind::awgn;
};

using Rng = std::mt19937_64;

double lambertian_order(double half_power_deg);

// Direct-path DC gain to a receiver at (rx_x, rx_y) on the receiver plane;
// exactly 0 outside the field of view.
double direct_path_gain(const RoomGeometry& g, double rx_x, double rx_y);

// Single first-order bounce TX -> patch -> RX (patch described by center,
// inward normal and area); 0 when any cosine or the FOV check fails.
double reflection_path_gain(const RoomGeometry& g, const Eigen::Vector3d& patch,
                            const Eigen::Vector3d& normal, double area, double rx_x,
                            double rx_y);

// Patch radiosity precompute: per-patch incident power histograms on the
// symbol-rate delay grid, covering the direct illumination (for first-order
// paths to the receiver) and one patch-to-patch bounce (second-order paths).
// Depends only on the room and transmitter, so one instance serves any
// number of receiver realizations.
class RoomIllumination {
  public:
    explicit RoomIllumination(const RoomGeometry& g);

    // Taps gathered at the given receiver position (LOS + reflections),
    // binned by propagation delay relative to the earliest arrival.
    RVec gather(double rx_x, double rx_y) const;

    const RoomGeometry& geometry() const { return geom_; }

  private:
    struct Patch {
        Eigen::Vector3d pos;
        Eigen::Vector3d normal;
        double direct_delay;            // TX -> patch, seconds
        std::vector<double> incident;   // watts per delay bin (unit TX power)
    };
    RoomGeometry geom_;
    std::vector<Patch> patches_;
    double area_ = 0.0;
};

// Channel realization for one Monte Carlo run. For multipath kinds the
// receiver position is jittered uniformly within +-rx_jitter. Throws
// ConfigError when more than 0.1% of the collected energy falls beyond
// max_taps (delay spread exceeding the CP).
ChannelRealization realize_channel(const RoomGeometry& g, ChannelKind kind,
                                   double noise_sigma, Rng& rng,
                                   const RoomIllumination* illum = nullptr);

// Linear convolution with the taps (spaced `tap_spacing` samples apart)
// plus white Gaussian noise of std noise_sigma per sample.
RVec apply_channel(const RVec& stream, const ChannelRealization& ch, int tap_spacing,
                   Rng& rng);

// Sinusoidal baseline wander.
struct WanderConfig {
    double rms = 0.0;          // RMS of the added sinusoid
    double period_syms = 45.0; // period in OFDM symbols
    double phase = 0.0;
};

// out = stream + sqrt(2)*rms*sin(2*pi*t/period + phase), period =
// period_syms * symbol_span samples.
RVec apply_wander(const RVec& stream, const WanderConfig& w, int symbol_span);

}  // namespace ucp
