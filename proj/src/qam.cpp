#include "ucp/qam.hpp"

#include <algorithm>
#include <cmath>

namespace ucp {

namespace {

// Gray decode b bits (MSB first) to an index 0..2^b-1.
unsigned gray_decode(const std::uint8_t* bits, int b) {
    unsigned g = 0;
    for (int i = 0; i < b; ++i) g = (g << 1) | (bits[i] & 1u);
    unsigned v = g;
    for (unsigned s = 1; s < static_cast<unsigned>(b); ++s) v ^= g >> s;
    return v;
}

void gray_encode(unsigned v, int b, std::uint8_t* bits) {
    unsigned g = v ^ (v >> 1);
    for (int i = 0; i < b; ++i) bits[i] = static_cast<std::uint8_t>((g >> (b - 1 - i)) & 1u);
}

}  // namespace

QamMap make_qam(int order) {
    if (order != 4 && order != 16 && order != 64 && order != 256)
        throw ConfigError("make_qam: order must be 4, 16, 64 or 256");
    QamMap map;
    map.order = order;
    map.bits_per_symbol = ilog2(order);
    map.bits_per_axis = map.bits_per_symbol / 2;
    const int l = 1 << map.bits_per_axis;  // levels per axis
    // E[|x|^2] = 2 * mean(level^2) over odd integers +-1..+-(l-1).
    double e = 0.0;
    for (int i = 0; i < l; ++i) {
        const double lev = l - 1 - 2 * i;
        e += lev * lev;
    }
    map.scale = std::sqrt(2.0 * e / l);
    map.levels.resize(l);
    for (int i = 0; i < l; ++i) map.levels[i] = (l - 1 - 2 * i) / map.scale;
    map.pam_levels = map.levels;
    std::sort(map.pam_levels.begin(), map.pam_levels.end());
    return map;
}

double pam_map_axis(const std::uint8_t* bits, const QamMap& map) {
    return map.levels[gray_decode(bits, map.bits_per_axis)];
}

void pam_demap_axis(double level, const QamMap& map, std::uint8_t* bits_out) {
    // Minimum-distance index over the axis alphabet; levels[] is descending
    // in Gray-decoded order, so index = clamp(round((max - x)/step)).
    const int l = static_cast<int>(map.levels.size());
    const double step = 2.0 / map.scale;
    int idx = static_cast<int>(std::lround((map.levels[0] - level) / step));
    idx = std::clamp(idx, 0, l - 1);
    gray_encode(static_cast<unsigned>(idx), map.bits_per_axis, bits_out);
}

CVec qam_map(const std::vector<std::uint8_t>& bits, const QamMap& map) {
    if (bits.size() % map.bits_per_symbol != 0)
        throw SizeError("qam_map: bit count not divisible by bits per symbol");
    const std::size_t n = bits.size() / map.bits_per_symbol;
    CVec out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t* b = bits.data() + i * map.bits_per_symbol;
        out(static_cast<Eigen::Index>(i)) =
            cplx(pam_map_axis(b, map), pam_map_axis(b + map.bits_per_axis, map));
    }
    return out;
}

std::vector<std::uint8_t> qam_demap(const CVec& points, const QamMap& map) {
    std::vector<std::uint8_t> bits(points.size() * map.bits_per_symbol);
    for (Eigen::Index i = 0; i < points.size(); ++i) {
        std::uint8_t* b = bits.data() + i * map.bits_per_symbol;
        pam_demap_axis(points(i).real(), map, b);
        pam_demap_axis(points(i).imag(), map, b + map.bits_per_axis);
    }
    return bits;
}

}  // namespace ucp
