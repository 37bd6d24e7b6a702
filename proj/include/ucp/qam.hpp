#pragma once

#include <vector>

#include "ucp/common.hpp"

namespace ucp {

// Square Gray-coded QAM, unit average symbol energy.
//
// Bits split evenly between the I and Q axes, I bits first. On each axis the
// Gray code 0,1 -> +1,-1 (2-PAM) generalizes to 00,01,11,10 -> +3,+1,-1,-3
// before scaling, so bits 00 map to (+1+j)/sqrt(2) in 4-QAM.
struct QamMap {
    int order = 4;            // 4 | 16 | 64 | 256
    int bits_per_symbol = 2;
    int bits_per_axis = 1;
    double scale = 1.0;       // divides raw odd-integer levels
    std::vector<double> levels;     // axis levels indexed by Gray-decoded bits
    std::vector<double> pam_levels; // normalized axis alphabet, ascending
};

QamMap make_qam(int order);

CVec qam_map(const std::vector<std::uint8_t>& bits, const QamMap& map);
std::vector<std::uint8_t> qam_demap(const CVec& points, const QamMap& map);

// Single-axis PAM versions, used by the baseband scheme.
double pam_map_axis(const std::uint8_t* bits, const QamMap& map);
void pam_demap_axis(double level, const QamMap& map, std::uint8_t* bits_out);

}  // namespace ucp
