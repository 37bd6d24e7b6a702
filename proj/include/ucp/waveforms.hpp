#pragma once

#include <vector>

#include "ucp/common.hpp"
#include "ucp/mask.hpp"
#include "ucp/precoder.hpp"

namespace ucp {

// Subcarrier mapping matrix B: M columns of I_N picked at the active bins.
// Real parts of the symbol vector fill the first M/2 active bins in
// ascending centered-index order, imaginary parts fill the remaining M/2.
struct SubcarrierMap {
    SpectralMask mask;
    std::vector<int> bins;  // natural bins, ascending centered order, size M
};

SubcarrierMap make_subcarrier_map(const SpectralMask& mask);

// v = B * [Re{x}; Im{x}], length N; x has length M/2.
RVec subcarrier_place(const SubcarrierMap& map, const CVec& x);
// x from B^T * v.
CVec subcarrier_extract(const SubcarrierMap& map, const RVec& v);

// Cyclic prefix: add_cp prepends the last L samples; remove_cp keeps the
// last N samples.
RVec add_cp(const RVec& x, int cp_len);
RVec remove_cp(const RVec& y, int cp_len);

// ---- modulation schemes ---------------------------------------------------
// All modulators emit one real time-domain block; all demodulators take one
// received block plus the per-bin equalizer diagonal d (natural order) and
// return constellation estimates. Loopback with d = 1 on the used bins is
// exact in the noiseless case.

// UCP-OFDM: s = CP(P * B * [Re;Im]), block length N+L.
RVec ucp_modulate(const Precoder& pre, const SubcarrierMap& map, const CVec& x, int cp_len);
CVec ucp_demodulate(const Precoder& pre, const SubcarrierMap& map, const RVec& y,
                    const CVec& eq_d, int cp_len, OpCounter* ops = nullptr);

// DCO-OFDM: Hermitian-symmetric OFDM; complex symbols on the positive active
// bins of `mask`, mirrored conjugate on the negative bins. Symbol count per
// block = number of positive active bins.
int dco_symbols_per_block(const SpectralMask& mask);
RVec dco_modulate(const SpectralMask& mask, const CVec& x, int cp_len);
CVec dco_demodulate(const SpectralMask& mask, const RVec& y, const CVec& eq_d, int cp_len);

// ACO-OFDM: odd subcarriers only, negative samples clipped to zero; the
// known 0.5 clipping amplitude factor is compensated by 2x at the receiver.
// Symbol count per block = N/4.
RVec aco_modulate(int n, const CVec& x, int cp_len);
// Bipolar pre-clip signal (satisfies s[n + N/2] = -s[n]); exposed for tests.
RVec aco_bipolar(int n, const CVec& x);
CVec aco_demodulate(int n, const RVec& y, const CVec& eq_d, int cp_len);

// U-OFDM: the bipolar DCO frame is sent as two CP-prefixed unipolar halves
// (positive part, then negated-negative part); total length 2*(N+L).
RVec u_ofdm_modulate(const SpectralMask& mask, const CVec& x, int cp_len);
CVec u_ofdm_demodulate(const SpectralMask& mask, const RVec& y, const CVec& eq_d, int cp_len);

// Baseband PAM with FDE: the N time samples are the PAM levels themselves
// (real parts then imaginary parts of N/2 QAM symbols), plus CP.
RVec bb_modulate(const CVec& x, int cp_len);
CVec bb_demodulate(const RVec& y, const CVec& eq_d, int cp_len);

// ---- Zadoff-Chu preamble --------------------------------------------------

// z[i] = exp(-j*pi*root*i*(i+1)/len), len odd, gcd(root, len) = 1.
CVec zc_sequence(int len, int root);

struct ZcPreamble {
    CVec training;   // frequency domain, natural order, zeros at null bins
    RVec time_block; // CP-prefixed real preamble, length N+L
};

// Constant-magnitude ZC values on the active positive bins, mirrored
// conjugate on the negative bins. `amplitude` is the per-bin magnitude.
ZcPreamble zadoff_chu_preamble(const SpectralMask& mask, int root, int cp_len,
                               double amplitude = 1.0);

}  // namespace ucp
