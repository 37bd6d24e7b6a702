#include "ucp/waveforms.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "ucp/fft.hpp"

namespace ucp {

SubcarrierMap make_subcarrier_map(const SpectralMask& mask) {
    SubcarrierMap map;
    map.mask = mask;
    map.bins = mask.active_natural();
    if (map.bins.size() % 2 != 0)
        throw ConfigError("make_subcarrier_map: active count must be even");
    return map;
}

RVec subcarrier_place(const SubcarrierMap& map, const CVec& x) {
    const int half = static_cast<int>(map.bins.size()) / 2;
    if (x.size() != half)
        throw SizeError("subcarrier_place: expected M/2 = " + std::to_string(half) +
                        " symbols");
    RVec v = RVec::Zero(map.mask.n_total);
    for (int i = 0; i < half; ++i) {
        v(map.bins[i]) = x(i).real();
        v(map.bins[half + i]) = x(i).imag();
    }
    return v;
}

CVec subcarrier_extract(const SubcarrierMap& map, const RVec& v) {
    if (v.size() != map.mask.n_total)
        throw SizeError("subcarrier_extract: expected length N");
    const int half = static_cast<int>(map.bins.size()) / 2;
    CVec x(half);
    for (int i = 0; i < half; ++i)
        x(i) = cplx(v(map.bins[i]), v(map.bins[half + i]));
    return x;
}

RVec add_cp(const RVec& x, int cp_len) {
    const int n = static_cast<int>(x.size());
    if (cp_len < 0 || cp_len >= n)
        throw ConfigError("add_cp: need 0 <= L < N");
    RVec out(n + cp_len);
    out.head(cp_len) = x.tail(cp_len);
    out.tail(n) = x;
    return out;
}

RVec remove_cp(const RVec& y, int cp_len) {
    const int total = static_cast<int>(y.size());
    if (cp_len < 0 || cp_len >= total)
        throw ConfigError("remove_cp: need 0 <= L < block length");
    return y.tail(total - cp_len);
}

// ---- UCP ------------------------------------------------------------------

RVec ucp_modulate(const Precoder& pre, const SubcarrierMap& map, const CVec& x, int cp_len) {
    if (map.mask.n_total != pre.mask.n_total || map.mask.m != pre.mask.m)
        throw ConfigError("ucp_modulate: subcarrier map does not match precoder mask");
    return add_cp(encode_fast(pre, subcarrier_place(map, x)), cp_len);
}

CVec ucp_demodulate(const Precoder& pre, const SubcarrierMap& map, const RVec& y,
                    const CVec& eq_d, int cp_len, OpCounter* ops) {
    const int n = pre.mask.n_total;
    if (y.size() != n + cp_len)
        throw SizeError("ucp_demodulate: expected block length N+L");
    if (eq_d.size() != n)
        throw SizeError("ucp_demodulate: equalizer must have N bins");
    CVec spec = fft_unitary(remove_cp(y, cp_len).cast<cplx>(), FftDirection::forward, ops);
    spec = spec.cwiseProduct(eq_d);
    if (ops) ops->multiplies += static_cast<std::uint64_t>(pre.mask.m_active);
    CVec t = fft_unitary(spec, FftDirection::inverse, ops);
    return subcarrier_extract(map, decode_fast(pre, t.real(), ops));
}

// ---- Hermitian-symmetric OFDM helpers ------------------------------------

namespace {

std::vector<int> positive_active_bins(const SpectralMask& mask) {
    std::vector<int> bins;
    for (int k : mask.active)
        if (k > 0) bins.push_back(k);  // natural bin == centered index for k > 0
    return bins;
}

// Frequency vector with x on the positive bins and conjugate mirrors.
CVec hermitian_spectrum(int n, const std::vector<int>& bins, const CVec& x) {
    CVec spec = CVec::Zero(n);
    for (std::size_t i = 0; i < bins.size(); ++i) {
        spec(bins[i]) = x(static_cast<Eigen::Index>(i));
        spec(n - bins[i]) = std::conj(x(static_cast<Eigen::Index>(i)));
    }
    return spec;
}

RVec real_ifft(const CVec& spec) {
    CVec t = fft_unitary(spec, FftDirection::inverse);
    return t.real();
}

CVec equalized_fft(const RVec& block, const CVec& eq_d) {
    CVec spec = fft_unitary(block.cast<cplx>(), FftDirection::forward);
    return spec.cwiseProduct(eq_d);
}

}  // namespace

// ---- DCO ------------------------------------------------------------------

int dco_symbols_per_block(const SpectralMask& mask) {
    return static_cast<int>(positive_active_bins(mask).size());
}

RVec dco_modulate(const SpectralMask& mask, const CVec& x, int cp_len) {
    const auto bins = positive_active_bins(mask);
    if (x.size() != static_cast<Eigen::Index>(bins.size()))
        throw SizeError("dco_modulate: expected " + std::to_string(bins.size()) + " symbols");
    // sqrt(2) keeps per-symbol energy after the conjugate mirror at E|x|^2.
    return add_cp(real_ifft(hermitian_spectrum(mask.n_total, bins, x / std::sqrt(2.0))),
                  cp_len);
}

CVec dco_demodulate(const SpectralMask& mask, const RVec& y, const CVec& eq_d, int cp_len) {
    if (y.size() != mask.n_total + cp_len)
        throw SizeError("dco_demodulate: expected block length N+L");
    CVec spec = equalized_fft(remove_cp(y, cp_len), eq_d);
    const auto bins = positive_active_bins(mask);
    CVec x(bins.size());
    for (std::size_t i = 0; i < bins.size(); ++i)
        x(static_cast<Eigen::Index>(i)) = spec(bins[i]) * std::sqrt(2.0);
    return x;
}

// ---- ACO ------------------------------------------------------------------

namespace {

std::vector<int> aco_bins(int n) {
    std::vector<int> bins;
    for (int k = 1; k < n / 2; k += 2) bins.push_back(k);
    return bins;
}

}  // namespace

RVec aco_bipolar(int n, const CVec& x) {
    const auto bins = aco_bins(n);
    if (x.size() != static_cast<Eigen::Index>(bins.size()))
        throw SizeError("aco_bipolar: expected N/4 = " + std::to_string(bins.size()) +
                        " symbols");
    return real_ifft(hermitian_spectrum(n, bins, x / std::sqrt(2.0)));
}

RVec aco_modulate(int n, const CVec& x, int cp_len) {
    return add_cp(aco_bipolar(n, x).cwiseMax(0.0), cp_len);
}

CVec aco_demodulate(int n, const RVec& y, const CVec& eq_d, int cp_len) {
    if (y.size() != n + cp_len)
        throw SizeError("aco_demodulate: expected block length N+L");
    CVec spec = equalized_fft(remove_cp(y, cp_len), eq_d);
    const auto bins = aco_bins(n);
    CVec x(bins.size());
    for (std::size_t i = 0; i < bins.size(); ++i)  // 2x undoes the clipping loss
        x(static_cast<Eigen::Index>(i)) = spec(bins[i]) * 2.0 * std::sqrt(2.0);
    return x;
}

// ---- U-OFDM ---------------------------------------------------------------

RVec u_ofdm_modulate(const SpectralMask& mask, const CVec& x, int cp_len) {
    const auto bins = positive_active_bins(mask);
    if (x.size() != static_cast<Eigen::Index>(bins.size()))
        throw SizeError("u_ofdm_modulate: expected " + std::to_string(bins.size()) +
                        " symbols");
    RVec s = real_ifft(hermitian_spectrum(mask.n_total, bins, x / std::sqrt(2.0)));
    RVec out(2 * (mask.n_total + cp_len));
    out.head(mask.n_total + cp_len) = add_cp(s.cwiseMax(0.0), cp_len);
    out.tail(mask.n_total + cp_len) = add_cp((-s).cwiseMax(0.0), cp_len);
    return out;
}

CVec u_ofdm_demodulate(const SpectralMask& mask, const RVec& y, const CVec& eq_d,
                       int cp_len) {
    const int n = mask.n_total;
    if (y.size() != 2 * (n + cp_len))
        throw SizeError("u_ofdm_demodulate: expected block length 2(N+L)");
    CVec pos = equalized_fft(remove_cp(y.head(n + cp_len), cp_len), eq_d);
    CVec neg = equalized_fft(remove_cp(y.tail(n + cp_len), cp_len), eq_d);
    CVec spec = pos - neg;
    const auto bins = positive_active_bins(mask);
    CVec x(bins.size());
    for (std::size_t i = 0; i < bins.size(); ++i)
        x(static_cast<Eigen::Index>(i)) = spec(bins[i]) * std::sqrt(2.0);
    return x;
}

// ---- BB -------------------------------------------------------------------

RVec bb_modulate(const CVec& x, int cp_len) {
    const int half = static_cast<int>(x.size());
    RVec s(2 * half);
    s.head(half) = x.real();
    s.tail(half) = x.imag();
    return add_cp(s, cp_len);
}

CVec bb_demodulate(const RVec& y, const CVec& eq_d, int cp_len) {
    CVec spec = equalized_fft(remove_cp(y, cp_len), eq_d);
    RVec s = fft_unitary(spec, FftDirection::inverse).real();
    const int half = static_cast<int>(s.size()) / 2;
    CVec x(half);
    for (int i = 0; i < half; ++i) x(i) = cplx(s(i), s(half + i));
    return x;
}

// ---- Zadoff-Chu -----------------------------------------------------------

CVec zc_sequence(int len, int root) {
    if (len < 1 || root < 1 || std::gcd(len, root) != 1)
        throw ConfigError("zc_sequence: root must be >= 1 and coprime with the length");
    CVec z(len);
    for (int i = 0; i < len; ++i) {
        // i*(i+1) for odd lengths, i*i for even lengths (both CAZAC).
        const double q = (len % 2) ? static_cast<double>(i) * (i + 1)
                                   : static_cast<double>(i) * i;
        const double ang = -std::numbers::pi * root * q / len;
        z(i) = cplx(std::cos(ang), std::sin(ang));
    }
    return z;
}

ZcPreamble zadoff_chu_preamble(const SpectralMask& mask, int root, int cp_len,
                               double amplitude) {
    const auto bins = positive_active_bins(mask);
    CVec z = zc_sequence(static_cast<int>(bins.size()), root) * amplitude;
    ZcPreamble p;
    p.training = hermitian_spectrum(mask.n_total, bins, z);
    p.time_block = add_cp(real_ifft(p.training), cp_len);
    return p;
}

}  // namespace ucp
