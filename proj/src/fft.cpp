#include "ucp/fft.hpp"

#include <cmath>
#include <numbers>

namespace ucp {

namespace {

// In-place iterative radix-2 DIT, unnormalized, kernel exp(-j2pi/N).
void fft_pow2(CVec& a) {
    const int n = static_cast<int>(a.size());
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / len;
        const cplx wl(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

}  // namespace

CVec fft_unitary(const CVec& x, FftDirection dir, OpCounter* ops) {
    const int n = static_cast<int>(x.size());
    if (!is_pow2(n))
        throw SizeError("fft_unitary: length " + std::to_string(n) + " is not a power of two");
    CVec a = x;
    if (dir == FftDirection::inverse) a = a.conjugate();
    fft_pow2(a);
    if (dir == FftDirection::inverse) a = a.conjugate();
    a /= std::sqrt(static_cast<double>(n));
    if (ops) {
        ops->multiplies += static_cast<std::uint64_t>(n) * ilog2(n) / 2;
        ops->additions += static_cast<std::uint64_t>(n) * ilog2(n) / 2;
    }
    return a;
}

}  // namespace ucp
