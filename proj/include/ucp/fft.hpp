#pragma once

#include "ucp/common.hpp"

namespace ucp {

enum class FftDirection { forward, inverse };

// Unitary FFT over power-of-two sizes.
//
// Vectors are stored in natural bin order 0..N-1. The centered subcarrier
// index k = -N/2..N/2-1 maps to natural bin (k + N) mod N, so the DC
// subcarrier (k = 0) is bin 0 and the lower band edge (k = -N/2) is bin N/2.
// With that bijection, `inverse` multiplies by the power-normalized IFFT
// matrix with entries exp(+j*2*pi*k*n/N)/sqrt(N) and `forward` multiplies by
// its Hermitian transpose.
CVec fft_unitary(const CVec& x, FftDirection dir, OpCounter* ops = nullptr);

inline int centered_to_natural(int k, int n) { return (k + n) % n; }
inline int natural_to_centered(int b, int n) { return b < n / 2 ? b : b - n; }

}  // namespace ucp
