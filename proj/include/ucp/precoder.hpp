#pragma once

#include <string>

#include "ucp/common.hpp"
#include "ucp/mask.hpp"

namespace ucp {

// Unitary checkerboard precoder for one spectral mask.
//
// w is the unitary patterned precoding matrix (frequency domain, natural bin
// order on both axes). p = F*w is the real orthogonal composite
// precoding-modulation matrix, kept dense as the oracle for the fast path.
// The subcarrier nulling matrix E = p - I has rank 2Z and is stored in
// compact SVD form: p*x is applied as x + us_r * (v_r^T * x).
struct Precoder {
    SpectralMask mask;
    CMat w;
    RMat p;
    RMat us_r;    // u_r * diag(sigma_r), N x r
    RMat v_r;     // N x r
    RVec sigma_r; // r positive reals, descending
    int rank_r = 0;
};

// Builds w = proj{F^H ⊙ M}, forms p = F*w and the compact SVD of p - I.
// Verifies unitarity, pattern zeros, realness, orthogonality and the
// rank = 2Z claim; throws NumericalError/SingularityError on violation.
Precoder synthesize(const SpectralMask& mask);

// y = p * x via the low-rank factors: x + us_r * (v_r^T * x).
// Matches the dense oracle to 1e-10 max-abs. When `ops` is given, every
// scalar multiply-accumulate of the two factor passes is counted.
RVec encode_fast(const Precoder& pre, const RVec& x, OpCounter* ops = nullptr);

// y = p^T * x via x + v_r * (us_r^T * x); inverse of encode_fast.
RVec decode_fast(const Precoder& pre, const RVec& y, OpCounter* ops = nullptr);

struct PrecoderCost {
    std::uint64_t encode_macs;     // 2*N*r = 4*N*Z multiplies for the two factor passes
    std::uint64_t storage_reals;   // 2*N*r, for us_r and v_r
};
PrecoderCost op_count(const Precoder& pre);

// Little-endian binary cache (see docs/precoder-cache.md for the layout).
void save_precoder(const Precoder& pre, const std::string& path);
Precoder load_precoder(const std::string& path);

}  // namespace ucp
