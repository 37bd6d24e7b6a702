#pragma once

#include "ucp/common.hpp"

namespace ucp {

struct SvdFactors {
    CMat u;      // left singular vectors, orthonormal columns
    RVec sigma;  // nonincreasing, all >= 0
    CMat v;      // right singular vectors, orthonormal columns
};

// Full SVD a = u * diag(sigma) * v^H.
SvdFactors svd(const CMat& a);

// Nearest unitary matrix to a square full-rank `a` in Frobenius norm,
// computed as u * v^H from the SVD of `a`. Throws SingularityError when the
// smallest singular value is below 1e-12 times the largest (the projection
// is then non-unique).
CMat project_unitary(const CMat& a);

}  // namespace ucp
