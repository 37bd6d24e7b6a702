#pragma once

#include <vector>

#include "ucp/common.hpp"

namespace ucp {

// Active/null subcarrier spectral mask over N subcarriers.
//
// `active` holds the active set in centered indices (-N/2..N/2-1), sorted
// ascending. `m` is the same information as a 0/1 vector in natural bin
// order. Masks are Hermitian-symmetric about the middle subcarrier (bin k
// active iff bin -k active) and the k = -N/2 edge bin is always null, which
// is what makes the composite matrix P = F*W real-valued.
struct SpectralMask {
    int n_total = 0;
    std::vector<int> active;  // centered indices, ascending
    Eigen::VectorXi m;        // natural order, length n_total
    int n_middle = -1;        // -1 for unstructured masks
    int n_edge = -1;
    int m_active = 0;
    int z_null = 0;

    bool is_active_natural(int bin) const { return m(bin) != 0; }
    std::vector<int> active_natural() const;  // natural bins, same order as `active`
    std::uint64_t hash() const;
};

// Structured mask: null bins are the middle (k=0) bin plus n_middle bins on
// each side, n_edge+1 bins at the lower edge and n_edge at the upper edge.
SpectralMask build_mask(int n_total, int n_middle, int n_edge);

// Arbitrary Hermitian-symmetric active set (centered indices, -N/2 excluded).
SpectralMask build_mask_from_set(int n_total, const std::vector<int>& active_centered);

// Two-dimensional pattern matrix m*m^T + (1-m)*(1-m)^T in natural bin order:
// entry (i,j) is 1 iff bins i and j are both active or both null.
Eigen::MatrixXi pattern_matrix(const SpectralMask& mask);

}  // namespace ucp
