#include "ucp/mask.hpp"

#include <algorithm>
#include <set>

#include "ucp/fft.hpp"

namespace ucp {

std::vector<int> SpectralMask::active_natural() const {
    std::vector<int> out;
    out.reserve(active.size());
    for (int k : active) out.push_back(centered_to_natural(k, n_total));
    return out;
}

std::uint64_t SpectralMask::hash() const {
    std::uint64_t h = mix_seed(static_cast<std::uint64_t>(n_total));
    for (int b = 0; b < n_total; ++b)
        h = mix_seed(h ^ (static_cast<std::uint64_t>(m(b)) << 1 | 1));
    return h;
}

namespace {

SpectralMask finalize(int n_total, std::set<int> active_set, int n_middle, int n_edge) {
    if (active_set.empty())
        throw ConfigError("mask: no active subcarriers remain");
    // Hermitian symmetry about the middle subcarrier; lower edge bin null.
    if (active_set.count(-n_total / 2))
        throw ConfigError("mask: the k=-N/2 edge bin must be null");
    for (int k : active_set)
        if (k != 0 && !active_set.count(-k))
            throw ConfigError("mask: active set is not symmetric about the middle bin (bin " +
                              std::to_string(k) + " has no mirror)");
    SpectralMask mask;
    mask.n_total = n_total;
    mask.active.assign(active_set.begin(), active_set.end());
    mask.m = Eigen::VectorXi::Zero(n_total);
    for (int k : mask.active) mask.m(centered_to_natural(k, n_total)) = 1;
    mask.n_middle = n_middle;
    mask.n_edge = n_edge;
    mask.m_active = static_cast<int>(mask.active.size());
    mask.z_null = n_total - mask.m_active;
    return mask;
}

}  // namespace

SpectralMask build_mask(int n_total, int n_middle, int n_edge) {
    if (!is_pow2(n_total) || n_total < 4)
        throw ConfigError("build_mask: N must be an even power of two >= 4");
    if (n_middle < 0 || n_edge < 0)
        throw ConfigError("build_mask: counts must be nonnegative");
    if (n_total - 2 * (n_middle + n_edge + 1) < 2)
        throw ConfigError("build_mask: fewer than 2 active subcarriers would remain");
    std::set<int> active;
    for (int k = -n_total / 2; k < n_total / 2; ++k) active.insert(k);
    for (int k = -n_middle; k <= n_middle; ++k) active.erase(k);
    for (int k = -n_total / 2; k <= -n_total / 2 + n_edge; ++k) active.erase(k);
    for (int k = n_total / 2 - n_edge; k < n_total / 2; ++k) active.erase(k);
    return finalize(n_total, std::move(active), n_middle, n_edge);
}

SpectralMask build_mask_from_set(int n_total, const std::vector<int>& active_centered) {
    if (!is_pow2(n_total) || n_total < 4)
        throw ConfigError("build_mask_from_set: N must be an even power of two >= 4");
    std::set<int> active;
    for (int k : active_centered) {
        if (k < -n_total / 2 || k >= n_total / 2)
            throw ConfigError("build_mask_from_set: index " + std::to_string(k) +
                              " out of range");
        active.insert(k);
    }
    return finalize(n_total, std::move(active), -1, -1);
}

Eigen::MatrixXi pattern_matrix(const SpectralMask& mask) {
    const int n = mask.n_total;
    Eigen::MatrixXi p(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            p(i, j) = (mask.m(i) == mask.m(j)) ? 1 : 0;
    return p;
}

}  // namespace ucp
