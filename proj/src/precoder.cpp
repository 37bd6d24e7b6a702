#include "ucp/precoder.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <vector>

#include "ucp/fft.hpp"
#include "ucp/svd.hpp"

namespace ucp {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kSnapTol = 1e-12;
constexpr double kRankCutoff = 1e-10;

// Unitary DFT matrix F^H in natural bin order: entry (a,b) = exp(-j2pi*ab/N)/sqrt(N).
// With the centered->natural bijection this equals the Hermitian transpose of
// the power-normalized IFFT matrix, because k*n is congruent to a*b mod N.
CMat dft_matrix(int n) {
    CMat fh(n, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double ang = -2.0 * std::numbers::pi *
                               static_cast<double>(static_cast<long long>(a) * b % n) / n;
            fh(a, b) = s * cplx(std::cos(ang), std::sin(ang));
        }
    return fh;
}

double unitarity_residual(const CMat& q) {
    CMat g = q.adjoint() * q;
    g.diagonal().array() -= 1.0;
    return g.cwiseAbs().maxCoeff();
}

// Nearest unitary to the masked matrix, computed structurally.
//
// The masked matrix satisfies conj(A) = flip(A) row-wise (rows b and N-b are
// conjugate, because the mask is Hermitian-symmetric), so A = T * Ar where T
// is the unitary conjugate-pair change of basis and Ar is real. Moreover Ar
// is block diagonal over the active/null partition. Taking the polar factor
// of each real block and mapping back through T yields a nearest unitary
//
// When a block is exactly singular the polar factor is free in the sign of
// each zero singular direction; all choices are equally near, but only some
// keep rank(P - I) at 2Z. The degenerate completions are enumerated and the
// one preserving the analytic rank is kept, which also makes the choice
// deterministic across SVD sign conventions.
// that is patterned and gives a real P = F*W *by construction*, even when a
// block is rank-deficient: the minimal Z = 2 masks make both blocks exactly
// singular, where the unconstrained complex SVD is free to pick a completion
// that breaks realness.
CMat patterned_polar(const SpectralMask& mask, const CMat& a, const CMat& fh) {
    const int n = mask.n_total;
    const double is2 = 1.0 / std::sqrt(2.0);
    struct Col {
        int b1, b2;     // bins touched by this column of T
        cplx c1, c2;
    };
    std::vector<Col> tcols;
    std::vector<int> owner;  // mask bit of the column's bin pair
    tcols.reserve(n);
    tcols.push_back({0, 0, 1.0, 0.0});
    owner.push_back(mask.m(0));
    tcols.push_back({n / 2, n / 2, 1.0, 0.0});
    owner.push_back(mask.m(n / 2));
    for (int b = 1; b < n / 2; ++b) {
        tcols.push_back({b, n - b, is2, is2});
        owner.push_back(mask.m(b));
        tcols.push_back({b, n - b, cplx(0, is2), cplx(0, -is2)});
        owner.push_back(mask.m(b));
    }

    RMat ar(n, n);
    double max_imag = 0.0;
    for (int c = 0; c < n; ++c) {
        const Col& t = tcols[c];
        CVec row = std::conj(t.c1) * a.row(t.b1).transpose();
        if (t.b2 != t.b1) row += std::conj(t.c2) * a.row(t.b2).transpose();
        max_imag = std::max(max_imag, row.imag().cwiseAbs().maxCoeff());
        ar.row(c) = row.real();
    }
    if (max_imag >= kSnapTol * 100)
        throw NumericalError("synthesize: masked matrix lost conjugate symmetry");

    struct Flip {
        std::vector<int> rows, cols;  // scatter targets of the owning block
        RVec u, v;                    // zero singular direction, 2*u*v^T flips it
    };
    RMat q = RMat::Zero(n, n);
    std::vector<Flip> flips;
    for (int val = 0; val <= 1; ++val) {
        std::vector<int> rows, cols;
        for (int c = 0; c < n; ++c)
            if (owner[c] == val) rows.push_back(c);
        for (int b = 0; b < n; ++b)
            if (mask.m(b) == val) cols.push_back(b);
        RMat blk(rows.size(), cols.size());
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j) blk(i, j) = ar(rows[i], cols[j]);
        Eigen::JacobiSVD<RMat> f(blk, Eigen::ComputeFullU | Eigen::ComputeFullV);
        RMat qb = f.matrixU() * f.matrixV().transpose();
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j) q(rows[i], cols[j]) = qb(i, j);
        const RVec& s = f.singularValues();
        const double smax = s.size() ? s(0) : 0.0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) < kRankCutoff * smax)
                flips.push_back({rows, cols, f.matrixU().col(i), f.matrixV().col(i)});
    }

    auto build_w = [&](const RMat& qq) {
        CMat w = CMat::Zero(n, n);
        for (int c = 0; c < n; ++c) {
            const Col& t = tcols[c];
            w.row(t.b1) += t.c1 * qq.row(c).cast<cplx>();
            if (t.b2 != t.b1) w.row(t.b2) += t.c2 * qq.row(c).cast<cplx>();
        }
        return w;
    };
    if (flips.empty()) return build_w(q);
    if (flips.size() > 8)
        throw NumericalError("synthesize: masked matrix is too degenerate to complete");

    const int want = 2 * mask.z_null;
    for (unsigned combo = 0; combo < (1u << flips.size()); ++combo) {
        RMat qc = q;
        for (size_t fi = 0; fi < flips.size(); ++fi) {
            if (!((combo >> fi) & 1u)) continue;
            const Flip& fl = flips[fi];
            for (size_t i = 0; i < fl.rows.size(); ++i)
                for (size_t j = 0; j < fl.cols.size(); ++j)
                    qc(fl.rows[i], fl.cols[j]) -= 2.0 * fl.u(i) * fl.v(j);
        }
        CMat w = build_w(qc);
        RMat e = (fh.adjoint() * w).real();
        e.diagonal().array() -= 1.0;
        Eigen::ColPivHouseholderQR<RMat> qr(e);
        qr.setThreshold(kRankCutoff);
        if (qr.rank() == want) return w;
    }
    throw NumericalError("synthesize: no degenerate completion preserves rank 2Z");
}

}  // namespace

Precoder synthesize(const SpectralMask& mask) {
    const int n = mask.n_total;
    const CMat fh = dft_matrix(n);
    const Eigen::MatrixXi pat = pattern_matrix(mask);

    CMat a = fh;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (pat(i, j) == 0) a(i, j) = 0.0;

    CMat w = patterned_polar(mask, a, fh);

    // Snap pattern-zero dust to exact zeros, then re-verify unitarity.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (pat(i, j) == 0) {
                if (std::abs(w(i, j)) >= kSnapTol)
                    throw NumericalError(
                        "synthesize: projection violates the checkerboard pattern, |entry| = " +
                        std::to_string(std::abs(w(i, j))));
                w(i, j) = 0.0;
            }
    if (unitarity_residual(w) >= kUnitaryTol)
        throw NumericalError("synthesize: precoder lost unitarity after zero snapping");

    // Composite matrix P = F*W must be real (property P3).
    const CMat p_cplx = fh.adjoint() * w;
    const double max_imag = p_cplx.imag().cwiseAbs().maxCoeff();
    if (max_imag >= kUnitaryTol)
        throw NumericalError("synthesize: composite matrix not real, max imag = " +
                             std::to_string(max_imag));

    Precoder pre;
    pre.mask = mask;
    pre.w = std::move(w);
    pre.p = p_cplx.real();

    RMat po = pre.p.transpose() * pre.p;
    po.diagonal().array() -= 1.0;
    if (po.cwiseAbs().maxCoeff() >= kUnitaryTol)
        throw NumericalError("synthesize: composite matrix not orthogonal");

    // Compact SVD of the nulling matrix E = P - I (real).
    RMat e = pre.p;
    e.diagonal().array() -= 1.0;
    Eigen::JacobiSVD<RMat> f(e, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RVec& sig = f.singularValues();
    const double smax = sig.size() ? sig(0) : 0.0;
    int r = 0;
    while (r < sig.size() && sig(r) > kRankCutoff * smax && sig(r) > 0.0) ++r;
    if (r != 2 * mask.z_null)
        throw NumericalError("synthesize: rank of E is " + std::to_string(r) +
                             ", expected 2Z = " + std::to_string(2 * mask.z_null));

    pre.rank_r = r;
    pre.sigma_r = sig.head(r);
    pre.v_r = f.matrixV().leftCols(r);
    pre.us_r = f.matrixU().leftCols(r) * pre.sigma_r.asDiagonal();
    return pre;
}

RVec encode_fast(const Precoder& pre, const RVec& x, OpCounter* ops) {
    const int n = pre.mask.n_total;
    const int r = pre.rank_r;
    if (x.size() != n)
        throw SizeError("encode_fast: expected length " + std::to_string(n));
    RVec t(r);
    for (int j = 0; j < r; ++j) t(j) = pre.v_r.col(j).dot(x);
    RVec y = x;
    for (int j = 0; j < r; ++j) y += pre.us_r.col(j) * t(j);
    if (ops) {
        ops->multiplies += 2ull * n * r;
        ops->additions += static_cast<std::uint64_t>(n);
    }
    return y;
}

RVec decode_fast(const Precoder& pre, const RVec& y, OpCounter* ops) {
    const int n = pre.mask.n_total;
    const int r = pre.rank_r;
    if (y.size() != n)
        throw SizeError("decode_fast: expected length " + std::to_string(n));
    RVec t(r);
    for (int j = 0; j < r; ++j) t(j) = pre.us_r.col(j).dot(y);
    RVec x = y;
    for (int j = 0; j < r; ++j) x += pre.v_r.col(j) * t(j);
    if (ops) {
        ops->multiplies += 2ull * n * r;
        ops->additions += static_cast<std::uint64_t>(n);
    }
    return x;
}

PrecoderCost op_count(const Precoder& pre) {
    const auto n = static_cast<std::uint64_t>(pre.mask.n_total);
    const auto r = static_cast<std::uint64_t>(pre.rank_r);
    return {2 * n * r, 2 * n * r};
}

// ---- cache file -----------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'U', 'C', 'P', 'C'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ofstream& f, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    f.write(reinterpret_cast<char*>(b), 4);
}

std::uint32_t get_u32(std::ifstream& f) {
    unsigned char b[4];
    f.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_mat(std::ofstream& f, const RMat& m) {  // row-major doubles
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            double v = m(i, j);
            f.write(reinterpret_cast<char*>(&v), sizeof v);
        }
}

RMat get_mat(std::ifstream& f, int rows, int cols) {
    RMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            double v;
            f.read(reinterpret_cast<char*>(&v), sizeof v);
            m(i, j) = v;
        }
    return m;
}

}  // namespace

void save_precoder(const Precoder& pre, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("save_precoder: cannot open " + path);
    f.write(kMagic, 4);
    put_u32(f, kVersion);
    put_u32(f, static_cast<std::uint32_t>(pre.mask.n_total));
    put_u32(f, static_cast<std::uint32_t>(pre.rank_r));
    for (int b = 0; b < pre.mask.n_total; ++b)
        f.put(static_cast<char>(pre.mask.m(b)));
    put_mat(f, pre.us_r);
    put_mat(f, pre.v_r);
    put_mat(f, pre.p);
    if (!f) throw ConfigError("save_precoder: write failed for " + path);
}

Precoder load_precoder(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("load_precoder: cannot open " + path);
    char magic[4];
    f.read(magic, 4);
    if (!f || std::memcmp(magic, kMagic, 4) != 0)
        throw ConfigError("load_precoder: bad magic in " + path);
    const std::uint32_t version = get_u32(f);
    if (version != kVersion)
        throw ConfigError("load_precoder: unsupported version " + std::to_string(version));
    const int n = static_cast<int>(get_u32(f));
    const int r = static_cast<int>(get_u32(f));
    std::vector<int> active;
    Eigen::VectorXi m(n);
    for (int b = 0; b < n; ++b) m(b) = f.get();
    for (int k = -n / 2; k < n / 2; ++k)
        if (m(centered_to_natural(k, n))) active.push_back(k);

    Precoder pre;
    pre.mask = build_mask_from_set(n, active);
    pre.rank_r = r;
    pre.us_r = get_mat(f, n, r);
    pre.v_r = get_mat(f, n, r);
    pre.p = get_mat(f, n, n);
    if (!f) throw ConfigError("load_precoder: truncated file " + path);
    pre.sigma_r = RVec(r);
    for (int j = 0; j < r; ++j) pre.sigma_r(j) = pre.us_r.col(j).norm();
    // w is not stored; rebuild from P when needed: w = F^H * P.
    pre.w = dft_matrix(n) * pre.p.cast<cplx>();
    return pre;
}

}  // namespace ucp
