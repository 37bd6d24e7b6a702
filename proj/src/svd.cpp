#include "ucp/svd.hpp"

#include <Eigen/SVD>

namespace ucp {

SvdFactors svd(const CMat& a) {
    if (!a.allFinite()) throw NumericalError("svd: input has non-finite entries");
    Eigen::JacobiSVD<CMat> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

CMat project_unitary(const CMat& a) {
    if (a.rows() != a.cols())
        throw SizeError("project_unitary: matrix must be square");
    SvdFactors f = svd(a);
    const double smax = f.sigma.size() ? f.sigma(0) : 0.0;
    int deficient = 0;
    for (int i = 0; i < f.sigma.size(); ++i)
        if (f.sigma(i) <= 1e-12 * smax) ++deficient;
    if (smax == 0.0 || deficient > 0)
        throw SingularityError("project_unitary: input is rank-deficient (" +
                               std::to_string(deficient) + " singular values below cutoff)");
    return f.u * f.v.adjoint();
}

}  // namespace ucp
