#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ucp {

using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using cplx = std::complex<double>;

// Error categories; the CLI maps ConfigError to exit code 2, the rest to 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularityError : NumericalError {
    using NumericalError::NumericalError;
};

// Scalar-operation telemetry. Counting rules: one fused multiply-accumulate
// counts as one op; a radix-2 FFT of size N counts as N*log2(N) ops.
struct OpCounter {
    std::uint64_t multiplies = 0;
    std::uint64_t additions = 0;
    void reset() { multiplies = additions = 0; }
    std::uint64_t total() const { return multiplies + additions; }
};

// splitmix64, used to derive independent child seeds from (seed, stream ids).
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    return mix_seed(mix_seed(mix_seed(seed ^ mix_seed(a)) ^ mix_seed(b)) ^ mix_seed(c));
}

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline int ilog2(int n) {
    int b = 0;
    while ((1 << b) < n) ++b;
    return b;
}

}  // namespace ucp
