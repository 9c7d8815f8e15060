#pragma once

/**
 * @file core.hpp
 * @brief Shared vocabulary: dense matrix aliases, the two weight spaces,
 *        extended-real helpers, tolerances and the error hierarchy.
 */

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace dclosure {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using MatrixXd = Matrix<double>;

/// Which weight space a graph or operator pair lives in.
/// Proximity weights are in [0,1] (1 = identical); distance weights are in
/// [0,+inf] (0 = identical, +inf = no edge).
enum class Space { proximity, distance };

constexpr const char* to_string(Space s) noexcept {
    return s == Space::proximity ? "proximity" : "distance";
}

// 64-bit policy: absolute 1e-9, relative 1e-9 once magnitudes exceed 1.
inline constexpr double kAbsTol = 1e-9;
inline constexpr double kRelTol = 1e-9;

template <typename Scalar>
constexpr bool has_infinity() {
    return std::numeric_limits<Scalar>::has_infinity;
}

template <typename Scalar>
Scalar infinity() {
    if constexpr (has_infinity<Scalar>()) {
        return std::numeric_limits<Scalar>::infinity();
    } else {
        throw std::domain_error("scalar type has no representation of +inf");
    }
}

template <typename Scalar>
bool is_inf(const Scalar& x) {
    if constexpr (has_infinity<Scalar>()) {
        using std::isinf;
        return isinf(x);
    } else {
        return false;
    }
}

/// Equality under the project tolerance policy; equal infinities compare equal.
inline bool approx_equal(double a, double b, double abs_tol = kAbsTol, double rel_tol = kRelTol) {
    if (a == b) return true;
    if (std::isinf(a) || std::isinf(b) || std::isnan(a) || std::isnan(b)) return false;
    const double diff = std::abs(a - b);
    const double mag = std::max(std::abs(a), std::abs(b));
    return diff <= abs_tol || (mag > 1.0 && diff <= rel_tol * mag);
}

/// |a - b| with inf - inf treated as 0 (identical absent edges).
inline double extended_abs_diff(double a, double b) {
    if (a == b) return 0.0;
    return std::abs(a - b);
}

/// Largest entrywise |a - b|, matching infinities contributing 0.
template <typename DerivedA, typename DerivedB>
double max_abs_delta(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            worst = std::max(worst, extended_abs_diff(double(a(i, j)), double(b(i, j))));
    return worst;
}

/// Row-parallelism control. 0 means hardware concurrency.
struct Threads {
    unsigned count = 1;
    unsigned resolved() const;
};

// Error hierarchy. Every error carries the exit code the CLI reports for it.
class Error : public std::runtime_error {
public:
    Error(const std::string& what, int exit_code) : std::runtime_error(what), code_(exit_code) {}
    int exit_code() const noexcept { return code_; }

private:
    int code_;
};

/// Malformed input: bad file syntax, invariant violation, unknown method.
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what, 2) {}
};

/// A closure hit its iteration cutoff.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error(what, 3) {}
};

/// Quadrature/root-finding failure or overflow.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(what, 4) {}
};

}  // namespace dclosure
