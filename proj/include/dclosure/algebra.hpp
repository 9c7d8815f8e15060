#pragma once

/**
 * @file algebra.hpp
 * @brief T-norm/T-conorm pairs on [0,1], their distance-space conjugates,
 *        the Dombi parametric family and its generator, and sampled
 *        axiom checks (De Morgan duality, deviation integral).
 */

#include "dclosure/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace dclosure {

/// Dombi family parameter, strictly positive and finite.
class DombiParams {
public:
    explicit DombiParams(double lambda) : lambda_(lambda) {
        if (!(lambda > 0.0) || !std::isfinite(lambda))
            throw std::domain_error("Dombi lambda must be a positive finite real, got " +
                                    std::to_string(lambda));
    }
    double lambda() const noexcept { return lambda_; }

private:
    double lambda_;
};

namespace detail {

template <typename Scalar>
void require_unit(const Scalar& a, const char* what) {
    if (!(a >= Scalar(0) && a <= Scalar(1)))
        throw std::domain_error(std::string(what) + ": argument outside [0,1]");
}

}  // namespace detail

/**
 * Dombi conjunction
 *   1 / (1 + [ (1/a - 1)^l + (1/b - 1)^l ]^(1/l)).
 * Endpoints use the T-norm boundary axioms. The bracket is factored around
 * its largest term so large l does not overflow.
 */
template <typename Scalar>
Scalar dombi_tnorm(Scalar a, Scalar b, DombiParams p) {
    using std::pow;
    detail::require_unit(a, "dombi_tnorm");
    detail::require_unit(b, "dombi_tnorm");
    if (a == Scalar(0) || b == Scalar(0)) return Scalar(0);
    if (a == Scalar(1)) return b;
    if (b == Scalar(1)) return a;
    const Scalar lambda(p.lambda());
    const Scalar u = Scalar(1) / a - Scalar(1);
    const Scalar v = Scalar(1) / b - Scalar(1);
    const Scalar hi = u > v ? u : v;
    const Scalar lo = u > v ? v : u;
    const Scalar s = hi * pow(Scalar(1) + pow(lo / hi, lambda), Scalar(1) / lambda);
    return Scalar(1) / (Scalar(1) + s);
}

/// Dombi disjunction 1 / (1 + [ (1/a - 1)^-l + (1/b - 1)^-l ]^(-1/l)).
template <typename Scalar>
Scalar dombi_tconorm(Scalar a, Scalar b, DombiParams p) {
    using std::pow;
    detail::require_unit(a, "dombi_tconorm");
    detail::require_unit(b, "dombi_tconorm");
    if (a == Scalar(0)) return b;
    if (b == Scalar(0)) return a;
    if (a == Scalar(1) || b == Scalar(1)) return Scalar(1);
    const Scalar lambda(p.lambda());
    const Scalar u = Scalar(1) / a - Scalar(1);
    const Scalar v = Scalar(1) / b - Scalar(1);
    const Scalar hi = u > v ? u : v;
    const Scalar lo = u > v ? v : u;
    const Scalar t = lo * pow(Scalar(1) + pow(lo / hi, lambda), Scalar(-1) / lambda);
    return Scalar(1) / (Scalar(1) + t);
}

/**
 * Strictly decreasing bijection phi: [0,1] -> [0,+inf] with phi(1) = 0 and
 * phi(0) = +inf, together with its inverse. Converts proximity to distance
 * and doubles as the additive generator of the Archimedean T-norm whose
 * closure it conjugates to (min,+).
 */
class GeneratorMap {
public:
    using UnaryOp = std::function<double(double)>;

    /// phi(x) = ((1 - x) / x)^lambda, inverse 1 / (1 + d^(1/lambda)).
    static GeneratorMap dombi(double lambda);

    /// The canonical map phi(x) = 1/x - 1 (Dombi, lambda = 1).
    static GeneratorMap standard() { return dombi(1.0); }

    /// A user-supplied generator. Boundary values, monotonicity and the
    /// inverse identity are checked on a sample grid; throws InputError.
    static GeneratorMap custom(std::string descriptor, UnaryOp forward, UnaryOp inverse);

    double operator()(double proximity) const { return forward_(proximity); }
    double forward(double proximity) const { return forward_(proximity); }
    double inverse(double distance) const { return inverse_(distance); }

    const std::string& descriptor() const noexcept { return descriptor_; }
    std::optional<double> dombi_lambda() const noexcept { return dombi_lambda_; }

private:
    GeneratorMap(std::string descriptor, UnaryOp forward, UnaryOp inverse,
                 std::optional<double> lambda)
        : descriptor_(std::move(descriptor)),
          forward_(std::move(forward)),
          inverse_(std::move(inverse)),
          dombi_lambda_(lambda) {}

    std::string descriptor_;
    UnaryOp forward_;
    UnaryOp inverse_;
    std::optional<double> dombi_lambda_;
};

/// <disjunction, conjunction> on [0,1]. is_dioid marks pairs whose
/// transitive closure is reached after finitely many compositions.
struct UnitOperatorPair {
    using BinaryOp = std::function<double(double, double)>;

    std::string name;
    BinaryOp disjunction;
    BinaryOp conjunction;
    bool is_dioid = false;

    static UnitOperatorPair max_min();
    /// <max, DT^l_and>: the generalized metric closure pair.
    static UnitOperatorPair max_dombi(double lambda);
    /// <DT^l_or, DT^l_and>: dual for every l; l = 1 is the diffusion pair.
    static UnitOperatorPair dombi_dual(double lambda);
    /// <DT^l_or, DT^1_and>, the family swept by the De Morgan deviation.
    static UnitOperatorPair dombi_or_with_standard_and(double lambda_or);
};

/// <f, g> on [0,+inf]: f aggregates alternative paths, g extends a path.
struct ExtendedOperatorPair {
    using BinaryOp = std::function<double(double, double)>;

    std::string name;
    BinaryOp f;
    BinaryOp g;
    bool is_dioid = false;

    static ExtendedOperatorPair min_plus();
    static ExtendedOperatorPair min_max();
    /// f(x,y) = xy/(x+y), g = +.
    static ExtendedOperatorPair harmonic_plus();
};

/// Harmonic TD-conorm xy/(x+y) with f(x,inf) = x and f(0,y) = 0.
inline double harmonic_combine(double x, double y) {
    if (std::isinf(x)) return y;
    if (std::isinf(y)) return x;
    if (x == 0.0 || y == 0.0) return 0.0;
    return 1.0 / (1.0 / x + 1.0 / y);
}

/// Conjugates <or, and> through phi: f = phi(phi^-1(x) or phi^-1(y)),
/// g = phi(phi^-1(x) and phi^-1(y)).
ExtendedOperatorPair derive_distance_pair(const UnitOperatorPair& pair, const GeneratorMap& iso);

/// Outcome of a sampled De Morgan check.
struct DualityCheck {
    bool holds = false;
    double max_error = 0.0;
    double witness_a = 0.0;  // grid point with the largest error
    double witness_b = 0.0;
};

/**
 * Checks both De Morgan laws
 *   c(a or b) = c(a) and c(b),   c(a and b) = c(a) or c(b)
 * on a samples x samples grid over [0,1] (endpoints included) with
 * tolerance 1e-9. Throws std::invalid_argument if the complement is not
 * involutive on the grid.
 */
DualityCheck check_duality(const UnitOperatorPair& pair, const std::function<double(double)>& complement,
                           int samples = 101);

/// Quadrature configuration for the deviation integral.
struct QuadratureSpec {
    enum class Kind { adaptive, fixed_grid };
    Kind kind = Kind::adaptive;
    double tolerance = 1e-9;  // adaptive: absolute/relative target
    int grid_points = 64;     // fixed grid: Gauss-Legendre nodes per axis per half
};

/**
 * Total De Morgan deviation of <DT^l_or, DT^1_and> under c(x) = 1 - x:
 *   F(l) = integral over [0,1]^2 of | -xy [(1/x-1)^l + (1/y-1)^l]^(1/l) + x + y - 2xy |.
 * The integrand has one sign for a given l (<= 0 below 1, >= 0 above), so
 * this equals the magnitude of the signed integral. Throws NumericError
 * when the integrand overflows (l -> 0).
 */
double demorgan_deviation(double lambda, const QuadratureSpec& spec = {});

/// The signed integrand of demorgan_deviation, exposed for testing.
double demorgan_integrand(double x, double y, double lambda);

}  // namespace dclosure
