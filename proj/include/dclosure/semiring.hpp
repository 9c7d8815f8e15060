#pragma once

/**
 * @file semiring.hpp
 * @brief Operator-pair policies consumed by compose() and the closures.
 *
 * A policy exposes
 *   - `space`                  : the weight space it operates on
 *   - `is_dioid`               : finite-convergence flag
 *   - `extend(a, b)`           : path extension (g, or the conjunction)
 *   - `combine(a, b)`          : alternative-path aggregation (f, or the disjunction)
 *   - `accumulator<Scalar>()`  : a k-fold of combine, seeded with combine's identity
 *   - `name()`
 *
 * The fixed kernels below are templated on scalar so the same code runs on
 * double and on exact rationals. RuntimeUnitOps / RuntimeDistanceOps adapt
 * the std::function pairs from algebra.hpp.
 */

#include "dclosure/algebra.hpp"
#include "dclosure/core.hpp"

#include <algorithm>
#include <string>

namespace dclosure {

// Accumulators ---------------------------------------------------------------

template <typename Scalar>
struct MinAccumulator {
    Scalar best = infinity<Scalar>();
    // Returns true once the result cannot change (absorbing element reached).
    bool add(const Scalar& x) {
        if (x < best) best = x;
        return best == Scalar(0);
    }
    Scalar value() const { return best; }
};

template <typename Scalar>
struct MaxAccumulator {
    Scalar best = Scalar(0);
    bool add(const Scalar& x) {
        if (x > best) best = x;
        return best == Scalar(1);
    }
    Scalar value() const { return best; }
};

/// k-fold of f(x,y) = xy/(x+y): 1 / sum(1/x), infinite terms skipped, a zero
/// term short-circuits to 0. Reciprocals are summed with Neumaier compensation.
template <typename Scalar>
struct HarmonicAccumulator {
    Scalar sum = Scalar(0);
    Scalar compensation = Scalar(0);
    bool zero = false;

    bool add(const Scalar& x) {
        if (zero || is_inf(x)) return zero;
        if (x == Scalar(0)) {
            zero = true;
            return true;
        }
        const Scalar term = Scalar(1) / x;
        const Scalar t = sum + term;
        using std::abs;
        if (abs(sum) >= abs(term))
            compensation += (sum - t) + term;
        else
            compensation += (term - t) + sum;
        sum = t;
        return false;
    }

    Scalar value() const {
        if (zero) return Scalar(0);
        const Scalar total = sum + compensation;
        if (total == Scalar(0)) return infinity<Scalar>();
        return Scalar(1) / total;
    }
};

/// Left fold of an arbitrary binary combine, seeded with its identity.
template <typename Scalar, typename Combine>
struct FoldAccumulator {
    Scalar acc;
    const Combine* combine;
    bool add(const Scalar& x) {
        acc = (*combine)(acc, x);
        return false;
    }
    Scalar value() const { return acc; }
};

// Distance-space kernels -----------------------------------------------------

/// <min, +>: shortest paths, the metric closure.
struct MinPlus {
    static constexpr Space space = Space::distance;
    static constexpr bool is_dioid = true;
    static std::string name() { return "metric"; }

    template <typename Scalar>
    static Scalar extend(const Scalar& a, const Scalar& b) {
        return a + b;
    }
    template <typename Scalar>
    static Scalar combine(const Scalar& a, const Scalar& b) {
        return a < b ? a : b;
    }
    template <typename Scalar>
    static MinAccumulator<Scalar> accumulator() {
        return {};
    }
};

/// <min, max>: weakest-link paths, the ultra-metric closure.
struct MinMax {
    static constexpr Space space = Space::distance;
    static constexpr bool is_dioid = true;
    static std::string name() { return "ultrametric"; }

    template <typename Scalar>
    static Scalar extend(const Scalar& a, const Scalar& b) {
        return a < b ? b : a;
    }
    template <typename Scalar>
    static Scalar combine(const Scalar& a, const Scalar& b) {
        return a < b ? a : b;
    }
    template <typename Scalar>
    static MinAccumulator<Scalar> accumulator() {
        return {};
    }
};

/// <xy/(x+y), +>: the diffusion pair. Not a dioid.
struct HarmonicPlus {
    static constexpr Space space = Space::distance;
    static constexpr bool is_dioid = false;
    static std::string name() { return "diffusion"; }

    template <typename Scalar>
    static Scalar extend(const Scalar& a, const Scalar& b) {
        return a + b;
    }
    template <typename Scalar>
    static Scalar combine(const Scalar& a, const Scalar& b) {
        HarmonicAccumulator<Scalar> acc;
        acc.add(a);
        acc.add(b);
        return acc.value();
    }
    template <typename Scalar>
    static HarmonicAccumulator<Scalar> accumulator() {
        return {};
    }
};

// Proximity-space kernels ----------------------------------------------------

/// <max, min>.
struct MaxMin {
    static constexpr Space space = Space::proximity;
    static constexpr bool is_dioid = true;
    static std::string name() { return "max-min"; }

    template <typename Scalar>
    static Scalar extend(const Scalar& a, const Scalar& b) {
        return a < b ? a : b;
    }
    template <typename Scalar>
    static Scalar combine(const Scalar& a, const Scalar& b) {
        return a < b ? b : a;
    }
    template <typename Scalar>
    static MaxAccumulator<Scalar> accumulator() {
        return {};
    }
};

/// <max, DT^l_and>. lambda = 1 is isomorphic to <min, +> under 1/x - 1.
struct MaxDombi {
    static constexpr Space space = Space::proximity;
    static constexpr bool is_dioid = true;
    DombiParams params{1.0};

    std::string name() const { return UnitOperatorPair::max_dombi(params.lambda()).name; }

    template <typename Scalar>
    Scalar extend(const Scalar& a, const Scalar& b) const {
        return dombi_tnorm(a, b, params);
    }
    template <typename Scalar>
    static Scalar combine(const Scalar& a, const Scalar& b) {
        return a < b ? b : a;
    }
    template <typename Scalar>
    static MaxAccumulator<Scalar> accumulator() {
        return {};
    }
};

/// <DT^l_or, DT^l_and>. lambda = 1 is isomorphic to the diffusion pair.
struct DombiDual {
    static constexpr Space space = Space::proximity;
    static constexpr bool is_dioid = false;
    DombiParams params{1.0};

    std::string name() const { return UnitOperatorPair::dombi_dual(params.lambda()).name; }

    template <typename Scalar>
    Scalar extend(const Scalar& a, const Scalar& b) const {
        return dombi_tnorm(a, b, params);
    }
    template <typename Scalar>
    Scalar combine(const Scalar& a, const Scalar& b) const {
        return dombi_tconorm(a, b, params);
    }
    template <typename Scalar>
    auto accumulator() const {
        return FoldAccumulator<Scalar, DombiDual>{Scalar(0), this};
    }
    template <typename Scalar>
    Scalar operator()(const Scalar& a, const Scalar& b) const {
        return combine(a, b);
    }
};

// Runtime adapters -----------------------------------------------------------

struct RuntimeUnitOps {
    static constexpr Space space = Space::proximity;
    const UnitOperatorPair* pair;

    bool dioid() const { return pair->is_dioid; }
    std::string name() const { return pair->name; }
    double extend(double a, double b) const { return pair->conjunction(a, b); }
    double combine(double a, double b) const { return pair->disjunction(a, b); }
    double operator()(double a, double b) const { return combine(a, b); }
    template <typename Scalar>
    auto accumulator() const {
        return FoldAccumulator<double, RuntimeUnitOps>{0.0, this};
    }
};

struct RuntimeDistanceOps {
    static constexpr Space space = Space::distance;
    const ExtendedOperatorPair* pair;

    bool dioid() const { return pair->is_dioid; }
    std::string name() const { return pair->name; }
    double extend(double a, double b) const { return pair->g(a, b); }
    double combine(double a, double b) const { return pair->f(a, b); }
    double operator()(double a, double b) const { return combine(a, b); }
    template <typename Scalar>
    auto accumulator() const {
        return FoldAccumulator<double, RuntimeDistanceOps>{std::numeric_limits<double>::infinity(), this};
    }
};

/// is_dioid for both static-flag kernels and runtime adapters.
template <typename Ops>
bool ops_is_dioid(const Ops& ops) {
    if constexpr (requires { ops.dioid(); })
        return ops.dioid();
    else
        return Ops::is_dioid;
}

}  // namespace dclosure
