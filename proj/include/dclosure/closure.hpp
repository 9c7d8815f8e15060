#pragma once

/**
 * @file closure.hpp
 * @brief Graph powers and transitive/distance closures under an operator pair.
 *
 * Powers use the left fold G^n = G^(n-1) o G. For non-distributive pairs
 * such as the diffusion pair the orientation matters, and this is the one
 * whose entries read d^3_ij = f_k(d^2_ik + d_kj).
 */

#include "dclosure/compose.hpp"
#include "dclosure/graphs.hpp"
#include "dclosure/measures.hpp"
#include "dclosure/semiring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dclosure {

enum class StopReason {
    fixed_point,  // an iteration changed nothing
    epsilon,      // max entry change fell below epsilon (non-dioid pairs)
    cutoff        // max_iter exhausted
};

const char* to_string(StopReason r) noexcept;

struct ClosureOptions {
    int max_iter = 0;        // 0 -> 10 * n
    double epsilon = -1.0;   // < 0 -> 1e-9 for dioid pairs, 1e-6 otherwise
    Threads threads{};
    /// Map used to express distance-space results in proximity space when
    /// computing distortion. Defaults to 1/x - 1.
    std::optional<GeneratorMap> generator{};

    int resolved_max_iter(Eigen::Index n) const { return max_iter > 0 ? max_iter : int(std::max<Eigen::Index>(10 * n, 1)); }
    double resolved_epsilon(bool dioid) const { return epsilon >= 0.0 ? epsilon : (dioid ? 1e-9 : 1e-6); }
};

template <typename Graph>
struct ClosureReport {
    Graph closed;
    int kappa = 0;
    bool converged = false;
    StopReason stop = StopReason::cutoff;
    double distortion = 0.0;
    std::string method;
    std::vector<double> iterations_log;  // max |entry change| per iteration
};

enum class PowerScheme { left_fold, power_of_two };

const char* to_string(PowerScheme s) noexcept;

template <typename Graph>
struct PowerSequence {
    std::vector<Graph> powers;
    std::vector<long> exponents;  // exponents[i] is the power held in powers[i]
    PowerScheme scheme = PowerScheme::left_fold;
};

namespace detail {

struct LoopResult {
    MatrixXd closed;
    int kappa = 0;
    bool converged = false;
    StopReason stop = StopReason::cutoff;
    std::vector<double> log;
};

// Dioid pairs stop only on an exact fixed point: they are guaranteed to reach
// one, and an early epsilon stop would truncate genuine improvements.
// Non-dioid pairs stop on the epsilon criterion.
inline bool check_stop(double delta, bool dioid, double eps, StopReason& why) {
    if (delta == 0.0) {
        why = StopReason::fixed_point;
        return true;
    }
    if (!dioid && delta < eps) {
        why = StopReason::epsilon;
        return true;
    }
    return false;
}

/// Repeated squaring with union: R' = R u (R o R).
template <typename Ops>
LoopResult squaring_loop(const MatrixXd& start, const Ops& ops, const ClosureOptions& opts) {
    const bool dioid = ops_is_dioid(ops);
    const int max_iter = opts.resolved_max_iter(start.rows());
    const double eps = opts.resolved_epsilon(dioid);
    LoopResult out{start, 0, false, StopReason::cutoff, {}};
    for (int it = 1; it <= max_iter; ++it) {
        MatrixXd next = combine_entrywise(out.closed, compose(out.closed, out.closed, ops, opts.threads), ops);
        const double delta = max_abs_delta(next, out.closed);
        out.log.push_back(delta);
        out.closed = std::move(next);
        out.kappa = it;
        if (check_stop(delta, dioid, eps, out.stop)) {
            out.converged = true;
            break;
        }
    }
    return out;
}

/// Union of successive powers: acc = R u R^2 u ... with R^(p+1) = R^p o R.
/// kappa is the number of compositions performed; at a fixed point it equals
/// the highest power that contributed.
template <typename Ops>
LoopResult power_union_loop(const MatrixXd& start, const Ops& ops, const ClosureOptions& opts) {
    const bool dioid = ops_is_dioid(ops);
    const int max_iter = opts.resolved_max_iter(start.rows());
    const double eps = opts.resolved_epsilon(dioid);
    LoopResult out{start, 0, false, StopReason::cutoff, {}};
    MatrixXd power = start;
    for (int it = 1; it <= max_iter; ++it) {
        power = compose(power, start, ops, opts.threads);
        MatrixXd next = combine_entrywise(out.closed, power, ops);
        const double delta = max_abs_delta(next, out.closed);
        out.log.push_back(delta);
        out.closed = std::move(next);
        out.kappa = it;
        if (check_stop(delta, dioid, eps, out.stop)) {
            out.converged = true;
            break;
        }
    }
    return out;
}

template <Space S>
double report_distortion(const WeightedGraph<S>& original, const MatrixXd& closed, const ClosureOptions& opts) {
    if constexpr (S == Space::proximity) {
        return distortion(original, ProximityGraph::trusted(closed, original.labels(), original.directed()));
    } else {
        const IsomorphismMap iso(opts.generator.value_or(GeneratorMap::standard()));
        return distortion(ProximityGraph::trusted(iso.inverse(original.weights()), original.labels(), original.directed()),
                          ProximityGraph::trusted(iso.inverse(closed), original.labels(), original.directed()));
    }
}

template <Space S>
bool result_directed(const WeightedGraph<S>& g, const MatrixXd& m) {
    if (g.directed()) return true;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < m.cols(); ++j)
            if (!(m(i, j) == m(j, i))) return true;
    return false;
}

template <Space S>
ClosureReport<WeightedGraph<S>> make_report(const WeightedGraph<S>& g, LoopResult r, std::string method,
                                            const ClosureOptions& opts) {
    ClosureReport<WeightedGraph<S>> rep;
    rep.distortion = report_distortion(g, r.closed, opts);
    const bool directed = result_directed(g, r.closed);
    rep.closed = WeightedGraph<S>::trusted(std::move(r.closed), g.labels(), directed);
    rep.kappa = r.kappa;
    rep.converged = r.converged;
    rep.stop = r.stop;
    rep.method = std::move(method);
    rep.iterations_log = std::move(r.log);
    return rep;
}

template <typename Ops, Space S>
void require_space() {
    static_assert(Ops::space == S, "operator pair does not match the graph's weight space");
}

}  // namespace detail

/// Composition of two graphs in the same space. Throws std::invalid_argument
/// on a size mismatch.
template <typename Ops, Space S>
WeightedGraph<S> compose(const WeightedGraph<S>& a, const WeightedGraph<S>& b, const Ops& ops, Threads threads = {}) {
    detail::require_space<Ops, S>();
    MatrixXd c = compose(a.weights(), b.weights(), ops, threads);
    const bool directed = a.directed() || b.directed() || detail::result_directed(a, c);
    return WeightedGraph<S>::trusted(std::move(c), a.labels(), directed);
}

/// Squaring closure: iterate R' = R u (R o R) to a fixed point.
template <typename Ops, Space S>
ClosureReport<WeightedGraph<S>> transitive_closure_alg1(const WeightedGraph<S>& g, const Ops& ops,
                                                        const ClosureOptions& opts = {}) {
    detail::require_space<Ops, S>();
    return detail::make_report(g, detail::squaring_loop(g.weights(), ops, opts), ops.name(), opts);
}

/// Power-union closure: accumulate successive powers until the union stops changing.
template <typename Ops, Space S>
ClosureReport<WeightedGraph<S>> transitive_closure_alg2(const WeightedGraph<S>& g, const Ops& ops,
                                                        const ClosureOptions& opts = {}) {
    detail::require_space<Ops, S>();
    return detail::make_report(g, detail::power_union_loop(g.weights(), ops, opts), ops.name(), opts);
}

/// Distance closure: the union of D^n under the pair's f. For f = min this is
/// exact after at most n-1 powers. For the harmonic f the accumulation only
/// approaches 0 and stops on epsilon; treat that mode as experimental.
template <typename Ops>
ClosureReport<DistanceGraph> distance_closure(const DistanceGraph& d, const Ops& ops, const ClosureOptions& opts = {}) {
    return transitive_closure_alg2(d, ops, opts);
}

/// G^1..G^n (left fold) or G^(2^eta) for every 2^eta <= n (power of two).
template <typename Ops, Space S>
PowerSequence<WeightedGraph<S>> graph_powers(const WeightedGraph<S>& g, const Ops& ops, long n, PowerScheme scheme,
                                             Threads threads = {}) {
    detail::require_space<Ops, S>();
    if (n < 1) throw std::invalid_argument("graph_powers: n must be >= 1");
    PowerSequence<WeightedGraph<S>> seq;
    seq.scheme = scheme;
    seq.powers.push_back(g);
    seq.exponents.push_back(1);
    if (scheme == PowerScheme::left_fold) {
        for (long k = 2; k <= n; ++k) {
            seq.powers.push_back(compose(seq.powers.back(), g, ops, threads));
            seq.exponents.push_back(k);
        }
    } else {
        for (long k = 2; k <= n; k *= 2) {
            const auto& half = seq.powers.back();
            seq.powers.push_back(compose(half, half, ops, threads));
            seq.exponents.push_back(k);
        }
    }
    return seq;
}

/// n-diffusion: powers of D under <xy/(x+y), +>.
PowerSequence<DistanceGraph> diffusion_power(const DistanceGraph& d, long n, PowerScheme scheme = PowerScheme::left_fold,
                                             Threads threads = {});

enum class ApspBackend {
    automatic,  // Dijkstra below 10% edge density, min-plus powering otherwise
    dijkstra,
    min_plus
};

/// All-pairs shortest paths under <min, +>. kappa is the largest number of
/// edges needed by a shortest path (at least 1) for both backends.
ClosureReport<DistanceGraph> metric_closure(const DistanceGraph& d, ApspBackend backend = ApspBackend::automatic,
                                            const ClosureOptions& opts = {});

/// Minimax paths under <min, max>.
ClosureReport<DistanceGraph> ultrametric_closure(const DistanceGraph& d, const ClosureOptions& opts = {});

/// Closure of P under <max, DT^l_and>, computed by mapping through the Dombi
/// generator, running the metric closure and mapping back.
ClosureReport<ProximityGraph> generalized_metric_closure(const ProximityGraph& p, double lambda,
                                                         const ClosureOptions& opts = {});

/// Fraction of finite off-diagonal entries.
double edge_density(const DistanceGraph& d);

}  // namespace dclosure
