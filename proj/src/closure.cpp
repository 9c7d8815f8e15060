#include "dclosure/closure.hpp"

#include <queue>
#include <sstream>
#include <thread>
#include <utility>

namespace dclosure {

unsigned Threads::resolved() const {
    if (count != 0) return count;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

const char* to_string(StopReason r) noexcept {
    switch (r) {
        case StopReason::fixed_point: return "fixed_point";
        case StopReason::epsilon: return "epsilon";
        case StopReason::cutoff: return "cutoff";
    }
    return "unknown";
}

const char* to_string(PowerScheme s) noexcept {
    return s == PowerScheme::left_fold ? "left-fold" : "power-of-two";
}

PowerSequence<DistanceGraph> diffusion_power(const DistanceGraph& d, long n, PowerScheme scheme, Threads threads) {
    return graph_powers(d, HarmonicPlus{}, n, scheme, threads);
}

double edge_density(const DistanceGraph& d) {
    const auto n = d.size();
    if (n < 2) return 0.0;
    long finite = 0;
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            if (i != j && std::isfinite(d(i, j))) ++finite;
    return double(finite) / double(n * (n - 1));
}

namespace {

struct Arc {
    Eigen::Index to;
    double weight;
};

// Single-source Dijkstra ordered by (distance, hop count) so that among
// equally short paths the one with fewest edges is kept.
void dijkstra_row(const std::vector<std::vector<Arc>>& adj, Eigen::Index source, MatrixXd& dist, std::vector<int>& hops_row) {
    const auto n = static_cast<Eigen::Index>(adj.size());
    using Key = std::pair<double, int>;
    using Item = std::pair<Key, Eigen::Index>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    std::vector<Key> best(n, Key{std::numeric_limits<double>::infinity(), 0});
    std::vector<char> done(n, 0);
    best[source] = {0.0, 0};
    heap.push({best[source], source});
    while (!heap.empty()) {
        const auto [key, u] = heap.top();
        heap.pop();
        if (done[u]) continue;
        done[u] = 1;
        for (const Arc& a : adj[u]) {
            const Key cand{key.first + a.weight, key.second + 1};
            if (cand < best[a.to]) {
                best[a.to] = cand;
                heap.push({cand, a.to});
            }
        }
    }
    for (Eigen::Index v = 0; v < n; ++v) {
        dist(source, v) = best[v].first;
        hops_row[v] = std::isfinite(best[v].first) ? best[v].second : 0;
    }
}

detail::LoopResult dijkstra_apsp(const MatrixXd& w, Threads threads) {
    const auto n = w.rows();
    std::vector<std::vector<Arc>> adj(n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j && std::isfinite(w(i, j))) adj[i].push_back({j, w(i, j)});

    detail::LoopResult out;
    out.closed = MatrixXd(n, n);
    std::vector<std::vector<int>> hops(n, std::vector<int>(n, 0));
    detail::parallel_rows(n, threads, [&](Eigen::Index s) { dijkstra_row(adj, s, out.closed, hops[s]); });
    int max_hops = 1;
    for (const auto& row : hops)
        for (int h : row) max_hops = std::max(max_hops, h);
    out.kappa = max_hops;
    out.converged = true;
    out.stop = StopReason::fixed_point;
    return out;
}

std::string lambda_method(double lambda) {
    std::ostringstream os;
    os.precision(12);
    os << "dombi:" << lambda;
    return os.str();
}

}  // namespace

ClosureReport<DistanceGraph> metric_closure(const DistanceGraph& d, ApspBackend backend, const ClosureOptions& opts) {
    if (backend == ApspBackend::automatic)
        backend = edge_density(d) < 0.10 ? ApspBackend::dijkstra : ApspBackend::min_plus;
    detail::LoopResult r;
    if (backend == ApspBackend::dijkstra) {
        r = dijkstra_apsp(d.weights(), opts.threads);
    } else {
        ClosureOptions o = opts;
        // A shortest path never needs more than n-1 edges, plus one pass to confirm.
        o.max_iter = std::max<int>(o.max_iter, int(d.size()));
        r = detail::power_union_loop(d.weights(), MinPlus{}, o);
    }
    return detail::make_report(d, std::move(r), MinPlus::name(), opts);
}

ClosureReport<DistanceGraph> ultrametric_closure(const DistanceGraph& d, const ClosureOptions& opts) {
    ClosureOptions o = opts;
    o.max_iter = std::max<int>(o.max_iter, int(d.size()));
    return detail::make_report(d, detail::power_union_loop(d.weights(), MinMax{}, o), MinMax::name(), opts);
}

ClosureReport<ProximityGraph> generalized_metric_closure(const ProximityGraph& p, double lambda,
                                                         const ClosureOptions& opts) {
    const IsomorphismMap iso(GeneratorMap::dombi(lambda));
    const auto dist = metric_closure(to_distance(p, iso), ApspBackend::automatic, opts);
    ClosureReport<ProximityGraph> rep;
    rep.closed = to_proximity(dist.closed, iso);
    rep.kappa = dist.kappa;
    rep.converged = dist.converged;
    rep.stop = dist.stop;
    rep.distortion = distortion(p, rep.closed);
    rep.method = lambda_method(lambda);
    rep.iterations_log = dist.iterations_log;
    return rep;
}

}  // namespace dclosure
