#include "dclosure/analysis.hpp"

#include <algorithm>

namespace dclosure {

SemiMetricReport semimetric_edges(const DistanceGraph& d) {
    return semimetric_edges(d, metric_closure(d).closed);
}

SemiMetricReport semimetric_edges(const DistanceGraph& d, const DistanceGraph& metric_closed) {
    if (d.size() != metric_closed.size()) throw std::invalid_argument("semimetric_edges: size mismatch");
    SemiMetricReport rep;
    rep.labels = d.labels();
    const auto n = d.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = d.directed() ? 0 : i + 1; j < n; ++j) {
            if (i == j) continue;
            const double direct = d(i, j);
            const double shortest = metric_closed(i, j);
            if (std::isinf(direct)) {
                if (std::isfinite(shortest)) rep.indirect_only.push_back({i, j, shortest});
                continue;
            }
            ++rep.finite_edges;
            if (direct > shortest && !approx_equal(direct, shortest))
                rep.edges.push_back({i, j, direct, shortest, direct / shortest});
        }
    }
    std::stable_sort(rep.edges.begin(), rep.edges.end(),
                     [](const SemiMetricEdge& a, const SemiMetricEdge& b) { return a.ratio > b.ratio; });
    return rep;
}

}  // namespace dclosure
