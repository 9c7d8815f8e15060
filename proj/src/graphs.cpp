#include "dclosure/graphs.hpp"

#include <cmath>

namespace dclosure {

DistanceGraph to_distance(const ProximityGraph& p, const IsomorphismMap& iso) {
    return DistanceGraph::trusted(iso.forward(p.weights()), p.labels(), p.directed());
}

ProximityGraph to_proximity(const DistanceGraph& d, const IsomorphismMap& iso) {
    return ProximityGraph::trusted(iso.inverse(d.weights()), d.labels(), d.directed());
}

ProximityGraph from_correlation(const MatrixXd& series, std::vector<std::string> labels, CorrelationMode mode) {
    const Eigen::Index t = series.rows();
    const Eigen::Index n = series.cols();
    if (t < 2) throw InputError("correlation needs at least 2 observations per series");
    if (static_cast<Eigen::Index>(labels.size()) != n)
        throw InputError("correlation: " + std::to_string(n) + " series but " + std::to_string(labels.size()) +
                         " labels");
    if (series.hasNaN()) throw InputError("correlation: time series contain NaN");

    const MatrixXd centered = series.rowwise() - series.colwise().mean();
    const Eigen::VectorXd norms = centered.colwise().norm();
    for (Eigen::Index j = 0; j < n; ++j)
        if (norms(j) == 0.0) throw InputError("correlation undefined for constant series '" + labels[j] + "'");

    MatrixXd p = MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double r = centered.col(i).dot(centered.col(j)) / (norms(i) * norms(j));
            r = std::clamp(r, -1.0, 1.0);
            const double w = mode == CorrelationMode::clamp ? std::max(r, 0.0) : std::abs(r);
            p(i, j) = p(j, i) = w;
        }
    }
    return ProximityGraph(std::move(p), std::move(labels), false);
}

}  // namespace dclosure
