#pragma once

/**
 * @file graphs.hpp
 * @brief Dense proximity/distance graphs and the isomorphism between them.
 */

#include "dclosure/algebra.hpp"
#include "dclosure/core.hpp"

#include <string>
#include <vector>

namespace dclosure {

/**
 * A labelled dense weighted graph in one of the two weight spaces.
 *
 * Proximity graphs hold p_ij in [0,1] with p_ii = 1; distance graphs hold
 * d_ij in [0,+inf] with d_ii = 0 and +inf marking an absent edge. Undirected
 * graphs are symmetric. Values are immutable after construction.
 */
template <Space S, typename Scalar = double>
class WeightedGraph {
public:
    static constexpr Space space = S;
    using scalar_type = Scalar;

    WeightedGraph() = default;

    /// Validates every invariant; throws InputError naming the offending entry.
    WeightedGraph(Matrix<Scalar> weights, std::vector<std::string> labels, bool directed)
        : weights_(std::move(weights)), labels_(std::move(labels)), directed_(directed) {
        validate();
    }

    /// Labels default to "0".."n-1"; directed iff the matrix is asymmetric.
    explicit WeightedGraph(Matrix<Scalar> weights)
        : weights_(std::move(weights)), labels_(default_labels(weights_.rows())) {
        directed_ = !is_symmetric();
        validate();
    }

    /// Builds without validation. For internal results whose invariants
    /// already follow from the construction.
    static WeightedGraph trusted(Matrix<Scalar> weights, std::vector<std::string> labels, bool directed) {
        WeightedGraph g;
        g.weights_ = std::move(weights);
        g.labels_ = std::move(labels);
        g.directed_ = directed;
        return g;
    }

    Eigen::Index size() const noexcept { return weights_.rows(); }
    const Matrix<Scalar>& weights() const noexcept { return weights_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    bool directed() const noexcept { return directed_; }
    Scalar operator()(Eigen::Index i, Eigen::Index j) const { return weights_(i, j); }

    bool is_symmetric() const {
        for (Eigen::Index i = 0; i < weights_.rows(); ++i)
            for (Eigen::Index j = i + 1; j < weights_.cols(); ++j)
                if (!(weights_(i, j) == weights_(j, i))) return false;
        return true;
    }

    /// Same labels and directedness with new weights (unchecked).
    WeightedGraph with_weights(Matrix<Scalar> w, bool directed) const {
        return trusted(std::move(w), labels_, directed);
    }

    static std::vector<std::string> default_labels(Eigen::Index n) {
        std::vector<std::string> out;
        out.reserve(n);
        for (Eigen::Index i = 0; i < n; ++i) out.push_back(std::to_string(i));
        return out;
    }

    friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
        return a.directed_ == b.directed_ && a.labels_ == b.labels_ && a.weights_.rows() == b.weights_.rows() &&
               a.weights_.cols() == b.weights_.cols() && (a.weights_.array() == b.weights_.array()).all();
    }

private:
    void validate() const {
        const auto n = weights_.rows();
        if (weights_.cols() != n) throw InputError("graph matrix must be square");
        if (static_cast<Eigen::Index>(labels_.size()) != n)
            throw InputError("graph has " + std::to_string(n) + " vertices but " +
                             std::to_string(labels_.size()) + " labels");
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                const Scalar w = weights_(i, j);
                const std::string where = "(" + labels_[i] + ", " + labels_[j] + ")";
                if constexpr (S == Space::proximity) {
                    if (!(w >= Scalar(0) && w <= Scalar(1)))
                        throw InputError("proximity weight outside [0,1] at " + where);
                    if (i == j && w != Scalar(1)) throw InputError("proximity diagonal must be 1 at " + where);
                } else {
                    if (!(w >= Scalar(0))) throw InputError("distance weight must be >= 0 at " + where);
                    if (i == j && w != Scalar(0)) throw InputError("distance diagonal must be 0 at " + where);
                }
                if (!directed_ && j > i && !(w == weights_(j, i)))
                    throw InputError("undirected graph is asymmetric at " + where);
            }
        }
    }

    Matrix<Scalar> weights_;
    std::vector<std::string> labels_;
    bool directed_ = false;
};

using ProximityGraph = WeightedGraph<Space::proximity>;
using DistanceGraph = WeightedGraph<Space::distance>;

/// Phi: entrywise application of a generator map.
class IsomorphismMap {
public:
    IsomorphismMap() : generator_(GeneratorMap::standard()) {}
    explicit IsomorphismMap(GeneratorMap generator) : generator_(std::move(generator)) {}

    const GeneratorMap& generator() const noexcept { return generator_; }

    MatrixXd forward(const MatrixXd& proximity) const {
        return proximity.unaryExpr([this](double p) { return generator_(p); });
    }
    MatrixXd inverse(const MatrixXd& distance) const {
        return distance.unaryExpr([this](double d) { return generator_.inverse(d); });
    }

private:
    GeneratorMap generator_;
};

DistanceGraph to_distance(const ProximityGraph& p, const IsomorphismMap& iso = {});
ProximityGraph to_proximity(const DistanceGraph& d, const IsomorphismMap& iso = {});

enum class CorrelationMode {
    clamp,    // negative r -> 0
    absolute  // |r|
};

/**
 * Pearson correlation between the columns of `series` (rows = observations),
 * mapped into [0,1] by `mode`. Throws InputError on NaN input, fewer than two
 * observations, or a constant column.
 */
ProximityGraph from_correlation(const MatrixXd& series, std::vector<std::string> labels,
                                CorrelationMode mode = CorrelationMode::clamp);

}  // namespace dclosure
