#pragma once

/**
 * @file analysis.hpp
 * @brief Measures built on closures: semi-metric edges, distortion,
 *        asymmetry, the n-diffusion community hierarchy and the Dombi
 *        lambda optimizer for a characteristic path length.
 */

#include "dclosure/closure.hpp"
#include "dclosure/measures.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dclosure {

// Semi-metric edges ------------------------------------------------------------

struct SemiMetricEdge {
    Eigen::Index i = 0;
    Eigen::Index j = 0;
    double distance = 0.0;         // d_ij
    double metric_distance = 0.0;  // d^mc_ij
    double ratio = 0.0;            // d_ij / d^mc_ij, > 1
};

/// A pair with no direct edge that the metric closure connects.
struct IndirectPair {
    Eigen::Index i = 0;
    Eigen::Index j = 0;
    double metric_distance = 0.0;
};

struct SemiMetricReport {
    std::vector<std::string> labels;
    std::vector<SemiMetricEdge> edges;  // sorted by ratio, descending
    std::vector<IndirectPair> indirect_only;
    long finite_edges = 0;              // direct edges examined

    std::size_t count() const noexcept { return edges.size(); }
    double fraction() const noexcept { return finite_edges == 0 ? 0.0 : double(edges.size()) / double(finite_edges); }
};

/// Direct edges with d_ij > d^mc_ij (beyond the 1e-9 tolerance policy).
/// Undirected graphs list each pair once with i < j.
SemiMetricReport semimetric_edges(const DistanceGraph& d);
SemiMetricReport semimetric_edges(const DistanceGraph& d, const DistanceGraph& metric_closed);

// Community detection ------------------------------------------------------------

/// Vertex -> community id. Ids are dense and numbered by first appearance.
using Partition = std::vector<int>;

struct CommunityOptions {
    double min_gain = 1e-12;  // a move must improve by more than min_gain * total weight
    int max_passes = 1000;    // local-moving sweeps per level
};

/**
 * Deterministic multilevel greedy maximization of directed modularity
 *   Q = 1/m sum_ij (w_ij - kout_i kin_j / m) [c_i = c_j].
 * Vertices are visited in index order; ties go to the lowest community id.
 * The diagonal is kept as self-loop weight. Weights must be >= 0.
 */
Partition cluster_directed(const MatrixXd& weights, const CommunityOptions& opts = {});
Partition cluster_directed(const ProximityGraph& p, const CommunityOptions& opts = {});

double directed_modularity(const MatrixXd& weights, const Partition& partition);
int community_count(const Partition& partition);

// n-diffusion trace ------------------------------------------------------------

struct DetectorConfig {
    /// false: cluster on proximities 1/(1+d). true: weights 1/d, no self-loops.
    bool on_distance = false;
    CommunityOptions community{};
};

struct DiffusionTrace {
    std::vector<std::string> labels;
    PowerScheme scheme = PowerScheme::left_fold;
    std::vector<long> exponents;         // n of each recorded power D^n
    std::vector<double> asymmetry;       // A(D^n), parallel to exponents
    std::vector<int> community_counts;
    std::vector<Partition> partitions;
    std::optional<long> dissolve_n;      // first n with an all-singleton partition
};

/// Powers D^1..D^n_max (left fold) or D^1, D^2, D^4, ... <= n_max (power_of_two).
DiffusionTrace diffusion_trace(const DistanceGraph& d, long n_max, const DetectorConfig& cfg = {},
                               PowerScheme scheme = PowerScheme::left_fold, Threads threads = {});

// Characteristic path length -----------------------------------------------------

/**
 * Coefficient of variability of Y = 1 / (X^(1/lambda) + 1) for X normal with
 * mean mu and standard deviation mu * cv_d, truncated to
 * [max(0, mu - 8 sigma), mu + 8 sigma] and renormalized. Throws NumericError
 * if the quadrature misses its tolerance.
 */
double cv_proximity(double mu, double cv_d, double lambda);

/// Bisection over [0.05, 50] for cv_proximity(mu, cv_d, lambda) = target.
/// Throws NumericError when the bracket holds no root.
double find_lambda(double mu, double cv_d, double cv_p_target);

struct LambdaStudy {
    double mu = 0.0;
    double cv_d = 0.0;
    double cv_p_target = 0.0;
    double lambda_opt = 0.0;
    double cv_p_at_opt = 0.0;
};

LambdaStudy lambda_study(double mu, double cv_d, double cv_p_target);

}  // namespace dclosure
