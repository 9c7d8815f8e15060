#pragma once

#include "dclosure/analysis.hpp"
#include "dclosure/io.hpp"
#include "dclosure/registry.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <numeric>
#include <queue>
#include <random>

namespace testing {

using namespace dclosure;
using Rational = boost::multiprecision::cpp_rational;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

// Symmetric proximity graph, weights uniform(0,1), unit diagonal.
inline ProximityGraph random_proximity(std::mt19937_64& gen, Eigen::Index n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    MatrixXd p = MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) p(i, j) = p(j, i) = u(gen);
    return ProximityGraph(p, ProximityGraph::default_labels(n), false);
}

// Symmetric distance graph; each pair is an edge with probability `density`,
// weight uniform(lo, hi).
inline DistanceGraph random_distance(std::mt19937_64& gen, Eigen::Index n, double density, double lo = 0.1,
                                     double hi = 10.0, bool directed = false) {
    std::uniform_real_distribution<double> u(lo, hi), coin(0.0, 1.0);
    MatrixXd d = MatrixXd::Constant(n, n, std::numeric_limits<double>::infinity());
    d.diagonal().setZero();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = directed ? 0 : i + 1; j < n; ++j) {
            if (i == j || coin(gen) >= density) continue;
            d(i, j) = u(gen);
            if (!directed) d(j, i) = d(i, j);
        }
    return DistanceGraph(d, DistanceGraph::default_labels(n), directed);
}

// Connected unweighted graph: random spanning tree plus extra edges.
// Returned as 0/1 adjacency with unit diagonal.
inline MatrixXd random_connected_adjacency(std::mt19937_64& gen, Eigen::Index n, double extra) {
    MatrixXd a = MatrixXd::Identity(n, n);
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), gen);
    for (Eigen::Index k = 1; k < n; ++k) {
        std::uniform_int_distribution<Eigen::Index> pick(0, k - 1);
        const auto u = order[k], v = order[pick(gen)];
        a(u, v) = a(v, u) = 1.0;
    }
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (coin(gen) < extra) a(i, j) = a(j, i) = 1.0;
    return a;
}

// Best bottleneck over all simple paths, by exhaustive DFS.
inline MatrixXd brute_bottleneck(const MatrixXd& p) {
    const auto n = p.rows();
    MatrixXd best = MatrixXd::Zero(n, n);
    std::vector<char> seen(n, 0);
    std::function<void(Eigen::Index, Eigen::Index, double)> dfs = [&](Eigen::Index s, Eigen::Index v, double w) {
        best(s, v) = std::max(best(s, v), w);
        for (Eigen::Index u = 0; u < n; ++u) {
            if (seen[u] || p(v, u) <= 0.0) continue;
            seen[u] = 1;
            dfs(s, u, std::min(w, p(v, u)));
            seen[u] = 0;
        }
    };
    for (Eigen::Index s = 0; s < n; ++s) {
        seen.assign(n, 0);
        seen[s] = 1;
        dfs(s, s, 1.0);
    }
    return best;
}

// D^2 by enumerating every 2-edge walk i -> k -> j and combining the walk
// lengths harmonically, in exact arithmetic.
inline Matrix<Rational> walk_oracle(const Matrix<Rational>& d) {
    const auto n = d.rows();
    Matrix<Rational> out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            Rational recip = 0;
            bool zero = false;
            for (Eigen::Index k = 0; k < n; ++k) {
                const Rational len = d(i, k) + d(k, j);
                if (len == 0) zero = true;
                else recip += 1 / len;
            }
            out(i, j) = zero ? Rational(0) : 1 / recip;
        }
    return out;
}

inline MatrixXd reachability(const MatrixXd& adj) {
    const auto n = adj.rows();
    MatrixXd r = MatrixXd::Zero(n, n);
    for (Eigen::Index s = 0; s < n; ++s) {
        std::queue<Eigen::Index> q;
        q.push(s);
        r(s, s) = 1;
        while (!q.empty()) {
            const auto v = q.front();
            q.pop();
            for (Eigen::Index u = 0; u < n; ++u)
                if (adj(v, u) > 0 && r(s, u) == 0) {
                    r(s, u) = 1;
                    q.push(u);
                }
        }
    }
    return r;
}

// Plain sample CV of 1 / (X^(1/lambda) + 1), X normal, truncated the same way.
inline double monte_carlo_cv(double mu, double cv_d, double lambda, int samples, std::uint64_t seed) {
    auto gen = rng(seed);
    const double sigma = mu * cv_d;
    std::normal_distribution<double> x(mu, sigma);
    const double lo = std::max(0.0, mu - 8 * sigma), hi = mu + 8 * sigma;
    double s1 = 0, s2 = 0;
    int kept = 0;
    while (kept < samples) {
        const double v = x(gen);
        if (v < lo || v > hi) continue;
        const double y = 1.0 / (std::pow(v, 1.0 / lambda) + 1.0);
        s1 += y;
        s2 += y * y;
        ++kept;
    }
    const double mean = s1 / kept;
    return std::sqrt(s2 / kept - mean * mean) / mean;
}

inline std::filesystem::path toy_network_path() { return std::filesystem::path(DCLOSURE_DATA_DIR) / "toy_network.tsv"; }

}  // namespace testing
