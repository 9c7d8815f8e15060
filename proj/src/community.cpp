#include "dclosure/analysis.hpp"

#include <algorithm>
#include <numeric>

namespace dclosure {

namespace {

// Relabels to dense ids in order of first appearance.
Partition canonical(const Partition& raw) {
    Partition out(raw.size());
    std::vector<int> remap(raw.size() + 1, -1);
    int next = 0;
    for (std::size_t v = 0; v < raw.size(); ++v) {
        int& id = remap[raw[v]];
        if (id < 0) id = next++;
        out[v] = id;
    }
    return out;
}

// One level of local moving. Returns true if any vertex changed community.
bool local_moving(const MatrixXd& g, Partition& comm, const CommunityOptions& opts) {
    const auto n = g.rows();
    const double m = g.sum();
    if (m <= 0.0) return false;
    const Eigen::VectorXd kout = g.rowwise().sum();
    const Eigen::VectorXd kin = g.colwise().sum().transpose();
    std::vector<double> sum_out(n), sum_in(n);
    for (Eigen::Index c = 0; c < n; ++c) {
        sum_out[c] = kout(c);
        sum_in[c] = kin(c);
    }
    const double threshold = opts.min_gain * m;

    std::vector<double> link(n, 0.0);
    std::vector<int> touched;
    bool improved = false;
    for (int pass = 0; pass < opts.max_passes; ++pass) {
        bool moved = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            const int own = comm[i];
            sum_out[own] -= kout(i);
            sum_in[own] -= kin(i);

            touched.clear();
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                const double w = g(i, j) + g(j, i);
                if (w <= 0.0) continue;
                if (link[comm[j]] == 0.0) touched.push_back(comm[j]);
                link[comm[j]] += w;
            }
            std::sort(touched.begin(), touched.end());

            auto gain = [&](int c) { return link[c] - (kout(i) * sum_in[c] + kin(i) * sum_out[c]) / m; };
            int best = own;
            double best_gain = gain(own);
            for (int c : touched) {
                const double gc = gain(c);
                if (gc > best_gain + threshold) {
                    best = c;
                    best_gain = gc;
                }
            }
            for (int c : touched) link[c] = 0.0;

            comm[i] = best;
            sum_out[best] += kout(i);
            sum_in[best] += kin(i);
            if (best != own) moved = improved = true;
        }
        if (!moved) break;
    }
    return improved;
}

}  // namespace

Partition cluster_directed(const MatrixXd& weights, const CommunityOptions& opts) {
    if (weights.rows() != weights.cols()) throw std::invalid_argument("cluster_directed: matrix must be square");
    if ((weights.array() < 0.0).any() || !weights.allFinite())
        throw std::invalid_argument("cluster_directed: weights must be finite and non-negative");

    const auto n = weights.rows();
    Partition membership(n);
    std::iota(membership.begin(), membership.end(), 0);  // original vertex -> current super-node
    MatrixXd level = weights;

    while (true) {
        Partition comm(level.rows());
        std::iota(comm.begin(), comm.end(), 0);
        if (!local_moving(level, comm, opts)) break;
        comm = canonical(comm);
        const int k = *std::max_element(comm.begin(), comm.end()) + 1;

        MatrixXd next = MatrixXd::Zero(k, k);
        for (Eigen::Index i = 0; i < level.rows(); ++i)
            for (Eigen::Index j = 0; j < level.cols(); ++j) next(comm[i], comm[j]) += level(i, j);
        for (auto& v : membership) v = comm[v];
        level = std::move(next);
        if (k == 1) break;
    }
    return canonical(membership);
}

Partition cluster_directed(const ProximityGraph& p, const CommunityOptions& opts) {
    return cluster_directed(p.weights(), opts);
}

double directed_modularity(const MatrixXd& w, const Partition& partition) {
    if (static_cast<Eigen::Index>(partition.size()) != w.rows())
        throw std::invalid_argument("directed_modularity: partition size mismatch");
    const double m = w.sum();
    if (m <= 0.0) return 0.0;
    const Eigen::VectorXd kout = w.rowwise().sum();
    const Eigen::VectorXd kin = w.colwise().sum().transpose();
    double q = 0.0;
    for (Eigen::Index i = 0; i < w.rows(); ++i)
        for (Eigen::Index j = 0; j < w.cols(); ++j)
            if (partition[i] == partition[j]) q += w(i, j) - kout(i) * kin(j) / m;
    return q / m;
}

int community_count(const Partition& partition) {
    if (partition.empty()) return 0;
    std::vector<int> ids(partition);
    std::sort(ids.begin(), ids.end());
    return static_cast<int>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

DiffusionTrace diffusion_trace(const DistanceGraph& d, long n_max, const DetectorConfig& cfg, PowerScheme scheme,
                               Threads threads) {
    if (n_max < 1) throw std::invalid_argument("diffusion_trace: n_max must be >= 1");
    DiffusionTrace trace;
    trace.labels = d.labels();
    trace.scheme = scheme;
    const GeneratorMap phi = GeneratorMap::standard();

    MatrixXd power = d.weights();
    long n = 1;
    while (n <= n_max) {
        trace.exponents.push_back(n);
        trace.asymmetry.push_back(asymmetry(power));

        MatrixXd w;
        if (cfg.on_distance) {
            w = power.unaryExpr([](double x) { return (x == 0.0 || std::isinf(x)) ? 0.0 : 1.0 / x; });
            w.diagonal().setZero();
        } else {
            w = power.unaryExpr([&phi](double x) { return phi.inverse(x); });
        }
        Partition part = cluster_directed(w, cfg.community);
        const int count = community_count(part);
        trace.community_counts.push_back(count);
        if (!trace.dissolve_n && count == static_cast<int>(d.size()) && d.size() > 1) trace.dissolve_n = n;
        trace.partitions.push_back(std::move(part));

        if (scheme == PowerScheme::left_fold) {
            if (++n <= n_max) power = compose(power, d.weights(), HarmonicPlus{}, threads);
        } else {
            if ((n *= 2) <= n_max) power = compose(power, power, HarmonicPlus{}, threads);
        }
    }
    return trace;
}

}  // namespace dclosure
