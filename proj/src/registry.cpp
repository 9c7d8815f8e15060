#include "dclosure/registry.hpp"

#include <charconv>

namespace dclosure {

Method Method::dombi(double lambda) {
    try {
        DombiParams p(lambda);
    } catch (const std::domain_error& e) {
        throw InputError(e.what());
    }
    return Method(Kind::dombi, lambda);
}

Method Method::parse(std::string_view name) {
    if (name == "metric") return metric();
    if (name == "ultrametric") return ultrametric();
    if (name == "diffusion") return diffusion();
    constexpr std::string_view prefix = "dombi:";
    if (name.substr(0, prefix.size()) == prefix) {
        const std::string text(name.substr(prefix.size()));
        std::size_t used = 0;
        double lambda = 0.0;
        try {
            lambda = std::stod(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != text.size())
            throw InputError("invalid lambda in method '" + std::string(name) + "'");
        return dombi(lambda);
    }
    throw InputError("unknown closure method '" + std::string(name) +
                     "' (expected metric, ultrametric, diffusion or dombi:<lambda>)");
}

std::string Method::name() const {
    switch (kind_) {
        case Kind::metric: return "metric";
        case Kind::ultrametric: return "ultrametric";
        case Kind::diffusion: return "diffusion";
        case Kind::dombi: {
            char buf[64];
            const auto res = std::to_chars(buf, buf + sizeof buf, lambda_);
            return "dombi:" + std::string(buf, res.ptr);
        }
    }
    return {};
}

GeneratorMap Method::generator() const {
    return kind_ == Kind::dombi ? GeneratorMap::dombi(lambda_) : GeneratorMap::standard();
}

UnitOperatorPair Method::unit_pair() const {
    switch (kind_) {
        case Kind::metric: return UnitOperatorPair::max_dombi(1.0);
        case Kind::ultrametric: return UnitOperatorPair::max_min();
        case Kind::diffusion: return UnitOperatorPair::dombi_dual(1.0);
        case Kind::dombi: return UnitOperatorPair::max_dombi(lambda_);
    }
    return UnitOperatorPair::max_min();
}

ExtendedOperatorPair Method::distance_pair() const {
    switch (kind_) {
        case Kind::metric:
        case Kind::dombi: return ExtendedOperatorPair::min_plus();
        case Kind::ultrametric: return ExtendedOperatorPair::min_max();
        case Kind::diffusion: return ExtendedOperatorPair::harmonic_plus();
    }
    return ExtendedOperatorPair::min_plus();
}

Method::ProximityKernel Method::proximity_kernel() const {
    switch (kind_) {
        case Kind::metric: return MaxDombi{DombiParams(1.0)};
        case Kind::ultrametric: return MaxMin{};
        case Kind::diffusion: return DombiDual{DombiParams(1.0)};
        case Kind::dombi: return MaxDombi{DombiParams(lambda_)};
    }
    return MaxMin{};
}

Method::DistanceKernel Method::distance_kernel() const {
    switch (kind_) {
        case Kind::metric:
        case Kind::dombi: return MinPlus{};
        case Kind::ultrametric: return MinMax{};
        case Kind::diffusion: return HarmonicPlus{};
    }
    return MinPlus{};
}

ClosureReport<DistanceGraph> close_distance(const DistanceGraph& d, const Method& method, const ClosureOptions& opts) {
    ClosureOptions o = opts;
    if (!o.generator) o.generator = method.generator();
    ClosureReport<DistanceGraph> rep;
    switch (method.kind()) {
        case Method::Kind::metric:
        case Method::Kind::dombi: rep = metric_closure(d, ApspBackend::automatic, o); break;
        case Method::Kind::ultrametric: rep = ultrametric_closure(d, o); break;
        case Method::Kind::diffusion: rep = distance_closure(d, HarmonicPlus{}, o); break;
    }
    rep.method = method.name();
    return rep;
}

ClosureReport<ProximityGraph> close_proximity(const ProximityGraph& p, const Method& method, const ClosureOptions& opts) {
    auto rep = std::visit([&](const auto& ops) { return transitive_closure_alg1(p, ops, opts); }, method.proximity_kernel());
    rep.method = method.name();
    return rep;
}

ClosureReport<ProximityGraph> close_proximity_via_distance(const ProximityGraph& p, const Method& method,
                                                           const ClosureOptions& opts) {
    const IsomorphismMap iso(method.generator());
    const auto dist = close_distance(to_distance(p, iso), method, opts);
    ClosureReport<ProximityGraph> rep;
    rep.closed = to_proximity(dist.closed, iso);
    rep.kappa = dist.kappa;
    rep.converged = dist.converged;
    rep.stop = dist.stop;
    rep.distortion = distortion(p, rep.closed);
    rep.method = dist.method;
    rep.iterations_log = dist.iterations_log;
    return rep;
}

}  // namespace dclosure
