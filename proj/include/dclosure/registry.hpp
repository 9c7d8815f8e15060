#pragma once

/**
 * @file registry.hpp
 * @brief Named closure methods: `metric`, `ultrametric`, `diffusion` and
 *        `dombi:<lambda>`, each resolving to a proximity pair, a distance
 *        pair and the generator linking them.
 */

#include "dclosure/closure.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace dclosure {

class Method {
public:
    enum class Kind { metric, ultrametric, diffusion, dombi };

    /// Parses a registry name. Throws InputError for unknown names or a
    /// non-positive/unparseable lambda.
    static Method parse(std::string_view name);

    static Method metric() { return Method(Kind::metric, 1.0); }
    static Method ultrametric() { return Method(Kind::ultrametric, 1.0); }
    static Method diffusion() { return Method(Kind::diffusion, 1.0); }
    static Method dombi(double lambda);

    Kind kind() const noexcept { return kind_; }
    double lambda() const noexcept { return lambda_; }
    bool is_dioid() const noexcept { return kind_ != Kind::diffusion; }

    /// Round-trips through parse().
    std::string name() const;

    /// The generator that maps this method's proximity space to distances.
    GeneratorMap generator() const;
    UnitOperatorPair unit_pair() const;
    ExtendedOperatorPair distance_pair() const;

    /// Statically typed kernels for the hot paths.
    using ProximityKernel = std::variant<MaxMin, MaxDombi, DombiDual>;
    using DistanceKernel = std::variant<MinPlus, MinMax, HarmonicPlus>;
    ProximityKernel proximity_kernel() const;
    DistanceKernel distance_kernel() const;

    friend bool operator==(const Method&, const Method&) = default;

private:
    Method(Kind k, double lambda) : kind_(k), lambda_(lambda) {}
    Kind kind_;
    double lambda_;
};

/// Closes a distance graph with the named method. metric and dombi:l use the
/// APSP backend (dombi:l is the same <min,+> closure, differing only in how
/// distances relate to proximities), ultrametric uses <min,max>, diffusion
/// accumulates harmonic powers to the epsilon criterion.
ClosureReport<DistanceGraph> close_distance(const DistanceGraph& d, const Method& method, const ClosureOptions& opts = {});

/// Closes a proximity graph directly in proximity space by repeated squaring.
ClosureReport<ProximityGraph> close_proximity(const ProximityGraph& p, const Method& method,
                                              const ClosureOptions& opts = {});

/// Closes a proximity graph through the isomorphism: map to distances with
/// the method's generator, close there, map back.
ClosureReport<ProximityGraph> close_proximity_via_distance(const ProximityGraph& p, const Method& method,
                                                           const ClosureOptions& opts = {});

}  // namespace dclosure
