#include "dclosure/algebra.hpp"

#include "dclosure/detail/quadrature.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace dclosure {

namespace {

std::string format_lambda(double lambda) {
    std::ostringstream os;
    os.precision(12);
    os << lambda;
    return os.str();
}

}  // namespace

GeneratorMap GeneratorMap::dombi(double lambda) {
    const DombiParams p(lambda);
    const double l = p.lambda();
    auto forward = [l](double x) {
        if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("generator: proximity outside [0,1]");
        if (x == 0.0) return std::numeric_limits<double>::infinity();
        if (x == 1.0) return 0.0;
        const double base = (1.0 - x) / x;
        return l == 1.0 ? base : std::pow(base, l);
    };
    auto inverse = [l](double d) {
        if (!(d >= 0.0)) throw std::domain_error("generator inverse: distance must be >= 0");
        if (std::isinf(d)) return 0.0;
        if (d == 0.0) return 1.0;
        return 1.0 / (1.0 + (l == 1.0 ? d : std::pow(d, 1.0 / l)));
    };
    return GeneratorMap("dombi:" + format_lambda(l), forward, inverse, l);
}

GeneratorMap GeneratorMap::custom(std::string descriptor, UnaryOp forward, UnaryOp inverse) {
    if (!forward || !inverse) throw InputError("generator '" + descriptor + "': missing map");
    if (forward(1.0) != 0.0) throw InputError("generator '" + descriptor + "': phi(1) must be 0");
    if (!std::isinf(forward(0.0)))
        throw InputError("generator '" + descriptor + "': phi(0) must be +inf");
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 256; ++i) {
        const double x = i / 256.0;
        const double d = forward(x);
        if (!(d < prev))
            throw InputError("generator '" + descriptor + "': not strictly decreasing near " +
                             std::to_string(x));
        if (std::abs(inverse(d) - x) > kAbsTol)
            throw InputError("generator '" + descriptor + "': inverse mismatch at " + std::to_string(x));
        prev = d;
    }
    return GeneratorMap(std::move(descriptor), std::move(forward), std::move(inverse), std::nullopt);
}

UnitOperatorPair UnitOperatorPair::max_min() {
    return {"max-min", [](double a, double b) { return std::max(a, b); },
            [](double a, double b) { return std::min(a, b); }, true};
}

UnitOperatorPair UnitOperatorPair::max_dombi(double lambda) {
    const DombiParams p(lambda);
    return {"max-dombi:" + format_lambda(lambda), [](double a, double b) { return std::max(a, b); },
            [p](double a, double b) { return dombi_tnorm(a, b, p); }, true};
}

UnitOperatorPair UnitOperatorPair::dombi_dual(double lambda) {
    const DombiParams p(lambda);
    return {"dombi-dual:" + format_lambda(lambda),
            [p](double a, double b) { return dombi_tconorm(a, b, p); },
            [p](double a, double b) { return dombi_tnorm(a, b, p); }, false};
}

UnitOperatorPair UnitOperatorPair::dombi_or_with_standard_and(double lambda_or) {
    const DombiParams p(lambda_or);
    const DombiParams one(1.0);
    return {"dombi-or:" + format_lambda(lambda_or) + "/and:1",
            [p](double a, double b) { return dombi_tconorm(a, b, p); },
            [one](double a, double b) { return dombi_tnorm(a, b, one); }, false};
}

ExtendedOperatorPair ExtendedOperatorPair::min_plus() {
    return {"min-plus", [](double x, double y) { return std::min(x, y); },
            [](double x, double y) { return x + y; }, true};
}

ExtendedOperatorPair ExtendedOperatorPair::min_max() {
    return {"min-max", [](double x, double y) { return std::min(x, y); },
            [](double x, double y) { return std::max(x, y); }, true};
}

ExtendedOperatorPair ExtendedOperatorPair::harmonic_plus() {
    return {"harmonic-plus", harmonic_combine, [](double x, double y) { return x + y; }, false};
}

ExtendedOperatorPair derive_distance_pair(const UnitOperatorPair& pair, const GeneratorMap& iso) {
    auto saturate = [](double d) { return std::isnan(d) ? std::numeric_limits<double>::infinity() : d; };
    ExtendedOperatorPair out;
    out.name = pair.name + "@" + iso.descriptor();
    out.is_dioid = pair.is_dioid;
    out.f = [or_ = pair.disjunction, iso, saturate](double x, double y) {
        return saturate(iso(or_(iso.inverse(x), iso.inverse(y))));
    };
    out.g = [and_ = pair.conjunction, iso, saturate](double x, double y) {
        return saturate(iso(and_(iso.inverse(x), iso.inverse(y))));
    };
    return out;
}

DualityCheck check_duality(const UnitOperatorPair& pair, const std::function<double(double)>& complement,
                           int samples) {
    if (samples < 2) throw std::invalid_argument("check_duality: need at least 2 samples per axis");
    std::vector<double> grid(samples);
    for (int i = 0; i < samples; ++i) grid[i] = double(i) / (samples - 1);

    for (double x : grid)
        if (std::abs(complement(complement(x)) - x) > kAbsTol)
            throw std::invalid_argument("check_duality: complement is not involutive at " + std::to_string(x));

    DualityCheck out;
    for (double a : grid) {
        for (double b : grid) {
            const double ca = complement(a);
            const double cb = complement(b);
            const double e1 = std::abs(complement(pair.disjunction(a, b)) - pair.conjunction(ca, cb));
            const double e2 = std::abs(complement(pair.conjunction(a, b)) - pair.disjunction(ca, cb));
            const double e = std::max(e1, e2);
            if (e > out.max_error) {
                out.max_error = e;
                out.witness_a = a;
                out.witness_b = b;
            }
        }
    }
    out.holds = out.max_error <= kAbsTol;
    return out;
}

double demorgan_integrand(double x, double y, double lambda) {
    // -xy * hi * (1 + r^l)^(1/l) + x + y - 2xy with hi = max(1/x-1, 1/y-1),
    // r = min/max; xy * hi collapses to y(1-x) or x(1-y).
    const double u = 1.0 / x - 1.0;
    const double v = 1.0 / y - 1.0;
    double xy_hi;
    double r;
    if (u >= v) {
        xy_hi = y * (1.0 - x);
        r = std::isinf(u) ? 0.0 : v / u;
    } else {
        xy_hi = x * (1.0 - y);
        r = std::isinf(v) ? 0.0 : u / v;
    }
    const double bracket = lambda == 1.0 ? 1.0 + r : std::pow(1.0 + std::pow(r, lambda), 1.0 / lambda);
    return -xy_hi * bracket + x + y - 2.0 * x * y;
}

double demorgan_deviation(double lambda, const QuadratureSpec& spec) {
    const DombiParams p(lambda);
    const double l = p.lambda();
    auto integrand = [l](double x, double y) {
        const double e = demorgan_integrand(x, y, l);
        if (!std::isfinite(e))
            throw NumericError("demorgan_deviation: integrand overflow at lambda=" + std::to_string(l) +
                               " (deviation is unbounded as lambda -> 0)");
        return std::abs(e);
    };

    double total = 0.0;
    if (spec.kind == QuadratureSpec::Kind::fixed_grid) {
        if (spec.grid_points < 64) throw std::invalid_argument("demorgan_deviation: grid needs >= 64 points per axis");
        const int pieces = (spec.grid_points + 19) / 20;
        // The integrand has a kink along x = y; split the inner axis there.
        auto inner = [&](double y) {
            auto row = [&](double x) { return integrand(x, y); };
            return detail::fixed_gauss(row, 0.0, y, pieces) + detail::fixed_gauss(row, y, 1.0, pieces);
        };
        total = detail::fixed_gauss(inner, 0.0, 1.0, 2 * pieces);
    } else {
        const double tol = spec.tolerance;
        auto inner = [&](double y) {
            auto row = [&](double x) { return integrand(x, y); };
            return detail::adaptive_gk(row, 0.0, y, 0.1 * tol, 0.1 * tol).value +
                   detail::adaptive_gk(row, y, 1.0, 0.1 * tol, 0.1 * tol).value;
        };
        const auto outer = detail::adaptive_gk(inner, 0.0, 1.0, tol, tol);
        total = outer.value;
    }
    if (!std::isfinite(total))
        throw NumericError("demorgan_deviation: non-finite result at lambda=" + std::to_string(l));
    return total;
}

}  // namespace dclosure
