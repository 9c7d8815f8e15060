#include "dclosure/analysis.hpp"
#include "dclosure/detail/quadrature.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/tools/roots.hpp>

namespace dclosure {

namespace {

constexpr double kLambdaLo = 0.05;
constexpr double kLambdaHi = 50.0;
constexpr double kRootTol = 1e-4;

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error(std::string(what) + " must be a positive finite real");
}

// Integrates over the truncated support, splitting at the mean and at
// +-2 sigma so the adaptive driver sees smooth bell segments.
template <typename F>
double integrate_checked(F&& f, double lo, double hi, double mu, double sigma, double lambda) {
    std::vector<double> cuts{lo};
    for (double c : {mu - 2 * sigma, mu, mu + 2 * sigma})
        if (c > lo && c < hi) cuts.push_back(c);
    cuts.push_back(hi);
    double total = 0.0, error = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        detail::QuadResult r;
        if (k == 0 && cuts[0] == 0.0) {
            // x = t^p turns the x^(1/lambda) cusp at 0 into t^(p/lambda), p/lambda >= 4.
            const double p = std::ceil(4.0 * lambda);
            auto g = [&](double t) { return t == 0.0 ? 0.0 : f(std::pow(t, p)) * p * std::pow(t, p - 1.0); };
            r = detail::adaptive_gk(g, 0.0, std::pow(cuts[1], 1.0 / p), 1e-16, 1e-12);
        } else {
            r = detail::adaptive_gk(f, cuts[k], cuts[k + 1], 1e-16, 1e-12);
        }
        total += r.value;
        error += r.error;
    }
    if (!std::isfinite(total) || error > 1e-14 + 1e-8 * std::abs(total))
        throw NumericError("cv_proximity: quadrature did not reach tolerance (error estimate " + std::to_string(error) +
                           " on " + std::to_string(total) + ")");
    return total;
}

}  // namespace

double cv_proximity(double mu, double cv_d, double lambda) {
    require_positive(mu, "mu");
    require_positive(cv_d, "cv_d");
    require_positive(lambda, "lambda");

    const double sigma = mu * cv_d;
    const double lo = std::max(0.0, mu - 8.0 * sigma);
    const double hi = mu + 8.0 * sigma;
    const boost::math::normal_distribution<double> normal(mu, sigma);
    auto density = [&](double x) { return boost::math::pdf(normal, x); };
    auto j = [lambda](double x) { return 1.0 / (std::pow(x, 1.0 / lambda) + 1.0); };

    const double mass = integrate_checked(density, lo, hi, mu, sigma, lambda);
    const double mean = integrate_checked([&](double x) { return j(x) * density(x); }, lo, hi, mu, sigma, lambda) / mass;
    // Central second moment directly, avoiding <Y^2> - <Y>^2 cancellation.
    const double var = integrate_checked(
                           [&](double x) {
                               const double dy = j(x) - mean;
                               return dy * dy * density(x);
                           },
                           lo, hi, mu, sigma, lambda) /
                       mass;
    if (!(mean > 0.0)) throw NumericError("cv_proximity: mean proximity underflowed to 0");
    return std::sqrt(std::max(var, 0.0)) / mean;
}

double find_lambda(double mu, double cv_d, double cv_p_target) {
    require_positive(cv_p_target, "cv_p target");
    auto f = [&](double lambda) { return cv_proximity(mu, cv_d, lambda) - cv_p_target; };
    const double f_lo = f(kLambdaLo);
    const double f_hi = f(kLambdaHi);
    if (f_lo * f_hi > 0.0)
        throw NumericError("find_lambda: no root in [" + std::to_string(kLambdaLo) + ", " + std::to_string(kLambdaHi) +
                           "] for target cv_p=" + std::to_string(cv_p_target));

    auto tol = [](double a, double b) { return std::abs(b - a) < 1e-12 * std::max(1.0, std::abs(a)); };
    const auto [a, b] = boost::math::tools::bisect(f, kLambdaLo, kLambdaHi, tol);
    const double root = 0.5 * (a + b);
    if (std::abs(f(root)) >= kRootTol)
        throw NumericError("find_lambda: bisection ended with residual above 1e-4");
    return root;
}

LambdaStudy lambda_study(double mu, double cv_d, double cv_p_target) {
    LambdaStudy s{mu, cv_d, cv_p_target, 0.0, 0.0};
    s.lambda_opt = find_lambda(mu, cv_d, cv_p_target);
    s.cv_p_at_opt = cv_proximity(mu, cv_d, s.lambda_opt);
    return s;
}

}  // namespace dclosure
