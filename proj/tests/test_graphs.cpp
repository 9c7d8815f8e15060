#include "support.hpp"

#include <boost/math/statistics/bivariate_statistics.hpp>
#include <doctest.h>

using namespace dclosure;

namespace {

template <class Fn>
std::string error_of(Fn&& fn) {
    try {
        fn();
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("graph validation names the offending entry") {
    MatrixXd p(2, 2);
    p << 1.0, 0.4, 0.4, 1.0;
    CHECK_NOTHROW(ProximityGraph(p, {"a", "b"}, false));

    MatrixXd bad_diag = p;
    bad_diag(1, 1) = 0.9;
    CHECK(error_of([&] { ProximityGraph(bad_diag, {"a", "b"}, false); }).find("(b, b)") != std::string::npos);

    MatrixXd bad_range = p;
    bad_range(0, 1) = bad_range(1, 0) = 1.5;
    CHECK(error_of([&] { ProximityGraph(bad_range, {"a", "b"}, false); }).find("(a, b)") != std::string::npos);

    MatrixXd asym = p;
    asym(0, 1) = 0.3;
    CHECK_THROWS_AS(ProximityGraph(asym, {"a", "b"}, false), InputError);
    CHECK_NOTHROW(ProximityGraph(asym, {"a", "b"}, true));
    CHECK(ProximityGraph(asym).directed());
    CHECK_FALSE(ProximityGraph(p).directed());

    MatrixXd d(2, 2);
    d << 0.0, -1.0, -1.0, 0.0;
    CHECK_THROWS_AS(DistanceGraph{d}, InputError);
    d << 0.0, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0.0;
    CHECK_NOTHROW(DistanceGraph{d});
    d(0, 0) = 1.0;
    CHECK_THROWS_AS(DistanceGraph{d}, InputError);

    CHECK_THROWS_AS(ProximityGraph(p, {"a"}, false), InputError);
    CHECK_THROWS_AS(ProximityGraph(MatrixXd::Identity(2, 3)), InputError);
}

TEST_CASE("proximity to distance conversion") {
    MatrixXd p(3, 3);
    p << 1.0, 0.5, 0.0, 0.5, 1.0, 0.2, 0.0, 0.2, 1.0;
    const ProximityGraph g(p, {"x", "y", "z"}, false);

    const auto d = to_distance(g);
    CHECK(d(0, 1) == doctest::Approx(1.0));
    CHECK(d(1, 2) == doctest::Approx(4.0));
    CHECK(std::isinf(d(0, 2)));
    CHECK(d(0, 0) == 0.0);
    CHECK(d.labels() == g.labels());
    CHECK_FALSE(d.directed());

    const IsomorphismMap phi2(GeneratorMap::dombi(2.0));
    CHECK(to_distance(g, phi2)(1, 2) == doctest::Approx(16.0));

    auto gen = testing::rng(5);
    for (int k = 0; k < 20; ++k) {
        const auto r = testing::random_proximity(gen, 8);
        for (double lambda : {0.5, 1.0, 3.0}) {
            const IsomorphismMap iso(GeneratorMap::dombi(lambda));
            const auto back = to_proximity(to_distance(r, iso), iso);
            CHECK(max_abs_delta(back.weights(), r.weights()) < 1e-12);
        }
    }

    MatrixXd pd(2, 2);
    pd << 1.0, 0.3, 0.6, 1.0;
    CHECK(to_distance(ProximityGraph(pd)).directed());
}

TEST_CASE("correlation graphs") {
    auto gen = testing::rng(17);
    std::normal_distribution<double> z(0.0, 1.0);
    const Eigen::Index t = 60, n = 5;
    MatrixXd series(t, n);
    for (Eigen::Index r = 0; r < t; ++r) {
        const double base = z(gen);
        series(r, 0) = base;
        series(r, 1) = 2.0 * base + 1.0;        // r = 1
        series(r, 2) = -base;                   // r = -1
        series(r, 3) = base + 0.5 * z(gen);     // strong positive
        series(r, 4) = z(gen);                  // unrelated
    }
    const std::vector<std::string> labels{"a", "b", "c", "d", "e"};
    const auto clamp = from_correlation(series, labels);
    const auto absolute = from_correlation(series, labels, CorrelationMode::absolute);

    CHECK(clamp(0, 1) == doctest::Approx(1.0));
    CHECK(clamp(0, 2) == 0.0);
    CHECK(absolute(0, 2) == doctest::Approx(1.0));
    CHECK(clamp.labels() == labels);
    CHECK_FALSE(clamp.directed());

    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) continue;
            std::vector<double> u(series.col(i).data(), series.col(i).data() + t);
            std::vector<double> v(series.col(j).data(), series.col(j).data() + t);
            const double r = boost::math::statistics::correlation_coefficient(u, v);
            CHECK(absolute(i, j) == doctest::Approx(std::abs(r)).epsilon(1e-12));
            CHECK(clamp(i, j) == doctest::Approx(std::max(r, 0.0)).epsilon(1e-12));
        }

    MatrixXd constant = series;
    constant.col(4).setConstant(3.0);
    CHECK_THROWS_AS(from_correlation(constant, labels), InputError);
    CHECK_THROWS_AS(from_correlation(series.topRows(1), labels), InputError);
    CHECK_THROWS_AS(from_correlation(series, {"a", "b"}), InputError);
    MatrixXd with_nan = series;
    with_nan(3, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(from_correlation(with_nan, labels), InputError);
}

TEST_CASE("distortion and asymmetry") {
    MatrixXd a(3, 3), b(3, 3);
    a << 1, 0.2, 0.1, 0.2, 1, 0.5, 0.1, 0.5, 1;
    b << 1, 0.4, 0.1, 0.4, 1, 0.5, 0.1, 0.5, 1;
    CHECK(distortion(ProximityGraph(a), ProximityGraph(b)) == doctest::Approx(0.4));
    CHECK(distortion(ProximityGraph(a), ProximityGraph(a)) == 0.0);
    CHECK_THROWS_AS(distortion(ProximityGraph(a), ProximityGraph(MatrixXd::Identity(2, 2))), std::invalid_argument);

    const double inf = std::numeric_limits<double>::infinity();
    MatrixXd d(3, 3);
    d << 0, 1, inf, 3, 0, 2, inf, 2.5, 0;
    CHECK(asymmetry(d) == doctest::Approx(2.5));
    CHECK(asymmetry(MatrixXd::Zero(4, 4)) == 0.0);
}
