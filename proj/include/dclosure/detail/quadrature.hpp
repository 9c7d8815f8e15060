#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <queue>

namespace dclosure::detail {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

// Globally adaptive 15-point Gauss-Kronrod: the interval with the largest
// error estimate is bisected until the summed estimate meets
// max(abs_tol, rel_tol * |value|) or max_intervals is reached. Unlike the
// Boost driver this accepts an absolute target, so integrands that vanish up
// to rounding terminate. The caller checks `error` against its own budget.
template <typename F>
QuadResult adaptive_gk(F&& f, double a, double b, double abs_tol, double rel_tol, int max_intervals = 2000) {
    using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    struct Piece {
        double a, b, value, error;
        bool operator<(const Piece& o) const { return error < o.error; }
    };
    auto eval = [&](double lo, double hi) {
        double err = 0.0;
        const double v = Rule::integrate(f, lo, hi, 0, 0.0, &err);
        return Piece{lo, hi, v, err};
    };
    std::priority_queue<Piece> heap;
    heap.push(eval(a, b));
    double value = heap.top().value, error = heap.top().error;
    int count = 1;
    while (std::isfinite(value) && error > std::max(abs_tol, rel_tol * std::abs(value)) && count < max_intervals) {
        const Piece worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // no representable split left
        heap.pop();
        const Piece left = eval(worst.a, mid), right = eval(mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // Re-sum to shed the drift of the running updates.
    value = 0.0;
    error = 0.0;
    for (; !heap.empty(); heap.pop()) {
        value += heap.top().value;
        error += heap.top().error;
    }
    return {value, error};
}

// Fixed 20-point Gauss-Legendre on `pieces` equal panels.
template <typename F>
double fixed_gauss(F&& f, double a, double b, int pieces) {
    using Rule = boost::math::quadrature::gauss<double, 20>;
    const double h = (b - a) / pieces;
    double total = 0.0;
    for (int p = 0; p < pieces; ++p) total += Rule::integrate(f, a + p * h, a + (p + 1) * h);
    return total;
}

}  // namespace dclosure::detail
