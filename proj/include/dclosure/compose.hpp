#pragma once

/**
 * @file compose.hpp
 * @brief Generalized matrix product c_ij = combine_k extend(a_ik, b_kj).
 *
 * With MinPlus this is the distance product; with MaxMin it is the max-min
 * fuzzy composition; with HarmonicPlus it is one diffusion step.
 */

#include "dclosure/core.hpp"
#include "dclosure/semiring.hpp"

#include <stdexcept>
#include <thread>
#include <vector>

namespace dclosure {

namespace detail {

// Splits [0, rows) into contiguous blocks, one per worker. Each row is
// written by exactly one worker so results do not depend on thread count.
template <typename RowFn>
void parallel_rows(Eigen::Index rows, Threads threads, RowFn&& fn) {
    const unsigned workers = std::min<unsigned>(threads.resolved(), static_cast<unsigned>(std::max<Eigen::Index>(rows, 1)));
    if (workers <= 1 || rows < 32) {
        for (Eigen::Index i = 0; i < rows; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const Eigen::Index block = (rows + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const Eigen::Index lo = w * block;
        const Eigen::Index hi = std::min(rows, lo + block);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (Eigen::Index i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace detail

template <typename Ops, typename DerivedA, typename DerivedB>
Matrix<typename DerivedA::Scalar> compose(const Eigen::MatrixBase<DerivedA>& a,
                                          const Eigen::MatrixBase<DerivedB>& b, const Ops& ops,
                                          Threads threads = {}) {
    using Scalar = typename DerivedA::Scalar;
    static_assert(std::is_same_v<Scalar, typename DerivedB::Scalar>, "compose: scalar types differ");
    if (a.cols() != b.rows())
        throw std::invalid_argument("compose: dimension mismatch (" + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()) + ")");

    // Row-major copy of A and column-major B keep the k loop contiguous.
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> lhs = a;
    const Matrix<Scalar> rhs = b;
    const Eigen::Index inner = a.cols();
    Matrix<Scalar> out(a.rows(), b.cols());

    detail::parallel_rows(a.rows(), threads, [&](Eigen::Index i) {
        for (Eigen::Index j = 0; j < rhs.cols(); ++j) {
            auto acc = ops.template accumulator<Scalar>();
            for (Eigen::Index k = 0; k < inner; ++k) {
                if (acc.add(ops.extend(lhs(i, k), rhs(k, j)))) break;
            }
            out(i, j) = acc.value();
        }
    });
    return out;
}

/// Entrywise combine (the closure union) of two same-shape matrices.
template <typename Ops, typename DerivedA, typename DerivedB>
Matrix<typename DerivedA::Scalar> combine_entrywise(const Eigen::MatrixBase<DerivedA>& a,
                                                    const Eigen::MatrixBase<DerivedB>& b, const Ops& ops) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("combine_entrywise: dimension mismatch");
    Matrix<typename DerivedA::Scalar> out(a.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) out(i, j) = ops.combine(a(i, j), b(i, j));
    return out;
}

}  // namespace dclosure
