#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "floer/errors.hpp"
#include "floer/matrix.hpp"
#include "floer/rational.hpp"
#include "floer/series.hpp"

namespace floer {

// One elementary unimodular operation; a trace of these is the certificate
// that the accumulated transforms have determinant +-1.
struct ElementaryOp {
    enum class Kind { SwapRows, SwapCols, AddRowMultiple, AddColMultiple, NegateRow };
    Kind kind;
    std::size_t a = 0, b = 0;
    Int factor;  // row_a += factor * row_b (or the column analogue)
};

struct SmithResult {
    Matrix<Int> u, d, v;  // u * input * v == d, u and v unimodular
    std::vector<ElementaryOp> ops;

    std::vector<Int> invariant_factors() const {
        std::vector<Int> out;
        const std::size_t n = std::min(d.rows(), d.cols());
        for (std::size_t i = 0; i < n; ++i)
            if (!is_zero(d(i, i))) out.push_back(d(i, i));
        return out;
    }

    std::size_t rank() const { return invariant_factors().size(); }
};

namespace detail {

// Quotient with balanced remainder: |a - q*b| <= |b|/2. Keeps the entries of
// the accumulated transforms from exploding.
inline Int balanced_quotient(const Int& a, const Int& b) {
    Int q = a / b;  // truncated
    Int r = a - q * b;
    if (is_zero(r)) return q;
    Int r_abs = abs(r), b_abs = abs(b);
    if (cmp(r_abs * 2, b_abs) > 0) {
        // move remainder into (-|b|/2, |b|/2]
        q += (sgn(r) == sgn(b)) ? 1 : -1;
    }
    return q;
}

}  // namespace detail

// Smith normal form over Z. Pivot selection: smallest absolute value among
// the nonzero entries of the trailing submatrix. Division remainders shrink
// the pivot; the divisibility sweep re-introduces offending entries until the
// pivot divides the whole trailing submatrix, which yields d_i | d_{i+1}.
inline SmithResult smith_normal_form(Matrix<Int> m) {
    const std::size_t R = m.rows(), C = m.cols();
    Matrix<Int> u = Matrix<Int>::identity(R);
    Matrix<Int> v = Matrix<Int>::identity(C);
    std::vector<ElementaryOp> ops;
    const std::size_t steps = std::min(R, C);

    auto swap_rows = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        m.swap_rows(a, b);
        u.swap_rows(a, b);
        ops.push_back({ElementaryOp::Kind::SwapRows, a, b, Int(0)});
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        m.swap_cols(a, b);
        v.swap_cols(a, b);
        ops.push_back({ElementaryOp::Kind::SwapCols, a, b, Int(0)});
    };
    auto add_row_multiple = [&](std::size_t a, std::size_t b, const Int& f) {
        for (std::size_t j = 0; j < C; ++j) m(a, j) += f * m(b, j);
        for (std::size_t j = 0; j < R; ++j) u(a, j) += f * u(b, j);
        ops.push_back({ElementaryOp::Kind::AddRowMultiple, a, b, f});
    };
    auto add_col_multiple = [&](std::size_t a, std::size_t b, const Int& f) {
        for (std::size_t i = 0; i < R; ++i) m(i, a) += f * m(i, b);
        for (std::size_t i = 0; i < C; ++i) v(i, a) += f * v(i, b);
        ops.push_back({ElementaryOp::Kind::AddColMultiple, a, b, f});
    };

    for (std::size_t k = 0; k < steps; ++k) {
        std::size_t pi = k, pj = k;
        bool found = false;
        for (std::size_t i = k; i < R; ++i)
            for (std::size_t j = k; j < C; ++j) {
                const Int& x = m(i, j);
                if (is_zero(x)) continue;
                if (!found || cmp(abs(x), abs(m(pi, pj))) < 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        swap_rows(k, pi);
        swap_cols(k, pj);

        bool settled = false;
        while (!settled) {
            settled = true;
            // Clear column k. A nonzero remainder is strictly smaller than the
            // pivot; promote it and start over.
            for (std::size_t i = k + 1; i < R; ++i) {
                if (is_zero(m(i, k))) continue;
                Int q = detail::balanced_quotient(m(i, k), m(k, k));
                if (!is_zero(q)) add_row_multiple(i, k, -q);
                if (!is_zero(m(i, k))) {
                    swap_rows(k, i);
                    settled = false;
                    break;
                }
            }
            if (!settled) continue;
            for (std::size_t j = k + 1; j < C; ++j) {
                if (is_zero(m(k, j))) continue;
                Int q = detail::balanced_quotient(m(k, j), m(k, k));
                if (!is_zero(q)) add_col_multiple(j, k, -q);
                if (!is_zero(m(k, j))) {
                    swap_cols(k, j);
                    settled = false;
                    break;
                }
            }
            if (!settled) continue;
            // Pivot row and column are clear; enforce that the pivot divides
            // the trailing submatrix.
            for (std::size_t i = k + 1; i < R && settled; ++i)
                for (std::size_t j = k + 1; j < C && settled; ++j) {
                    if (is_zero(m(i, j) % m(k, k))) continue;
                    add_row_multiple(k, i, Int(1));
                    settled = false;
                }
        }
        if (sgn(m(k, k)) < 0) {
            for (std::size_t j = 0; j < C; ++j) m(k, j) = -m(k, j);
            for (std::size_t j = 0; j < R; ++j) u(k, j) = -u(k, j);
            ops.push_back({ElementaryOp::Kind::NegateRow, k, k, Int(0)});
        }
    }
    return SmithResult{std::move(u), std::move(m), std::move(v), std::move(ops)};
}

struct DvrSmithResult {
    std::vector<int> exponents;  // diagonal t^{a_1}, ..., a_i nondecreasing
    std::size_t rank() const { return exponents.size(); }
};

// Smith form over the discrete valuation ring Q[[t]]: valuation pivoting with
// units normalized away. Entries must lie in Q[[t]] (valuation >= 0). For
// exact polynomial input, any nonzero minor has valuation at most the sum of
// row-wise maximal exponents, which certifies trailing apparent zeros; for
// truncated input an apparent zero that cannot be certified raises
// InsufficientTruncation.
inline DvrSmithResult dvr_smith_form(Matrix<LaurentSeries> m) {
    const std::size_t R = m.rows(), C = m.cols();
    bool all_exact = true;
    long minor_bound = 0;
    for (std::size_t i = 0; i < R; ++i) {
        long row_max = 0;
        bool row_terms = false;
        for (std::size_t j = 0; j < C; ++j) {
            const LaurentSeries& e = m(i, j);
            if (e.has_terms()) {
                if (e.valuation() < 0) throw Error("dvr_smith_form: entry outside Q[[t]]");
                row_terms = true;
                row_max = std::max(row_max, static_cast<long>(e.max_exponent()));
            }
            if (!e.exact()) all_exact = false;
        }
        if (row_terms) minor_bound += row_max;
    }
    const int working = order_clamp(2 * minor_bound + kDefaultOrder + 8);

    std::vector<int> exps;
    std::size_t k = 0;
    const std::size_t steps = std::min(R, C);
    while (k < steps) {
        std::size_t pi = k, pj = k;
        bool found = false;
        for (std::size_t i = k; i < R; ++i)
            for (std::size_t j = k; j < C; ++j) {
                const LaurentSeries& e = m(i, j);
                if (!e.has_terms()) continue;
                if (!found || e.valuation() < m(pi, pj).valuation()) {
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        const int a = m(pi, pj).valuation();
        for (std::size_t i = k; i < R; ++i)
            for (std::size_t j = k; j < C; ++j) {
                const LaurentSeries& e = m(i, j);
                if (!e.has_terms() && !e.exact() && e.truncation_order() <= a)
                    throw InsufficientTruncation(
                        "dvr_smith_form: pivot valuation not determined below truncation order");
            }
        m.swap_rows(k, pi);
        m.swap_cols(k, pj);
        const LaurentSeries pinv = m(k, k).inverse(working);
        for (std::size_t i = k + 1; i < R; ++i) {
            if (!m(i, k).has_terms()) continue;
            LaurentSeries q = m(i, k) * pinv;
            for (std::size_t j = k; j < C; ++j) m(i, j) = m(i, j) - q * m(k, j);
        }
        for (std::size_t j = k + 1; j < C; ++j) {
            if (!m(k, j).has_terms()) continue;
            LaurentSeries q = m(k, j) * pinv;
            m(k, j) = m(k, j) - q * m(k, k);
        }
        exps.push_back(a);
        ++k;
    }
    for (std::size_t i = k; i < R; ++i)
        for (std::size_t j = k; j < C; ++j) {
            const LaurentSeries& e = m(i, j);
            if (e.known_zero()) continue;
            if (all_exact && e.truncation_order() > minor_bound) continue;
            throw InsufficientTruncation(
                "dvr_smith_form: rank not determined below truncation order");
        }
    return DvrSmithResult{std::move(exps)};
}

}  // namespace floer
