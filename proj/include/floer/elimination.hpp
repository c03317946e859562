#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "floer/errors.hpp"
#include "floer/matrix.hpp"
#include "floer/rational.hpp"
#include "floer/series.hpp"

namespace floer {

// Gaussian elimination over Q; pivot = first nonzero entry in column order,
// so results track the generator file order deterministically.
inline std::size_t rank_rational(Matrix<Rat> m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::size_t r = 0;
    for (std::size_t j = 0; j < C && r < R; ++j) {
        std::size_t p = r;
        while (p < R && is_zero(m(p, j))) ++p;
        if (p == R) continue;
        m.swap_rows(r, p);
        const Rat inv = Rat(1) / m(r, j);
        for (std::size_t i = r + 1; i < R; ++i) {
            if (is_zero(m(i, j))) continue;
            Rat f = m(i, j) * inv;
            for (std::size_t jj = j; jj < C; ++jj) m(i, jj) -= f * m(r, jj);
        }
        ++r;
    }
    return r;
}

// Basis of { x : m x = 0 }, one vector per free column, deterministic.
inline std::vector<std::vector<Rat>> kernel_rational(Matrix<Rat> m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::optional<std::size_t>> pivot_row_of_col(C);
    std::size_t r = 0;
    for (std::size_t j = 0; j < C && r < R; ++j) {
        std::size_t p = r;
        while (p < R && is_zero(m(p, j))) ++p;
        if (p == R) continue;
        m.swap_rows(r, p);
        const Rat inv = Rat(1) / m(r, j);
        for (std::size_t jj = j; jj < C; ++jj) m(r, jj) *= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || is_zero(m(i, j))) continue;
            Rat f = m(i, j);
            for (std::size_t jj = j; jj < C; ++jj) m(i, jj) -= f * m(r, jj);
        }
        pivot_row_of_col[j] = r;
        ++r;
    }
    std::vector<std::vector<Rat>> basis;
    for (std::size_t j = 0; j < C; ++j) {
        if (pivot_row_of_col[j]) continue;
        std::vector<Rat> v(C, Rat(0));
        v[j] = Rat(1);
        for (std::size_t jj = 0; jj < C; ++jj)
            if (pivot_row_of_col[jj]) v[jj] = -m(*pivot_row_of_col[jj], j);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Row echelon machine over Q with augmented tag tracking. Tagged insertions
// carry a unit tag vector; every row maintains the invariant
//   w == sum_t tagvec[t] * (t-th tagged original)  (mod untagged originals),
// so solve() expresses a vector over the tagged originals modulo the rest.
// Pivot order is coordinate order, i.e. generator file order.
class TaggedEchelon {
public:
    explicit TaggedEchelon(std::size_t ambient, std::size_t tag_count = 0)
        : ambient_(ambient), tags_(tag_count) {}

    std::size_t dim() const { return rows_.size(); }

    bool insert(std::vector<Rat> v) { return insert_impl(std::move(v), std::vector<Rat>(tags_, Rat(0))); }

    bool insert_tagged(std::vector<Rat> v, std::size_t tag) {
        std::vector<Rat> tv(tags_, Rat(0));
        tv[tag] = Rat(1);
        return insert_impl(std::move(v), std::move(tv));
    }

    bool contains(std::vector<Rat> v) const {
        std::vector<Rat> tacc(tags_, Rat(0));
        reduce(v, tacc);
        return all_zero(v);
    }

    // Coordinates of v over the tagged originals (mod untagged span), or
    // nullopt when v lies outside the span entirely.
    std::optional<std::vector<Rat>> solve(std::vector<Rat> v) const {
        std::vector<Rat> tacc(tags_, Rat(0));
        reduce(v, tacc);
        if (!all_zero(v)) return std::nullopt;
        return tacc;
    }

private:
    struct Row {
        std::size_t pivot;
        std::vector<Rat> w;       // normalized: w[pivot] == 1
        std::vector<Rat> tagvec;  // expansion of w over tagged originals
    };

    std::size_t ambient_;
    std::size_t tags_;
    std::vector<Row> rows_;  // pivots strictly increasing

    static bool all_zero(const std::vector<Rat>& v) {
        for (const Rat& x : v)
            if (!is_zero(x)) return false;
        return true;
    }

    void reduce(std::vector<Rat>& v, std::vector<Rat>& tacc) const {
        for (const Row& row : rows_) {
            if (is_zero(v[row.pivot])) continue;
            Rat f = v[row.pivot];
            for (std::size_t j = row.pivot; j < ambient_; ++j) v[j] -= f * row.w[j];
            for (std::size_t t = 0; t < tags_; ++t) tacc[t] += f * row.tagvec[t];
        }
    }

    bool insert_impl(std::vector<Rat> v, std::vector<Rat> tagvec) {
        for (const Row& row : rows_) {
            if (is_zero(v[row.pivot])) continue;
            Rat f = v[row.pivot];
            for (std::size_t j = row.pivot; j < ambient_; ++j) v[j] -= f * row.w[j];
            for (std::size_t t = 0; t < tags_; ++t) tagvec[t] -= f * row.tagvec[t];
        }
        std::size_t p = 0;
        while (p < ambient_ && is_zero(v[p])) ++p;
        if (p == ambient_) return false;
        Rat inv = Rat(1) / v[p];
        for (std::size_t j = p; j < ambient_; ++j) v[j] *= inv;
        for (std::size_t t = 0; t < tags_; ++t) tagvec[t] *= inv;
        Row row{p, std::move(v), std::move(tagvec)};
        auto pos = std::lower_bound(rows_.begin(), rows_.end(), row,
                                    [](const Row& a, const Row& b) { return a.pivot < b.pivot; });
        rows_.insert(pos, std::move(row));
        return true;
    }
};

// Rank over the Laurent field Q((t)). Pivoting favours minimal valuation;
// quotients invert the pivot at a working order derived from the exponent
// window of the input, which certifies apparent zeros of exact input
// (nonzero Schur-complement entries are ratios of consecutive minors, so
// their valuations stay inside the window). An apparent zero that cannot be
// certified raises InsufficientTruncation.
inline std::size_t rank_laurent(Matrix<LaurentSeries> m) {
    const std::size_t R = m.rows(), C = m.cols();
    bool all_exact = true;
    long lo = 0, hi = 0;
    bool any_terms = false;
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) {
            const LaurentSeries& e = m(i, j);
            if (!e.exact()) all_exact = false;
            if (e.has_terms()) {
                if (!any_terms) {
                    lo = e.valuation();
                    hi = e.max_exponent();
                    any_terms = true;
                } else {
                    lo = std::min(lo, static_cast<long>(e.valuation()));
                    hi = std::max(hi, static_cast<long>(e.max_exponent()));
                }
            }
        }
    const long msize = static_cast<long>(std::min(R, C));
    const long cert = msize * hi - (msize - 1) * lo + 1;
    const int working =
        order_clamp(2 * (cert > 0 ? cert : -cert) + 2 * (hi - lo) + kDefaultOrder + 8);

    std::size_t rank = 0;
    for (std::size_t j = 0; j < C && rank < R; ++j) {
        std::size_t p = R;
        for (std::size_t i = rank; i < R; ++i) {
            if (!m(i, j).has_terms()) continue;
            if (p == R || m(i, j).valuation() < m(p, j).valuation()) p = i;
        }
        if (p == R) {
            for (std::size_t i = rank; i < R; ++i) {
                const LaurentSeries& e = m(i, j);
                if (e.known_zero()) continue;
                if (all_exact && e.truncation_order() > cert) continue;
                throw InsufficientTruncation(
                    "rank over Q((t)) not determined below truncation order");
            }
            continue;
        }
        m.swap_rows(rank, p);
        const int a = m(rank, j).valuation();
        const LaurentSeries pinv = m(rank, j).inverse(working);
        for (std::size_t i = rank + 1; i < R; ++i) {
            const LaurentSeries& e = m(i, j);
            if (e.known_zero()) continue;
            if (!e.has_terms()) {
                // The hidden part of e would be eliminated against the pivot,
                // smearing terms of valuation >= trunc(e) - a into the rest
                // of the row; cap those truncations accordingly.
                const int hidden = e.truncation_order() - a;
                for (std::size_t jj = j + 1; jj < C; ++jj) {
                    const LaurentSeries& r = m(rank, jj);
                    if (r.known_zero()) continue;
                    const int vr = r.has_terms() ? r.valuation() : r.truncation_order();
                    m(i, jj) = m(i, jj).truncated(order_add(hidden, vr));
                }
                m(i, j) = LaurentSeries();
                continue;
            }
            LaurentSeries f = e * pinv;
            for (std::size_t jj = j; jj < C; ++jj) m(i, jj) = m(i, jj) - f * m(rank, jj);
        }
        ++rank;
    }
    return rank;
}

}  // namespace floer
