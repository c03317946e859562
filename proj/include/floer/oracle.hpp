#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "floer/floer_datum.hpp"
#include "floer/graded_complex.hpp"
#include "floer/rng.hpp"
#include "floer/spectral.hpp"

// Independent brute-force verifiers and the synthetic datum generator. The
// elimination code here is deliberately separate from the main path: rank by
// division-free cross-multiplication, kernels by a self-contained Gauss with
// last-nonzero pivoting.
namespace floer::oracle {

inline std::size_t ff_rank(Matrix<Rat> m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::size_t r = 0;
    Rat prev(1);
    for (std::size_t j = 0; j < C && r < R; ++j) {
        std::size_t p = r;
        while (p < R && is_zero(m(p, j))) ++p;
        if (p == R) continue;
        m.swap_rows(r, p);
        // One-step fraction-free update (Bareiss): entries stay minor-sized.
        for (std::size_t i = r + 1; i < R; ++i) {
            for (std::size_t jj = j + 1; jj < C; ++jj)
                m(i, jj) = (m(i, jj) * m(r, j) - m(r, jj) * m(i, j)) / prev;
            m(i, j) = Rat(0);
        }
        prev = m(r, j);
        ++r;
    }
    return r;
}

// Rank over Q((t)) on exact Laurent-polynomial entries, division-free.
inline std::size_t ff_rank_laurent(Matrix<LaurentSeries> m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::size_t r = 0;
    for (std::size_t j = 0; j < C && r < R; ++j) {
        std::size_t p = r;
        while (p < R && !m(p, j).has_terms()) ++p;
        if (p == R) continue;
        m.swap_rows(r, p);
        for (std::size_t i = r + 1; i < R; ++i) {
            if (!m(i, j).has_terms()) continue;
            LaurentSeries a = m(r, j), b = m(i, j);
            for (std::size_t jj = j; jj < C; ++jj) m(i, jj) = m(i, jj) * a - m(r, jj) * b;
        }
        ++r;
    }
    return r;
}

// Kernel basis over Q, last-nonzero pivoting (any pivot is valid for span
// computations; the point is only to be a different code path).
inline std::vector<std::vector<Rat>> kernel(Matrix<Rat> m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<long> pivot_col_of_row(R, -1);
    std::vector<bool> is_pivot_col(C, false);
    std::size_t r = 0;
    for (std::size_t j = C; j-- > 0 && r < R;) {
        std::size_t p = r;
        while (p < R && is_zero(m(p, j))) ++p;
        if (p == R) continue;
        m.swap_rows(r, p);
        Rat inv = Rat(1) / m(r, j);
        for (std::size_t jj = 0; jj < C; ++jj) m(r, jj) *= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || is_zero(m(i, j))) continue;
            Rat f = m(i, j);
            for (std::size_t jj = 0; jj < C; ++jj) m(i, jj) -= f * m(r, jj);
        }
        pivot_col_of_row[r] = static_cast<long>(j);
        is_pivot_col[j] = true;
        ++r;
    }
    std::vector<std::vector<Rat>> out;
    for (std::size_t j = 0; j < C; ++j) {
        if (is_pivot_col[j]) continue;
        std::vector<Rat> v(C, Rat(0));
        v[j] = Rat(1);
        for (std::size_t i = 0; i < r; ++i)
            if (pivot_col_of_row[i] >= 0) v[pivot_col_of_row[i]] = -m(i, j);
        out.push_back(std::move(v));
    }
    return out;
}

// Per-grade homology dimensions of a field-coefficient complex.
inline std::map<int, long> brute_homology(const GradedComplex<Rat>& c) {
    std::map<int, long> out;
    for (const auto& [n, gens] : c.generators) {
        if (gens.empty()) continue;
        const int above = c.kind == GradingKind::Cyclic
                              ? c.normalize_grade(static_cast<long>(n) + 1)
                              : n + 1;
        out[n] = static_cast<long>(gens.size()) -
                 static_cast<long>(ff_rank(c.boundary_from(n))) -
                 static_cast<long>(ff_rank(c.boundary_from(above)));
    }
    return out;
}

inline std::map<int, long> brute_homology_laurent(const GradedComplex<LaurentSeries>& c) {
    std::map<int, long> out;
    for (const auto& [n, gens] : c.generators) {
        if (gens.empty()) continue;
        const int above = c.kind == GradingKind::Cyclic
                              ? c.normalize_grade(static_cast<long>(n) + 1)
                              : n + 1;
        out[n] = static_cast<long>(gens.size()) -
                 static_cast<long>(ff_rank_laurent(c.boundary_from(n))) -
                 static_cast<long>(ff_rank_laurent(c.boundary_from(above)));
    }
    return out;
}

// The associated graded of the filtration induced on homology, computed by
// explicit subspace images: F_q HF_n = Im(H(F_q) -> HF_n), and the cell
// dimension is dim F_q HF_n - dim F_{q+ell} HF_n.
inline std::map<std::pair<long, int>, long> brute_e_infinity(const FilteredComplex& f) {
    std::map<std::pair<long, int>, long> out;
    for (int n = 0; n < f.ell; ++n) {
        const std::size_t dim_n = f.dim(n);
        if (dim_n == 0) continue;
        Matrix<Rat> bn = f.boundary_from(n);
        Matrix<Rat> bn1 = f.boundary_from(f.residue(n + 1));
        const auto& lifts = f.lifts_of(n);

        // Images of the boundary from above.
        std::vector<std::vector<Rat>> bdry;
        for (std::size_t j = 0; j < bn1.cols(); ++j) {
            std::vector<Rat> v(dim_n, Rat(0));
            for (std::size_t i = 0; i < dim_n; ++i) v[i] = bn1(i, j);
            bdry.push_back(std::move(v));
        }

        auto filtered_cycle_dim = [&](long q) -> long {
            // span(ker(bn) cut to F_q, plus boundaries), minus boundaries
            std::vector<std::size_t> cols;
            for (std::size_t j = 0; j < dim_n; ++j)
                if (lifts[j] >= q) cols.push_back(j);
            Matrix<Rat> cut(bn.rows(), cols.size());
            for (std::size_t i = 0; i < bn.rows(); ++i)
                for (std::size_t c = 0; c < cols.size(); ++c) cut(i, c) = bn(i, cols[c]);
            std::vector<std::vector<Rat>> vecs;
            for (const auto& k : kernel(cut)) {
                std::vector<Rat> v(dim_n, Rat(0));
                for (std::size_t c = 0; c < cols.size(); ++c) v[cols[c]] = k[c];
                vecs.push_back(std::move(v));
            }
            for (const auto& b : bdry) vecs.push_back(b);
            Matrix<Rat> stacked(vecs.size(), dim_n);
            for (std::size_t i = 0; i < vecs.size(); ++i)
                for (std::size_t j = 0; j < dim_n; ++j) stacked(i, j) = vecs[i][j];
            Matrix<Rat> bonly(bdry.size(), dim_n);
            for (std::size_t i = 0; i < bdry.size(); ++i)
                for (std::size_t j = 0; j < dim_n; ++j) bonly(i, j) = bdry[i][j];
            return static_cast<long>(ff_rank(stacked)) - static_cast<long>(ff_rank(bonly));
        };

        for (long q : f.occupied(n)) {
            long d = filtered_cycle_dim(q) - filtered_cycle_dim(q + f.ell);
            if (d != 0) out[{q, n}] = d;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Synthetic datum generation.
// ---------------------------------------------------------------------------

struct GeneratorConfig {
    DatumMode mode = DatumMode::Nontorsion;
    bool block_diagonal = false;
    std::uint64_t seed = 0;
    int num_points = 0;
    int ell = 2;
    int max_level = 2;
    Rat density = rat_of(1, 2);
};

namespace detail {

using Poly = std::map<int, long>;  // exponent -> count
using Entry = std::pair<std::size_t, std::size_t>;  // (target, source)

inline void prune(Poly& p) {
    for (auto it = p.begin(); it != p.end();)
        it = it->second == 0 ? p.erase(it) : std::next(it);
}

inline long max_abs(const std::map<Entry, Poly>& d) {
    long m = 0;
    for (const auto& [e, p] : d)
        for (const auto& [exp, c] : p) m = std::max(m, c < 0 ? -c : c);
    return m;
}

}  // namespace detail

// Deterministic-per-seed synthetic data. The square-zero boundary is built
// structurally: a source/target matching gives a boundary with no two-step
// compositions at all, and random grade-preserving elementary conjugations
// D -> E D E^{-1} mix the entries while keeping D^2 = 0 exactly, the grade
// bookkeeping legal, and every count an integer.
inline FloerDatum generate(const GeneratorConfig& cfg) {
    if (cfg.num_points < 0) throw GenerationFailed("num_points must be non-negative");
    if (!(cfg.density > 0) || cfg.density > 1)
        throw GenerationFailed("density must lie in (0, 1]");
    const bool nontorsion = cfg.mode == DatumMode::Nontorsion;
    if (nontorsion && cfg.ell < 1) throw GenerationFailed("ell must be >= 1");
    if (cfg.max_level < 0) throw GenerationFailed("max_level must be >= 0");
    if (cfg.block_diagonal && !nontorsion)
        throw GenerationFailed("block data are nontorsion data");

    SplitMix64 rng(cfg.seed);
    FloerDatum d;
    d.mode = cfg.mode;
    d.block_diagonal = cfg.block_diagonal;
    const int P = cfg.num_points;

    // Lift grades.
    std::vector<long> ind(P);
    const long span = nontorsion ? 3L * cfg.ell : std::max(3L, static_cast<long>(P) / 2 + 1);
    for (int i = 0; i < P; ++i) ind[i] = rng.range(0, span - 1);

    if (nontorsion) {
        d.ell = cfg.ell;
        d.omega = Rat(0);
    } else {
        d.e_rho = Rat(1);
    }

    // CSD lifts: strictly increasing with the lift grade keeps every minimal
    // flow strictly decreasing and every window constraint satisfied.
    std::vector<int> order(P);
    for (int i = 0; i < P; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return ind[a] < ind[b]; });
    std::vector<Rat> csd(P);
    for (int r = 0; r < P; ++r) {
        Rat frac = rat_of(r + 1, P + 1);
        csd[order[r]] = nontorsion ? Rat(cfg.ell) * frac : frac;
    }

    for (int i = 0; i < P; ++i) {
        CriticalPoint p;
        p.id = "p" + std::to_string(i);
        p.spinc_label = "s0";
        p.ind_lift = ind[i];
        if (nontorsion)
            p.grade_mod_ell = static_cast<int>(((ind[i] % cfg.ell) + cfg.ell) % cfg.ell);
        p.csd_lift = csd[i];
        d.points.push_back(std::move(p));
    }

    // Matching: each point is used at most once, as a source or as a target,
    // so the seed boundary has no composable flows.
    const int min_level = (!nontorsion && cfg.mode == DatumMode::GammaLaurent) ? 1 : 0;
    std::vector<int> visit(order);
    for (std::size_t i = static_cast<std::size_t>(P); i > 1; --i)
        std::swap(visit[i - 1], visit[rng.below(i)]);
    enum class Use { Free, Source, Target };
    std::vector<Use> used(P, Use::Free);
    std::map<detail::Entry, detail::Poly> D;
    for (int s : visit) {
        if (used[s] != Use::Free) continue;
        if (!rng.chance(cfg.density)) continue;
        std::vector<std::pair<int, int>> candidates;  // (target, level)
        for (int t = 0; t < P; ++t) {
            if (t == s || used[t] != Use::Free) continue;
            if (nontorsion) {
                long diff = ind[t] - (ind[s] - 1);
                if (diff < 0 || diff % cfg.ell != 0) continue;
                long level = diff / cfg.ell;
                if (cfg.block_diagonal && level != 0) continue;
                if (level > cfg.max_level) continue;
                candidates.push_back({t, static_cast<int>(level)});
            } else {
                if (ind[t] != ind[s] - 1) continue;
                candidates.push_back(
                    {t, static_cast<int>(rng.range(min_level, std::max(min_level, cfg.max_level)))});
            }
        }
        if (candidates.empty()) continue;
        auto [t, level] = candidates[rng.below(candidates.size())];
        long count = rng.nonzero_range(-2, 2);
        D[{static_cast<std::size_t>(t), static_cast<std::size_t>(s)}][level] = count;
        used[s] = Use::Source;
        used[t] = Use::Target;
    }

    // Grade-preserving elementary conjugations. A row operation mixing two
    // same-grade targets pairs with the inverse column operation on them as
    // sources; entries stay between legal grade pairs and D^2 stays zero.
    std::map<long, std::vector<int>> by_grade;
    for (int i = 0; i < P; ++i) by_grade[ind[i]].push_back(i);
    std::vector<long> grades_with_pairs;
    for (const auto& [g, pts] : by_grade)
        if (pts.size() >= 2) grades_with_pairs.push_back(g);
    if (!grades_with_pairs.empty()) {
        const int ops = std::min(P, 40);
        for (int op = 0; op < ops; ++op) {
            long g = grades_with_pairs[rng.below(grades_with_pairs.size())];
            const auto& pts = by_grade[g];
            std::size_t ai = rng.below(pts.size());
            std::size_t bi = rng.below(pts.size());
            if (ai == bi) continue;
            const std::size_t i = static_cast<std::size_t>(pts[ai]);
            const std::size_t j = static_cast<std::size_t>(pts[bi]);
            const long c = rng.below(2) == 0 ? 1 : -1;
            const int shift = nontorsion ? 0 : static_cast<int>(rng.range(0, cfg.max_level));
            std::map<detail::Entry, detail::Poly> next = D;
            // row op: target i gains c * t^shift * row(j)
            for (const auto& [e, p] : D) {
                if (e.first != j) continue;
                for (const auto& [exp, cnt] : p) next[{i, e.second}][exp + shift] += c * cnt;
            }
            // column op: source j loses c * t^shift * col(i)
            for (const auto& [e, p] : D) {
                if (e.second != i) continue;
                for (const auto& [exp, cnt] : p) next[{e.first, j}][exp + shift] -= c * cnt;
            }
            for (auto& [e, p] : next) detail::prune(p);
            for (auto it = next.begin(); it != next.end();)
                it = it->second.empty() ? next.erase(it) : std::next(it);
            if (detail::max_abs(next) > 1000000) continue;  // keep counts desk-scale
            D = std::move(next);
        }
    }

    for (const auto& [e, p] : D)
        for (const auto& [exp, cnt] : p) {
            FlowClass f;
            f.from = d.points[e.second].id;
            f.to = d.points[e.first].id;
            f.count = cnt;
            if (nontorsion)
                f.level = static_cast<int>((ind[e.first] - ind[e.second] + 1) / cfg.ell);
            else
                f.level = exp;
            d.flows.push_back(std::move(f));
        }
    // Nontorsion entries are single-level (the level is grade-determined), so
    // the per-exponent loop above emits exactly one flow per pair; series
    // modes emit one flow per exponent.
    std::sort(d.flows.begin(), d.flows.end(), [](const FlowClass& a, const FlowClass& b) {
        return std::tie(a.from, a.to, a.level) < std::tie(b.from, b.to, b.level);
    });

    ValidationReport rep = validate(d);
    if (!rep.ok()) throw GenerationFailed("generated datum failed validation");
    return d;
}

}  // namespace floer::oracle
