#pragma once

#include <atomic>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "floer/elimination.hpp"
#include "floer/errors.hpp"
#include "floer/floer_datum.hpp"
#include "floer/graded_complex.hpp"

namespace floer {

// Evaluate fn over 0..n-1, on a bounded set of threads when worthwhile;
// results merge by index, so the outcome is independent of scheduling.
template <typename Fn>
auto indexed_map(std::size_t n, Fn fn) -> std::vector<decltype(fn(std::size_t(0)))> {
    using Out = decltype(fn(std::size_t(0)));
    std::vector<Out> out(n);
    const unsigned hw = std::thread::hardware_concurrency();
    if (n < 8 || hw < 2) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    const std::size_t workers = std::min<std::size_t>(hw, 4);
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) out[i] = fn(i);
        });
    for (auto& t : pool) t.join();
    return out;
}

// The Z_ell-graded total complex together with the lift grading that filters
// it: F_q C_n is spanned by the generators of residue n with lift grade in
// {q, q+ell, ...}. The boundary is triangular for this filtration.
struct FilteredComplex {
    int ell = 1;
    std::map<int, std::vector<std::string>> gens;  // residue -> ids, file order
    std::map<int, std::vector<long>> lifts;        // residue -> lift grades, aligned
    std::map<int, Matrix<Rat>> bnd;                // residue n -> matrix into n-1
    long q_min = 0, q_max = -1;                    // occupied lift range

    bool empty() const { return q_max < q_min; }
    int residue(long q) const {
        long r = q % ell;
        if (r < 0) r += ell;
        return static_cast<int>(r);
    }
    std::size_t dim(int n) const {
        auto it = gens.find(n);
        return it == gens.end() ? 0 : it->second.size();
    }
    Matrix<Rat> boundary_from(int n) const {
        auto it = bnd.find(n);
        if (it != bnd.end()) return it->second;
        return Matrix<Rat>(dim(residue(n - 1)), dim(n));
    }
    const std::vector<long>& lifts_of(int n) const {
        static const std::vector<long> none;
        auto it = lifts.find(n);
        return it == lifts.end() ? none : it->second;
    }
    // Occupied lift grades of residue n.
    std::set<long> occupied(int n) const {
        std::set<long> out;
        for (long q : lifts_of(n)) out.insert(q);
        return out;
    }
};

inline FilteredComplex build_filtered(const FloerDatum& d) {
    if (d.mode != DatumMode::Nontorsion)
        throw Error("the filtration requires a nontorsion datum");
    GradedComplex<Int> total = assemble_cyclic_total(d);
    FilteredComplex f;
    f.ell = d.ell;
    f.gens = total.generators;
    for (const auto& [n, b] : total.boundaries) f.bnd[n] = b.template cast<Rat>();
    std::map<std::string, long> lift_of;
    for (const auto& p : d.points) lift_of[p.id] = p.ind_lift;
    bool first = true;
    for (const auto& [n, ids] : f.gens) {
        auto& ls = f.lifts[n];
        for (const auto& id : ids) {
            long q = lift_of.at(id);
            ls.push_back(q);
            if (first) {
                f.q_min = f.q_max = q;
                first = false;
            } else {
                f.q_min = std::min(f.q_min, q);
                f.q_max = std::max(f.q_max, q);
            }
        }
    }
    // Triangularity recheck: every boundary entry must not drop the lift
    // grade by more than one.
    for (const auto& [n, b] : f.bnd) {
        const auto& src = f.lifts_of(n);
        const auto& tgt = f.lifts_of(f.residue(n - 1));
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!is_zero(b(i, j)) && tgt[i] < src[j] - 1)
                    throw Error("filtration is not preserved by the boundary");
    }
    return f;
}

namespace detail {

// Z^k_{q,n} = { x in F_q C_n : boundary(x) in F_{floor} C_{n-1} }, as vectors
// in the coordinates of C_n.
inline std::vector<std::vector<Rat>> cycle_space(const FilteredComplex& f, long q, int n,
                                                 long floor) {
    const int res = f.residue(q);
    if (res != f.residue(n)) return {};
    const std::size_t dim_n = f.dim(res);
    if (dim_n == 0) return {};
    const auto& src_lift = f.lifts_of(res);
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < dim_n; ++j)
        if (src_lift[j] >= q) cols.push_back(j);
    if (cols.empty()) return {};
    const int below = f.residue(n - 1);
    const auto& tgt_lift = f.lifts_of(below);
    Matrix<Rat> b = f.boundary_from(res);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < tgt_lift.size(); ++i)
        if (tgt_lift[i] < floor) rows.push_back(i);
    Matrix<Rat> a(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) a(r, c) = b(rows[r], cols[c]);
    std::vector<std::vector<Rat>> out;
    for (auto& k : kernel_rational(a)) {
        std::vector<Rat> v(dim_n, Rat(0));
        for (std::size_t c = 0; c < cols.size(); ++c) v[cols[c]] = k[c];
        out.push_back(std::move(v));
    }
    return out;
}

inline std::vector<Rat> apply_boundary(const FilteredComplex& f, int n,
                                       const std::vector<Rat>& v) {
    const int res = f.residue(n);
    Matrix<Rat> b = f.boundary_from(res);
    std::vector<Rat> out(b.rows(), Rat(0));
    for (std::size_t j = 0; j < b.cols(); ++j) {
        if (is_zero(v[j])) continue;
        for (std::size_t i = 0; i < b.rows(); ++i) out[i] += b(i, j) * v[j];
    }
    return out;
}

}  // namespace detail

// One page of the spectral sequence: quotient bases per cell (q, n) plus the
// differential d^k: E^k_{q,n} -> E^k_{q-1+k*ell, n-1} in those bases.
struct SpectralPage {
    int k = 1;
    int ell = 1;
    std::map<std::pair<long, int>, std::vector<std::vector<Rat>>> cells;
    std::map<std::pair<long, int>, Matrix<Rat>> differentials;

    long dim(long q, int n) const {
        auto it = cells.find({q, n});
        return it == cells.end() ? 0 : static_cast<long>(it->second.size());
    }
    std::map<int, long> dims_by_residue() const {
        std::map<int, long> out;
        for (const auto& [key, basis] : cells) out[key.second] += static_cast<long>(basis.size());
        return out;
    }
    bool same_dims(const SpectralPage& other) const {
        auto collect = [](const SpectralPage& p) {
            std::map<std::pair<long, int>, long> d;
            for (const auto& [key, basis] : p.cells)
                if (!basis.empty()) d[key] = static_cast<long>(basis.size());
            return d;
        };
        return collect(*this) == collect(other);
    }
};

// The k-th page, k >= 1, by the explicit quotient formula
//   E^k_{q,n} = Z^k_{q,n} / ( Z^{k-1}_{q+ell,n} + d Z^{k-1}_{q+1-(k-1)ell, n+1} ).
inline SpectralPage page(const FilteredComplex& f, int k) {
    if (k < 1) throw Error("page index must be >= 1");
    SpectralPage out;
    out.k = k;
    out.ell = f.ell;
    if (f.empty()) return out;
    const long ell = f.ell;

    struct CellKey {
        long q;
        int n;
    };
    std::vector<CellKey> keys;
    for (int n = 0; n < f.ell; ++n)
        for (long q : f.occupied(n)) keys.push_back({q, n});

    struct CellData {
        std::vector<std::vector<Rat>> reps;
        TaggedEchelon solver{0};
    };
    auto compute = [&](std::size_t idx) {
        const auto [q, n] = keys[idx];
        const std::size_t dim_n = f.dim(n);
        auto zk = detail::cycle_space(f, q, n, q - 1 + k * ell);
        std::vector<std::vector<Rat>> denoms =
            detail::cycle_space(f, q + ell, n, q - 1 + k * ell);
        for (const auto& v : detail::cycle_space(f, q + 1 - (k - 1) * ell, f.residue(n + 1), q))
            denoms.push_back(detail::apply_boundary(f, f.residue(n + 1), v));
        // Select representatives against the denominator span.
        TaggedEchelon sel(dim_n);
        for (const auto& v : denoms) sel.insert(v);
        CellData data;
        for (auto& z : zk)
            if (sel.insert(z)) data.reps.push_back(std::move(z));
        // Solver expressing vectors of Z^k over the representatives modulo
        // the denominator.
        data.solver = TaggedEchelon(dim_n, data.reps.size());
        for (auto& v : denoms) data.solver.insert(std::move(v));
        for (std::size_t t = 0; t < data.reps.size(); ++t) data.solver.insert_tagged(data.reps[t], t);
        return data;
    };
    std::vector<CellData> cells = indexed_map(keys.size(), compute);

    std::map<std::pair<long, int>, std::size_t> index_of;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        index_of[{keys[i].q, keys[i].n}] = i;
        if (!cells[i].reps.empty()) out.cells[{keys[i].q, keys[i].n}] = cells[i].reps;
    }

    // d^k: (q, n) -> (q - 1 + k*ell, n - 1), induced by the boundary.
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (cells[i].reps.empty()) continue;
        const auto [q, n] = keys[i];
        const long tq = q - 1 + k * ell;
        const int tn = f.residue(n - 1);
        auto it = index_of.find({tq, tn});
        const std::size_t tdim = it == index_of.end() ? 0 : cells[it->second].reps.size();
        Matrix<Rat> dk(tdim, cells[i].reps.size());
        // A target at an unoccupied lift grade is a zero cell: Z^k there
        // coincides with its own denominator, so the image must reduce to
        // zero against it.
        TaggedEchelon absent_den(f.dim(tn));
        if (it == index_of.end() && f.dim(tn) > 0) {
            for (auto& v : detail::cycle_space(f, tq + ell, tn, tq - 1 + k * ell))
                absent_den.insert(std::move(v));
            for (const auto& v :
                 detail::cycle_space(f, tq + 1 - (k - 1) * ell, f.residue(tn + 1), tq))
                absent_den.insert(detail::apply_boundary(f, f.residue(tn + 1), v));
        }
        for (std::size_t j = 0; j < cells[i].reps.size(); ++j) {
            std::vector<Rat> w = detail::apply_boundary(f, n, cells[i].reps[j]);
            if (it == index_of.end()) {
                if (f.dim(tn) > 0 && !absent_den.contains(std::move(w)))
                    throw Error("differential missed an empty target cell");
                continue;
            }
            auto coords = cells[it->second].solver.solve(std::move(w));
            if (!coords) throw Error("differential left the target page cell");
            for (std::size_t t = 0; t < tdim; ++t) dk(t, j) = (*coords)[t];
        }
        out.differentials[{q, n}] = std::move(dk);
    }
    return out;
}

// Dimensions of HF_n tensor Q for the total Z_ell-graded complex.
inline std::map<int, long> hf_rational_dims(const FilteredComplex& f) {
    std::map<int, long> out;
    for (int n = 0; n < f.ell; ++n) {
        long d = static_cast<long>(f.dim(n));
        if (d == 0) {
            out[n] = 0;
            continue;
        }
        out[n] = d - static_cast<long>(rank_rational(f.boundary_from(n))) -
                 static_cast<long>(rank_rational(f.boundary_from(f.residue(n + 1))));
    }
    return out;
}

struct ConvergenceReport {
    SpectralPage e_infinity;
    int stabilized_at = 1;
    std::map<int, long> e_infinity_sums;  // per residue: sum_q dim E^inf_{q,n}
    std::map<int, long> hf_dims;          // per residue: dim HF_n tensor Q
    bool match = false;
};

// Pages stabilize once k*ell clears the filtration width; the stabilized page
// is E^infinity and its column sums must reproduce the Z_ell-graded homology.
inline ConvergenceReport converge(const FilteredComplex& f) {
    ConvergenceReport rep;
    const long width = f.empty() ? 0 : f.q_max - f.q_min;
    int k_stab = 1;
    while (static_cast<long>(k_stab) * f.ell < width + 2) ++k_stab;
    rep.stabilized_at = k_stab;
    rep.e_infinity = page(f, k_stab);
    for (int n = 0; n < f.ell; ++n) rep.e_infinity_sums[n] = 0;
    for (const auto& [key, basis] : rep.e_infinity.cells)
        rep.e_infinity_sums[key.second] += static_cast<long>(basis.size());
    rep.hf_dims = hf_rational_dims(f);
    rep.match = rep.e_infinity_sums == rep.hf_dims;
    return rep;
}

}  // namespace floer
