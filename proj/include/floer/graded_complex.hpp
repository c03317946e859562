#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "floer/elimination.hpp"
#include "floer/errors.hpp"
#include "floer/matrix.hpp"
#include "floer/smith.hpp"

namespace floer {

enum class GradingKind { Integer, Cyclic };

// Finitely generated graded chain complex. Boundary matrices are stored per
// source grade; the matrix for grade n maps C_n into C_{n-1} (mod ell when
// cyclic), with entry (b, a) = <boundary(a), b>.
template <typename T>
struct GradedComplex {
    GradingKind kind = GradingKind::Integer;
    int modulus = 0;  // ell when cyclic
    std::map<int, std::vector<std::string>> generators;
    std::map<int, Matrix<T>> boundaries;

    int normalize_grade(long g) const {
        if (kind == GradingKind::Integer) return static_cast<int>(g);
        long m = g % modulus;
        if (m < 0) m += modulus;
        return static_cast<int>(m);
    }

    int grade_below(int n) const { return normalize_grade(static_cast<long>(n) - 1); }

    std::size_t dim(int n) const {
        auto it = generators.find(n);
        return it == generators.end() ? 0 : it->second.size();
    }

    Matrix<T> boundary_from(int n) const {
        auto it = boundaries.find(n);
        if (it != boundaries.end()) return it->second;
        return Matrix<T>(dim(grade_below(n)), dim(n));
    }

    std::set<int> occupied_grades() const {
        std::set<int> out;
        for (const auto& [g, gens] : generators)
            if (!gens.empty()) out.insert(g);
        return out;
    }

    // The boundary must square to zero; throws NotAComplex otherwise.
    void check_complex() const {
        for (const auto& [n, b] : boundaries) {
            if (b.rows() != dim(grade_below(n)) || b.cols() != dim(n))
                throw NotAComplex("boundary matrix shape mismatch at grade " + std::to_string(n));
            Matrix<T> below = boundary_from(grade_below(n));
            if (below.cols() == 0 || b.cols() == 0) continue;
            if (!(below * b).all_zero())
                throw NotAComplex("boundary does not square to zero at grade " + std::to_string(n));
        }
    }

    // The orientation-reversed complex: same generators at negated grades,
    // transposed boundary matrices. An arrow C_n -> C_{n-1} here becomes
    // C_{-(n-1)} -> C_{-n} there, still of degree -1.
    GradedComplex<T> transposed() const {
        GradedComplex<T> out;
        out.kind = kind;
        out.modulus = modulus;
        for (const auto& [n, gens] : generators) out.generators[normalize_grade(-n)] = gens;
        for (const auto& [n, b] : boundaries)
            out.boundaries[normalize_grade(-(static_cast<long>(n) - 1))] = b.transposed();
        return out;
    }
};

// free_rank plus torsion: invariant factors over Z (each dividing the next),
// or powers t^{a_i} over Q[[t]]; both empty over a field.
struct HomologyGroup {
    long free_rank = 0;
    std::vector<Int> torsion;
    std::vector<int> t_exponents;

    friend bool operator==(const HomologyGroup& a, const HomologyGroup& b) {
        return a.free_rank == b.free_rank && a.torsion == b.torsion &&
               a.t_exponents == b.t_exponents;
    }
};

// Homology over Z at grade n: kernel/image via Smith normal form. The free
// rank is dim C_n - rank d_n - rank d_{n+1}; the torsion subgroup collects
// the nonunit invariant factors of d_{n+1}.
inline HomologyGroup homology_z(const GradedComplex<Int>& c, int n) {
    c.check_complex();
    HomologyGroup h;
    const long dim_n = static_cast<long>(c.dim(n));
    if (dim_n == 0) return h;
    const int above = c.kind == GradingKind::Cyclic ? c.normalize_grade(static_cast<long>(n) + 1)
                                                    : n + 1;
    const std::size_t rank_n = smith_normal_form(c.boundary_from(n)).rank();
    SmithResult snf_above = smith_normal_form(c.boundary_from(above));
    h.free_rank = dim_n - static_cast<long>(rank_n) - static_cast<long>(snf_above.rank());
    for (const Int& d : snf_above.invariant_factors())
        if (cmp(d, 1) != 0) h.torsion.push_back(d);
    return h;
}

// Homology dimension over Q (or any field embedding the entries).
inline HomologyGroup homology_q(const GradedComplex<Rat>& c, int n) {
    c.check_complex();
    HomologyGroup h;
    const long dim_n = static_cast<long>(c.dim(n));
    if (dim_n == 0) return h;
    const int above = c.kind == GradingKind::Cyclic ? c.normalize_grade(static_cast<long>(n) + 1)
                                                    : n + 1;
    h.free_rank = dim_n - static_cast<long>(rank_rational(c.boundary_from(n))) -
                  static_cast<long>(rank_rational(c.boundary_from(above)));
    return h;
}

inline GradedComplex<Rat> to_rational(const GradedComplex<Int>& c) {
    GradedComplex<Rat> out;
    out.kind = c.kind;
    out.modulus = c.modulus;
    out.generators = c.generators;
    for (const auto& [n, b] : c.boundaries) out.boundaries[n] = b.template cast<Rat>();
    return out;
}

}  // namespace floer
