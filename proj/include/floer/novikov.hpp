#pragma once

#include <map>
#include <vector>

#include "floer/elimination.hpp"
#include "floer/floer_datum.hpp"
#include "floer/graded_complex.hpp"
#include "floer/smith.hpp"

namespace floer {

// A Floer complex with Novikov coefficients; entries record the energy level
// of each flow component as the t-exponent.
template <typename SeriesT>
struct NovikovComplex {
    GradedComplex<SeriesT> underlying;
    std::vector<FlowClass> level_data;
    int truncation_order = kOrderExact;  // datum entries are exact polynomials
};

inline NovikovComplex<PowerSeries> build_novikov_power(const FloerDatum& d) {
    NovikovComplex<PowerSeries> n;
    n.underlying = assemble_power_series(d);
    n.level_data = d.flows;
    return n;
}

inline NovikovComplex<LaurentSeries> build_novikov_laurent(const FloerDatum& d) {
    NovikovComplex<LaurentSeries> n;
    n.underlying = assemble_laurent(d);
    n.level_data = d.flows;
    return n;
}

// Base change Z[[t]] -> Q((t)).
inline GradedComplex<LaurentSeries> to_laurent_complex(const GradedComplex<PowerSeries>& c) {
    GradedComplex<LaurentSeries> out;
    out.kind = c.kind;
    out.modulus = c.modulus;
    out.generators = c.generators;
    for (const auto& [n, b] : c.boundaries) {
        Matrix<LaurentSeries> m(b.rows(), b.cols());
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) = b(i, j).to_laurent();
        out.boundaries[n] = std::move(m);
    }
    return out;
}

// Homology dimensions over the field Q((t)), one per occupied grade.
inline std::map<int, long> hf_gamma(const GradedComplex<LaurentSeries>& c) {
    c.check_complex();
    std::map<int, long> out;
    for (const auto& [n, gens] : c.generators) {
        if (gens.empty()) continue;
        const int above = c.kind == GradingKind::Cyclic
                              ? c.normalize_grade(static_cast<long>(n) + 1)
                              : n + 1;
        out[n] = static_cast<long>(gens.size()) -
                 static_cast<long>(rank_laurent(c.boundary_from(n))) -
                 static_cast<long>(rank_laurent(c.boundary_from(above)));
    }
    return out;
}

// Chain-level evaluation at t = 0: every entry replaced by its constant term.
inline GradedComplex<Int> evaluate_t0(const GradedComplex<PowerSeries>& c) {
    GradedComplex<Int> out;
    out.kind = c.kind;
    out.modulus = c.modulus;
    out.generators = c.generators;
    for (const auto& [n, b] : c.boundaries) {
        Matrix<Int> m(b.rows(), b.cols());
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) = b(i, j).eval_t0();
        out.boundaries[n] = std::move(m);
    }
    return out;
}

struct DvrHomology {
    long free_rank = 0;
    std::vector<int> t_exponents;  // torsion factors t^{a_i}, a_i > 0

    friend bool operator==(const DvrHomology& a, const DvrHomology& b) {
        return a.free_rank == b.free_rank && a.t_exponents == b.t_exponents;
    }
};

// Homology of the complex as a Q[[t]]-module (base change from Z[[t]]):
// free rank plus t-power torsion from the valuation Smith form.
inline std::map<int, DvrHomology> t_torsion(const GradedComplex<PowerSeries>& c) {
    GradedComplex<LaurentSeries> q = to_laurent_complex(c);
    q.check_complex();
    std::map<int, DvrHomology> out;
    for (const auto& [n, gens] : q.generators) {
        if (gens.empty()) continue;
        const int above = q.kind == GradingKind::Cyclic
                              ? q.normalize_grade(static_cast<long>(n) + 1)
                              : n + 1;
        DvrSmithResult below = dvr_smith_form(q.boundary_from(n));
        DvrSmithResult incoming = dvr_smith_form(q.boundary_from(above));
        DvrHomology h;
        h.free_rank = static_cast<long>(gens.size()) - static_cast<long>(below.rank()) -
                      static_cast<long>(incoming.rank());
        for (int a : incoming.exponents)
            if (a > 0) h.t_exponents.push_back(a);
        out[n] = std::move(h);
    }
    return out;
}

}  // namespace floer
