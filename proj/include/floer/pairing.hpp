#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "floer/novikov.hpp"

namespace floer {

// A cycle in the Gamma-complex with Q((t)) coefficients: the shape a relative
// invariant of a bounding 4-manifold takes.
struct RelativeInvariant {
    std::map<std::string, LaurentSeries> chain;
    long grade = 0;
    std::string label;
    std::vector<std::string> universe;  // sorted ids of the ambient complex
};

namespace detail {

inline std::vector<std::string> universe_of(const GradedComplex<LaurentSeries>& c) {
    std::vector<std::string> out;
    for (const auto& [g, gens] : c.generators) out.insert(out.end(), gens.begin(), gens.end());
    std::sort(out.begin(), out.end());
    return out;
}

// Locate the grade and offset of an id.
inline std::pair<int, std::size_t> locate(const GradedComplex<LaurentSeries>& c,
                                          const std::string& id) {
    for (const auto& [g, gens] : c.generators)
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (gens[i] == id) return {g, i};
    throw Error("unknown point id '" + id + "'");
}

}  // namespace detail

// Verify that a chain supported in a single grade is a cycle; returns the
// offending image when it is not.
inline void check_cycle(const GradedComplex<LaurentSeries>& c, int grade,
                        const std::map<std::string, LaurentSeries>& chain) {
    const auto& gens = c.generators.count(grade) ? c.generators.at(grade)
                                                 : std::vector<std::string>{};
    Matrix<LaurentSeries> b = c.boundary_from(grade);
    const auto& below = c.generators.count(c.grade_below(grade))
                            ? c.generators.at(c.grade_below(grade))
                            : std::vector<std::string>{};
    std::vector<LaurentSeries> image(b.rows());
    for (std::size_t j = 0; j < gens.size(); ++j) {
        auto it = chain.find(gens[j]);
        if (it == chain.end() || !it->second.has_terms()) continue;
        for (std::size_t i = 0; i < b.rows(); ++i) {
            if (!b(i, j).has_terms()) continue;
            image[i] = image[i] + b(i, j) * it->second;
        }
    }
    for (std::size_t i = 0; i < image.size(); ++i)
        if (image[i].has_terms())
            throw NotACycle("boundary image has coefficient " + series_to_string(image[i]) +
                            " at " + below[i]);
}

// Assemble sum_m value * t^m per point and verify the cycle property.
inline RelativeInvariant assemble_relative(
    const std::vector<std::tuple<std::string, int, long>>& counts,
    const NovikovComplex<LaurentSeries>& nov, std::string label = "") {
    RelativeInvariant inv;
    inv.label = std::move(label);
    inv.universe = detail::universe_of(nov.underlying);
    bool first = true;
    for (const auto& [id, m, value] : counts) {
        auto [grade, offset] = detail::locate(nov.underlying, id);
        (void)offset;
        if (first) {
            inv.grade = grade;
            first = false;
        } else if (grade != inv.grade) {
            throw Error("relative invariant supported in more than one grade");
        }
        inv.chain[id] = inv.chain[id] + LaurentSeries::monomial(Rat(value), m);
    }
    check_cycle(nov.underlying, static_cast<int>(inv.grade), inv.chain);
    return inv;
}

// The natural Q((t))-valued pairing: sum over points of the coefficient
// product. Vanishes on boundary x cycle pairs for the transposed model of
// the orientation reversal.
inline LaurentSeries pair_invariants(const RelativeInvariant& x, const RelativeInvariant& y) {
    if (x.universe != y.universe)
        throw MismatchedSupport("invariants live over different point sets");
    LaurentSeries acc;
    for (const auto& [id, cx] : x.chain) {
        auto it = y.chain.find(id);
        if (it == y.chain.end()) continue;
        acc = acc + cx * it->second;
    }
    return acc;
}

struct GlueEntry {
    int exponent = 0;
    Rat closed_value;
    Rat paired_value;
    bool match = false;
};

struct GlueReport {
    std::vector<GlueEntry> entries;
    bool all_match = true;
    int compared_below = 0;  // exponents < this bound were compared
    int shift = 0;
};

// Coefficient-wise comparison of the closed-invariant generating series
// sum_d closed[d] t^d against t^shift * <x, y>, up to truncation.
inline GlueReport glue_check_series(const LaurentSeries& paired_raw,
                                    const std::map<int, Int>& closed, int shift = 0) {
    GlueReport rep;
    rep.shift = shift;
    LaurentSeries paired = paired_raw.shifted(shift);
    int upper = paired.truncation_order();
    if (paired.exact()) {
        upper = paired.has_terms() ? paired.max_exponent() + 1 : 0;
        if (!closed.empty()) upper = std::max(upper, closed.rbegin()->first + 1);
    }
    int lower = upper;
    if (paired.has_terms()) lower = std::min(lower, paired.valuation());
    if (!closed.empty()) lower = std::min(lower, closed.begin()->first);
    rep.compared_below = upper;
    for (int e = lower; e < upper; ++e) {
        auto it = closed.find(e);
        Rat closed_value = it == closed.end() ? Rat(0) : Rat(it->second);
        Rat paired_value = paired.coeff(e);
        if (is_zero(closed_value) && is_zero(paired_value)) continue;
        GlueEntry entry{e, closed_value, paired_value, closed_value == paired_value};
        rep.all_match = rep.all_match && entry.match;
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

inline GlueReport glue_check(const RelativeInvariant& x, const RelativeInvariant& y,
                             const std::map<int, Int>& closed, int shift = 0) {
    return glue_check_series(pair_invariants(x, y), closed, shift);
}

struct T2d2Example {
    NovikovComplex<LaurentSeries> complex;  // one-generator model of the solid-torus boundary
    RelativeInvariant invariant;            // the inverse of t - t^{-1}, up to sign
    LaurentSeries pairing;
    GlueReport report;
};

// The built-in worked example: the product-of-tori boundary has a single
// generator with zero boundary and homology Q((t)); the relative invariant is
// the inverse of t - t^{-1} and pairs with itself to sum_{n>=1} n t^{2n},
// matching the closed invariants of the glued manifold.
inline T2d2Example builtin_example_t2d2(int truncation = kDefaultOrder) {
    if (truncation < 4) throw Error("truncation must be at least 4");
    T2d2Example ex;
    FloerDatum d;
    d.mode = DatumMode::GammaLaurent;
    d.e_rho = Rat(1);
    CriticalPoint u;
    u.id = "u";
    u.spinc_label = "s0";
    u.ind_lift = 0;
    u.csd_lift = Rat(1);
    d.points.push_back(u);
    ex.complex = build_novikov_laurent(d);

    LaurentSeries f = LaurentSeries::monomial(Rat(1), 1) + LaurentSeries::monomial(Rat(-1), -1);
    ex.invariant.label = "relative invariant of the solid-torus piece";
    ex.invariant.universe = detail::universe_of(ex.complex.underlying);
    ex.invariant.grade = 0;
    ex.invariant.chain["u"] = f.inverse(truncation);

    ex.pairing = pair_invariants(ex.invariant, ex.invariant);
    std::map<int, Int> closed;
    for (int n = 1; 2 * n < ex.pairing.truncation_order(); ++n) closed[2 * n] = Int(n);
    ex.report = glue_check_series(ex.pairing, closed);
    return ex;
}

}  // namespace floer
