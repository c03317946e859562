#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "floer/errors.hpp"
#include "floer/graded_complex.hpp"
#include "floer/rational.hpp"
#include "floer/series.hpp"

namespace floer {

enum class DatumMode { Nontorsion, TorsionNovikov, GammaLaurent };

inline std::string mode_name(DatumMode m) {
    switch (m) {
        case DatumMode::Nontorsion: return "nontorsion";
        case DatumMode::TorsionNovikov: return "torsion-novikov";
        case DatumMode::GammaLaurent: return "gamma-laurent";
    }
    return "?";
}

struct CriticalPoint {
    std::string id;
    std::string spinc_label;
    int grade_mod_ell = 0;  // nontorsion mode only
    long ind_lift = 0;
    Rat csd_lift;  // units of 8*pi^2

    friend bool operator==(const CriticalPoint& a, const CriticalPoint& b) {
        return a.id == b.id && a.spinc_label == b.spinc_label &&
               a.grade_mod_ell == b.grade_mod_ell && a.ind_lift == b.ind_lift &&
               a.csd_lift == b.csd_lift;
    }
};

struct FlowClass {
    std::string from, to;
    int level = 0;  // stratum index: k, E_rho value, or power of t
    long count = 0;

    friend bool operator==(const FlowClass& a, const FlowClass& b) {
        return a.from == b.from && a.to == b.to && a.level == b.level && a.count == b.count;
    }
};

// The universal input: critical points with index lifts and potential values,
// plus signed energy-indexed flow counts. Analysis-supplied quantities are
// taken as given; the validator enforces every consistency relation between
// them.
struct FloerDatum {
    DatumMode mode = DatumMode::Nontorsion;
    int ell = 0;
    Rat omega;
    Rat e_rho;
    bool block_diagonal = false;
    std::vector<CriticalPoint> points;
    std::vector<FlowClass> flows;

    const CriticalPoint* find_point(const std::string& id) const {
        for (const auto& p : points)
            if (p.id == id) return &p;
        return nullptr;
    }

    friend bool operator==(const FloerDatum& a, const FloerDatum& b) {
        return a.mode == b.mode && a.ell == b.ell && a.omega == b.omega && a.e_rho == b.e_rho &&
               a.block_diagonal == b.block_diagonal && a.points == b.points && a.flows == b.flows;
    }
};

struct Violation {
    std::string rule;      // R1, G3, B1, S2, ...
    std::string name;      // BelowDiagonalFlow, EnergyNotPositive, ...
    std::string location;  // point id or "from->to@level"
    std::string detail;
    bool warning = false;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const {
        for (const auto& v : violations)
            if (!v.warning) return false;
        return true;
    }

    bool has_rule(const std::string& rule) const {
        for (const auto& v : violations)
            if (v.rule == rule) return true;
        return false;
    }
};

struct ValidationFailed : Error {
    ValidationReport report;
    explicit ValidationFailed(ValidationReport r)
        : Error("datum failed validation"), report(std::move(r)) {}
};

namespace detail {

inline std::string flow_loc(const FlowClass& f) {
    return f.from + "->" + f.to + "@" + std::to_string(f.level);
}

inline long mod_floor(long a, long m) {
    long r = a % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace detail

// Structural checks shared by all modes, then the per-mode rules. Violations
// are data, not faults; callers decide what an error-level report means.
inline ValidationReport validate(const FloerDatum& d) {
    ValidationReport rep;
    auto add = [&rep](std::string rule, std::string name, std::string loc, std::string detail,
                      bool warning = false) {
        rep.violations.push_back(
            {std::move(rule), std::move(name), std::move(loc), std::move(detail), warning});
    };

    std::map<std::string, const CriticalPoint*> by_id;
    for (const auto& p : d.points) {
        if (!by_id.emplace(p.id, &p).second)
            add("S1", "DuplicatePointId", p.id, "point identifier appears more than once");
    }
    std::set<std::tuple<std::string, std::string, int>> flow_keys;
    bool refs_ok = true;
    for (const auto& f : d.flows) {
        if (!by_id.count(f.from) || !by_id.count(f.to)) {
            add("S2", "UnknownPointRef", detail::flow_loc(f), "flow endpoint is not a point id");
            refs_ok = false;
        }
        if (f.count == 0)
            add("S3", "ZeroCountFlow", detail::flow_loc(f), "zero counts must be omitted");
        if (!flow_keys.emplace(f.from, f.to, f.level).second)
            add("S4", "DuplicateFlowKey", detail::flow_loc(f), "(from, to, level) must be unique");
    }
    const bool nontorsion = d.mode == DatumMode::Nontorsion;
    if (nontorsion && d.ell < 1)
        add("S5", "BadModeParams", "ell", "nontorsion mode requires ell >= 1");
    if (!nontorsion && !(d.e_rho > 0))
        add("S5", "BadModeParams", "e_rho", "energy quantum must be positive");
    if (!rep.violations.empty() && (!refs_ok || rep.has_rule("S5")))
        return rep;  // later rules assume resolvable refs and sane parameters

    const long ell = d.ell;
    if (nontorsion && !d.block_diagonal) {
        for (const auto& p : d.points) {
            if (detail::mod_floor(p.ind_lift, ell) != detail::mod_floor(p.grade_mod_ell, ell))
                add("R0", "GradeLiftMismatch", p.id, "ind_lift is not a lift of grade_mod_ell");
            // CSD of the omega-lifting lies in the open window (omega, omega + ell).
            if (!(p.csd_lift > d.omega && p.csd_lift < d.omega + Rat(ell)))
                add("R3", "CsdWindowBreach", p.id, "csd_lift outside (omega, omega + ell)");
        }
        for (const auto& f : d.flows) {
            const auto& a = *by_id.at(f.from);
            const auto& b = *by_id.at(f.to);
            const long drop = a.ind_lift - b.ind_lift;
            if (f.level < 0 || drop != 1 - static_cast<long>(f.level) * ell)
                add("R1", "BelowDiagonalFlow", detail::flow_loc(f),
                    "requires ind(from) - ind(to) = 1 - level*ell with level >= 0");
            else if (f.level == 0 && !(a.csd_lift > b.csd_lift))
                add("R2", "CsdNotDecreasing", detail::flow_loc(f),
                    "CSD must decrease along minimal flows");
        }
        if (ell % 2 != 0)
            add("R4", "OddPeriodicity", "ell", "periodicity of geometric data is even", true);
    } else if (nontorsion && d.block_diagonal) {
        for (const auto& p : d.points)
            if (detail::mod_floor(p.ind_lift, ell) != detail::mod_floor(p.grade_mod_ell, ell))
                add("R0", "GradeLiftMismatch", p.id, "ind_lift is not a lift of grade_mod_ell");
        for (const auto& f : d.flows) {
            const auto& a = *by_id.at(f.from);
            const auto& b = *by_id.at(f.to);
            if (f.level != 0 || a.ind_lift - b.ind_lift != 1)
                add("B1", "NotBlockDiagonalFlow", detail::flow_loc(f),
                    "block data admits only level-0 flows of index drop 1");
        }
        if (ell % 2 != 0)
            add("R4", "OddPeriodicity", "ell", "periodicity of geometric data is even", true);
    } else {
        for (const auto& f : d.flows) {
            const auto& a = *by_id.at(f.from);
            const auto& b = *by_id.at(f.to);
            if (a.ind_lift - b.ind_lift != 1)
                add("G1", "RelativeIndexNotOne", detail::flow_loc(f),
                    "boundary flows have relative index 1");
            if (d.mode == DatumMode::TorsionNovikov && f.level < 0)
                add("G2", "NegativeLevel", detail::flow_loc(f),
                    "torsion-novikov strata are indexed by n >= 0");
            if (!(a.csd_lift - b.csd_lift + Rat(f.level) * d.e_rho > 0))
                add("G3", "EnergyNotPositive", detail::flow_loc(f),
                    "csd(from) - csd(to) + level*e_rho must be positive");
        }
    }

    // Square-zero rule. Levels add along two-step trajectories; for every
    // ordered pair (a, c) and every total level the signed convolution of
    // counts must vanish. R5 for nontorsion data, G4 for the series modes.
    std::map<std::pair<std::string, std::string>, std::map<int, long>> conv;
    std::map<std::string, std::vector<const FlowClass*>> outgoing;
    for (const auto& f : d.flows) outgoing[f.from].push_back(&f);
    for (const auto& f : d.flows) {
        auto it = outgoing.find(f.to);
        if (it == outgoing.end()) continue;
        for (const FlowClass* g : it->second)
            conv[{f.from, g->to}][f.level + g->level] += f.count * g->count;
    }
    const char* rule = nontorsion ? "R5" : "G4";
    const char* name = nontorsion ? "BoundarySquareNonzero" : "SeriesBoundarySquareNonzero";
    for (const auto& [pair, by_level] : conv)
        for (const auto& [level, sum] : by_level)
            if (sum != 0)
                add(rule, name, pair.first + "->" + pair.second + "@" + std::to_string(level),
                    "<d(d(a)), c> = " + std::to_string(sum) + " at total level " +
                        std::to_string(level));
    return rep;
}

namespace detail {

// Generator layout of a complex: per grade, points in file order.
template <typename GradeOf>
inline std::map<int, std::vector<std::size_t>> layout(const FloerDatum& d, GradeOf grade_of) {
    std::map<int, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < d.points.size(); ++i) out[grade_of(d.points[i])].push_back(i);
    return out;
}

inline void require_valid(const FloerDatum& d) {
    ValidationReport rep = validate(d);
    if (!rep.ok()) throw ValidationFailed(std::move(rep));
}

}  // namespace detail

// The Z_ell-graded total complex of a nontorsion datum: entries sum the
// counts of all levels for each (from, to) pair.
inline GradedComplex<Int> assemble_cyclic_total(const FloerDatum& d) {
    detail::require_valid(d);
    GradedComplex<Int> c;
    c.kind = GradingKind::Cyclic;
    c.modulus = d.ell;
    auto grade_of = [&](const CriticalPoint& p) {
        return static_cast<int>(detail::mod_floor(p.grade_mod_ell, d.ell));
    };
    auto lay = detail::layout(d, grade_of);
    std::map<std::string, std::pair<int, std::size_t>> pos;  // id -> (grade, offset)
    for (const auto& [g, idxs] : lay) {
        auto& gens = c.generators[g];
        for (std::size_t i : idxs) {
            pos[d.points[i].id] = {g, gens.size()};
            gens.push_back(d.points[i].id);
        }
    }
    for (int g = 0; g < d.ell; ++g)
        c.boundaries[g] = Matrix<Int>(c.dim(c.grade_below(g)), c.dim(g));
    for (const auto& f : d.flows) {
        auto [ga, ia] = pos.at(f.from);
        auto [gb, ib] = pos.at(f.to);
        c.boundaries[ga](ib, ia) += f.count;
    }
    return c;
}

// The integer-graded complex of minimal-level flows: grading by ind_lift,
// entries from level-0 counts only (the diagonal blocks of the triangular
// boundary).
inline GradedComplex<Int> assemble_level_zero(const FloerDatum& d) {
    detail::require_valid(d);
    GradedComplex<Int> c;
    c.kind = GradingKind::Integer;
    auto grade_of = [](const CriticalPoint& p) { return static_cast<int>(p.ind_lift); };
    auto lay = detail::layout(d, grade_of);
    std::map<std::string, std::pair<int, std::size_t>> pos;
    for (const auto& [g, idxs] : lay) {
        auto& gens = c.generators[g];
        for (std::size_t i : idxs) {
            pos[d.points[i].id] = {g, gens.size()};
            gens.push_back(d.points[i].id);
        }
    }
    for (const auto& [g, idxs] : lay) c.boundaries[g] = Matrix<Int>(c.dim(g - 1), c.dim(g));
    for (const auto& f : d.flows) {
        if (f.level != 0) continue;
        auto [ga, ia] = pos.at(f.from);
        auto [gb, ib] = pos.at(f.to);
        c.boundaries[ga](ib, ia) += f.count;
    }
    return c;
}

// Integer-graded complex of a block-diagonal or series-mode datum where all
// flows drop the lift grade by exactly one (the honest Z-graded case).
template <typename Coeff, typename EntryOf>
inline GradedComplex<Coeff> assemble_integer_graded(const FloerDatum& d, EntryOf entry_of) {
    GradedComplex<Coeff> c;
    c.kind = GradingKind::Integer;
    auto grade_of = [](const CriticalPoint& p) { return static_cast<int>(p.ind_lift); };
    auto lay = detail::layout(d, grade_of);
    std::map<std::string, std::pair<int, std::size_t>> pos;
    for (const auto& [g, idxs] : lay) {
        auto& gens = c.generators[g];
        for (std::size_t i : idxs) {
            pos[d.points[i].id] = {g, gens.size()};
            gens.push_back(d.points[i].id);
        }
    }
    for (const auto& [g, idxs] : lay) c.boundaries[g] = Matrix<Coeff>(c.dim(g - 1), c.dim(g));
    for (const auto& f : d.flows) {
        auto [ga, ia] = pos.at(f.from);
        auto [gb, ib] = pos.at(f.to);
        c.boundaries[ga](ib, ia) = c.boundaries[ga](ib, ia) + entry_of(f);
    }
    return c;
}

// Novikov boundary over Z[[t]]: entry for (a, b) is sum_n count(a,b,n) t^n.
inline GradedComplex<PowerSeries> assemble_power_series(const FloerDatum& d) {
    detail::require_valid(d);
    if (d.mode != DatumMode::TorsionNovikov)
        throw Error("Z[[t]] assembly requires a torsion-novikov datum");
    return assemble_integer_graded<PowerSeries>(
        d, [](const FlowClass& f) { return PowerSeries::monomial(Int(f.count), f.level); });
}

// Boundary over Q((t)); levels may be negative (bounded below per pair).
inline GradedComplex<LaurentSeries> assemble_laurent(const FloerDatum& d) {
    detail::require_valid(d);
    if (d.mode == DatumMode::Nontorsion)
        throw Error("Q((t)) assembly requires a series-mode datum");
    return assemble_integer_graded<LaurentSeries>(
        d, [](const FlowClass& f) { return LaurentSeries::monomial(Rat(f.count), f.level); });
}

// Copy retaining only the minimal-level flows (k = 0 strata).
inline FloerDatum restrict_min_level(const FloerDatum& d) {
    FloerDatum out = d;
    out.flows.clear();
    for (const auto& f : d.flows)
        if (f.level == 0) out.flows.push_back(f);
    return out;
}

}  // namespace floer
