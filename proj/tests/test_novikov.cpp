#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "floer/novikov.hpp"

using namespace floer;

namespace {

CriticalPoint pt(std::string id, long ind, const Rat& csd) {
    CriticalPoint p;
    p.id = std::move(id);
    p.spinc_label = "s";
    p.ind_lift = ind;
    p.csd_lift = csd;
    return p;
}

// Two parallel two-step paths whose level-1 contributions cancel:
// <d(d(a)), c> = t - t = 0.
FloerDatum square_zero_witness() {
    FloerDatum d;
    d.mode = DatumMode::TorsionNovikov;
    d.e_rho = Rat(1);
    d.points = {pt("a", 2, Rat(3)), pt("b", 1, Rat(2)), pt("b2", 1, rat_of(5, 2)),
                pt("c", 0, Rat(1))};
    d.flows = {{"a", "b", 0, 1}, {"b", "c", 1, 1}, {"a", "b2", 0, -1}, {"b2", "c", 1, 1}};
    return d;
}

}  // namespace

TEST_CASE("novikov boundary entries collect level-indexed counts") {
    FloerDatum d;
    d.mode = DatumMode::TorsionNovikov;
    d.e_rho = Rat(1);
    d.points = {pt("a", 1, Rat(2)), pt("b", 0, Rat(1))};
    d.flows = {{"a", "b", 0, 1}};
    NovikovComplex<PowerSeries> n = build_novikov_power(d);
    CHECK(n.underlying.boundary_from(1)(0, 0) == PowerSeries(Int(1)));

    d.flows.push_back({"a", "b", 1, -2});
    n = build_novikov_power(d);
    PowerSeries e = n.underlying.boundary_from(1)(0, 0);
    CHECK(e.coeff(0) == 1);
    CHECK(e.coeff(1) == -2);
}

TEST_CASE("the square-zero witness multiplies out to zero exactly") {
    FloerDatum d = square_zero_witness();
    REQUIRE(validate(d).ok());
    NovikovComplex<PowerSeries> n = build_novikov_power(d);
    n.underlying.check_complex();
    Matrix<PowerSeries> square = n.underlying.boundary_from(1) * n.underlying.boundary_from(2);
    CHECK(square.all_zero());
}

TEST_CASE("hf_gamma: free, unit-entry, and split model cases") {
    FloerDatum free;
    free.mode = DatumMode::GammaLaurent;
    free.e_rho = Rat(1);
    free.points = {pt("a", 0, Rat(1)), pt("b", 0, Rat(2)), pt("c", 1, Rat(3))};
    auto dims = hf_gamma(build_novikov_laurent(free).underlying);
    CHECK(dims.at(0) == 2);
    CHECK(dims.at(1) == 1);

    // A (t - 1/t) entry is a unit of Q((t)): both grades die.
    FloerDatum unit;
    unit.mode = DatumMode::GammaLaurent;
    unit.e_rho = Rat(1);
    unit.points = {pt("a", 1, Rat(3)), pt("b", 0, Rat(1))};
    unit.flows = {{"a", "b", 1, 1}, {"a", "b", -1, -1}};
    REQUIRE(validate(unit).ok());
    auto udims = hf_gamma(build_novikov_laurent(unit).underlying);
    CHECK(udims.at(0) == 0);
    CHECK(udims.at(1) == 0);

    // Product-of-tori model: one odd and one even generator, zero boundary;
    // the homology is a copy of the Laurent field in each grade.
    FloerDatum torus;
    torus.mode = DatumMode::GammaLaurent;
    torus.e_rho = Rat(1);
    torus.points = {pt("even", 0, Rat(1)), pt("odd", 1, Rat(2))};
    auto tdims = hf_gamma(build_novikov_laurent(torus).underlying);
    CHECK(tdims.at(0) == 1);
    CHECK(tdims.at(1) == 1);
}

TEST_CASE("t = 0 evaluation and minimal-level restriction agree at chain level") {
    FloerDatum d = square_zero_witness();
    GradedComplex<Int> via_eval = evaluate_t0(build_novikov_power(d).underlying);
    GradedComplex<Int> via_restrict = assemble_level_zero(restrict_min_level(d));
    CHECK(via_eval.generators == via_restrict.generators);
    for (const auto& [n, b] : via_eval.boundaries) {
        CHECK(via_restrict.boundary_from(n).rows() == b.rows());
        CHECK(via_restrict.boundary_from(n) == b);
    }
    via_eval.check_complex();

    // Entry divisible by t evaluates to a zero boundary.
    FloerDatum tdiv;
    tdiv.mode = DatumMode::TorsionNovikov;
    tdiv.e_rho = Rat(1);
    tdiv.points = {pt("a", 1, Rat(2)), pt("b", 0, Rat(1))};
    tdiv.flows = {{"a", "b", 3, 5}};
    GradedComplex<Int> ev = evaluate_t0(build_novikov_power(tdiv).underlying);
    CHECK(ev.boundary_from(1).all_zero());
    CHECK(homology_z(ev, 0).free_rank == 1);
    CHECK(homology_z(ev, 1).free_rank == 1);
}

TEST_CASE("t_torsion reports the valuation Smith invariants per grade") {
    FloerDatum d;
    d.mode = DatumMode::TorsionNovikov;
    d.e_rho = Rat(1);
    d.points = {pt("a", 1, Rat(2)), pt("b", 0, Rat(1))};
    d.flows = {{"a", "b", 1, 1}};  // boundary [t]
    auto tt = t_torsion(build_novikov_power(d).underlying);
    CHECK(tt.at(0).free_rank == 0);
    CHECK(tt.at(0).t_exponents == std::vector<int>{1});
    CHECK(tt.at(1).free_rank == 0);
    CHECK(tt.at(1).t_exponents.empty());

    FloerDatum diag;
    diag.mode = DatumMode::TorsionNovikov;
    diag.e_rho = Rat(1);
    diag.points = {pt("a1", 1, Rat(2)), pt("a2", 1, rat_of(5, 2)), pt("b1", 0, Rat(1)),
                   pt("b2", 0, rat_of(3, 2))};
    diag.flows = {{"a1", "b1", 1, 1}, {"a2", "b2", 3, 1}};
    auto dd = t_torsion(build_novikov_power(diag).underlying);
    CHECK(dd.at(0).t_exponents == std::vector<int>{1, 3});
    CHECK(dd.at(0).free_rank == 0);

    FloerDatum zero;
    zero.mode = DatumMode::TorsionNovikov;
    zero.e_rho = Rat(1);
    zero.points = {pt("a", 0, Rat(1)), pt("b", 0, Rat(2))};
    auto zz = t_torsion(build_novikov_power(zero).underlying);
    CHECK(zz.at(0).free_rank == 2);
    CHECK(zz.at(0).t_exponents.empty());
}

TEST_CASE("base change: Q((t)) dimension equals the Q[[t]] free rank") {
    for (const FloerDatum& d : {square_zero_witness()}) {
        auto power = build_novikov_power(d).underlying;
        auto tt = t_torsion(power);
        auto dims = hf_gamma(to_laurent_complex(power));
        for (const auto& [n, h] : tt) CHECK(dims.at(n) == h.free_rank);
    }
}
