#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "floer/direct_sum.hpp"

using namespace floer;

namespace {

CriticalPoint pt(std::string id, long ind, int ell) {
    CriticalPoint p;
    p.id = std::move(id);
    p.spinc_label = "s";
    p.grade_mod_ell = static_cast<int>(((ind % ell) + ell) % ell);
    p.ind_lift = ind;
    p.csd_lift = Rat(1);
    return p;
}

FloerDatum block_times_two() {
    FloerDatum d;
    d.mode = DatumMode::Nontorsion;
    d.block_diagonal = true;
    d.ell = 2;
    d.omega = Rat(0);
    d.points = {pt("a", 2, 2), pt("b", 1, 2)};
    d.flows = {{"a", "b", 0, 2}};
    return d;
}

}  // namespace

TEST_CASE("empty datum decomposes to nothing") {
    FloerDatum d;
    d.mode = DatumMode::Nontorsion;
    d.block_diagonal = true;
    d.ell = 2;
    d.omega = Rat(0);
    BlockDecomposition b = decompose(d);
    CHECK(b.occupied_lift_grades.empty());
    CHECK(direct_sum_homology(b).ok);
}

TEST_CASE("a single multiplication-by-two block") {
    BlockDecomposition b = decompose(block_times_two());
    REQUIRE(b.occupied_lift_grades.size() == 2);
    DirectSumReport rep = direct_sum_homology(b);
    CHECK(rep.ok);
    // residue 1 carries the Z/2.
    const ResidueComparison& r1 = rep.residues.at(1);
    CHECK(r1.total.free_rank == 0);
    REQUIRE(r1.total.torsion.size() == 1);
    CHECK(r1.total.torsion[0] == 2);
    REQUIRE(r1.blocks.count(1) == 1);
    CHECK(r1.blocks.at(1).torsion == std::vector<Int>{Int(2)});
    // residue 0: the source grade, no homology.
    const ResidueComparison& r0 = rep.residues.at(0);
    CHECK(r0.total.free_rank == 0);
    CHECK(r0.total.torsion.empty());
}

TEST_CASE("non-minimal flows are rejected") {
    FloerDatum d = block_times_two();
    d.points.push_back(pt("x", 0, 2));
    d.points.push_back(pt("y", 3, 2));
    d.flows.push_back({"x", "y", 2, 1});
    CHECK_THROWS_AS(decompose(d), NotBlockDiagonal);

    FloerDatum plain = block_times_two();
    plain.block_diagonal = false;
    CHECK_THROWS_AS(decompose(plain), NotBlockDiagonal);
}

TEST_CASE("disjoint blocks with torsion Z/2 and Z/3 merge to [6] integrally") {
    FloerDatum d;
    d.mode = DatumMode::Nontorsion;
    d.block_diagonal = true;
    d.ell = 2;
    d.omega = Rat(0);
    d.points = {pt("a1", 1, 2), pt("a0", 0, 2), pt("b1", 3, 2), pt("b0", 2, 2)};
    d.flows = {{"a1", "a0", 0, 2}, {"b1", "b0", 0, 3}};
    BlockDecomposition b = decompose(d);
    DirectSumReport rep = direct_sum_homology(b);
    CHECK(rep.ok);
    const ResidueComparison& r0 = rep.residues.at(0);
    REQUIRE(r0.total.torsion.size() == 1);
    CHECK(r0.total.torsion[0] == 6);  // invariant factors merge 2 and 3
    // Prime-power comparison sees {2, 3} on both sides.
    auto total_components = prime_power_components(r0.total.torsion);
    CHECK(total_components.size() == 2);
    CHECK(r0.torsion_match);
}

TEST_CASE("zero-boundary blocks are free of the generator count") {
    FloerDatum d;
    d.mode = DatumMode::Nontorsion;
    d.block_diagonal = true;
    d.ell = 2;
    d.omega = Rat(0);
    d.points = {pt("a", 0, 2), pt("b", 2, 2), pt("c", 1, 2)};
    BlockDecomposition b = decompose(d);
    DirectSumReport rep = direct_sum_homology(b);
    CHECK(rep.ok);
    CHECK(rep.residues.at(0).total.free_rank == 2);
    CHECK(rep.residues.at(1).total.free_rank == 1);
    CHECK(rep.residues.at(0).block_free_sum == 2);
}

TEST_CASE("decompose round-trips the flow data") {
    FloerDatum d = block_times_two();
    BlockDecomposition b = decompose(d);
    for (const auto& f : d.flows) {
        const CriticalPoint* from = d.find_point(f.from);
        Matrix<Int> m = b.lift.boundary_from(static_cast<int>(from->ind_lift));
        bool found = false;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m(i, j) == f.count) found = true;
        CHECK(found);
    }
}

TEST_CASE("prime power components split correctly") {
    auto c = prime_power_components({Int(12), Int(18)});
    // 12 = 2^2 * 3, 18 = 2 * 3^2
    std::multiset<std::pair<Int, int>> expect{
        {Int(2), 2}, {Int(3), 1}, {Int(2), 1}, {Int(3), 2}};
    CHECK(c == expect);
}
