#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "floer/novikov.hpp"
#include "floer/oracle.hpp"
#include "floer/spectral.hpp"

using namespace floer;

namespace {

oracle::GeneratorConfig cfg_for(DatumMode mode, std::uint64_t seed, int points,
                                bool block = false) {
    oracle::GeneratorConfig cfg;
    cfg.mode = mode;
    cfg.block_diagonal = block;
    cfg.seed = seed;
    cfg.num_points = points;
    cfg.ell = 2;
    cfg.max_level = 2;
    cfg.density = rat_of(2, 3);
    return cfg;
}

}  // namespace

TEST_CASE("generator: empty, deterministic, and always valid") {
    oracle::GeneratorConfig empty = cfg_for(DatumMode::Nontorsion, 1, 0);
    FloerDatum d0 = oracle::generate(empty);
    CHECK(d0.points.empty());
    CHECK(d0.flows.empty());
    CHECK(validate(d0).violations.empty());

    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        FloerDatum a = oracle::generate(cfg_for(DatumMode::Nontorsion, seed, 20));
        FloerDatum b = oracle::generate(cfg_for(DatumMode::Nontorsion, seed, 20));
        CHECK(a == b);
        CHECK(validate(a).violations.empty());
    }
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        FloerDatum g = oracle::generate(cfg_for(DatumMode::GammaLaurent, seed, 18));
        CHECK(validate(g).violations.empty());
        FloerDatum t = oracle::generate(cfg_for(DatumMode::TorsionNovikov, seed, 18));
        CHECK(validate(t).violations.empty());
        FloerDatum bl = oracle::generate(cfg_for(DatumMode::Nontorsion, seed, 16, true));
        CHECK(bl.block_diagonal);
        CHECK(validate(bl).violations.empty());
    }
}

TEST_CASE("generated data carry flows, not just isolated points") {
    int with_flows = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        if (!oracle::generate(cfg_for(DatumMode::Nontorsion, seed, 24)).flows.empty())
            ++with_flows;
    CHECK(with_flows >= 15);
    int mixed_levels = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        FloerDatum d = oracle::generate(cfg_for(DatumMode::Nontorsion, seed, 24));
        for (const auto& f : d.flows)
            if (f.level > 0) {
                ++mixed_levels;
                break;
            }
    }
    CHECK(mixed_levels >= 5);
}

TEST_CASE("main-path homology over Q agrees with the brute oracle") {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        FloerDatum d = oracle::generate(cfg_for(DatumMode::Nontorsion, seed, 22));
        GradedComplex<Rat> c = to_rational(assemble_cyclic_total(d));
        auto brute = oracle::brute_homology(c);
        for (const auto& [n, dim] : brute) CHECK(homology_q(c, n).free_rank == dim);
    }
}

TEST_CASE("E^1 equals level-zero homology and E^inf matches the brute oracle") {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        FloerDatum d = oracle::generate(cfg_for(DatumMode::Nontorsion, seed, 18));
        FilteredComplex f = build_filtered(d);
        SpectralPage e1 = page(f, 1);

        GradedComplex<Rat> level0 = to_rational(assemble_level_zero(d));
        for (const auto& [q, gens] : level0.generators) {
            if (gens.empty()) continue;
            long dim_h = homology_q(level0, q).free_rank;
            CHECK(e1.dim(q, f.residue(q)) == dim_h);
        }

        ConvergenceReport rep = converge(f);
        CHECK(rep.match);
        auto brute = oracle::brute_e_infinity(f);
        std::map<std::pair<long, int>, long> main_dims;
        for (const auto& [key, basis] : rep.e_infinity.cells)
            if (!basis.empty()) main_dims[key] = static_cast<long>(basis.size());
        CHECK(main_dims == brute);
    }
}

TEST_CASE("gamma-mode homology dimensions agree with the laurent oracle") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        FloerDatum d = oracle::generate(cfg_for(DatumMode::GammaLaurent, seed, 16));
        auto c = build_novikov_laurent(d).underlying;
        CHECK(hf_gamma(c) == oracle::brute_homology_laurent(c));
    }
}

TEST_CASE("torsion-mode pipelines: evaluation, restriction, base change") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        FloerDatum d = oracle::generate(cfg_for(DatumMode::TorsionNovikov, seed, 16));
        auto power = build_novikov_power(d).underlying;

        GradedComplex<Int> via_eval = evaluate_t0(power);
        GradedComplex<Int> via_restrict = assemble_level_zero(restrict_min_level(d));
        CHECK(via_eval.generators == via_restrict.generators);
        for (const auto& [n, b] : via_eval.boundaries)
            CHECK(via_restrict.boundary_from(n) == b);

        auto tt = t_torsion(power);
        auto dims = hf_gamma(to_laurent_complex(power));
        for (const auto& [n, h] : tt) CHECK(dims.at(n) == h.free_rank);
    }
}

TEST_CASE("degenerate level-zero data: direct sum of lift homologies") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        oracle::GeneratorConfig cfg = cfg_for(DatumMode::Nontorsion, seed, 18);
        cfg.max_level = 0;  // all flows minimal
        FloerDatum d = oracle::generate(cfg);
        FilteredComplex f = build_filtered(d);
        SpectralPage e1 = page(f, 1);
        for (int k = 2; k <= 3; ++k) CHECK(page(f, k).same_dims(e1));

        GradedComplex<Rat> level0 = to_rational(assemble_level_zero(d));
        std::map<int, long> by_residue;
        for (const auto& [q, gens] : level0.generators) {
            if (gens.empty()) continue;
            by_residue[f.residue(q)] += homology_q(level0, q).free_rank;
        }
        for (const auto& [n, dim] : hf_rational_dims(f)) {
            long expect = by_residue.count(n) ? by_residue.at(n) : 0;
            CHECK(dim == expect);
        }
    }
}
