#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "floer/pairing.hpp"
#include "floer/rng.hpp"

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

NovikovComplex<LaurentSeries> free_complex(int generators) {
    FloerDatum d;
    d.mode = DatumMode::GammaLaurent;
    d.e_rho = Rat(1);
    for (int i = 0; i < generators; ++i)
        d.points.push_back(pt("g" + std::to_string(i), 0, Rat(i + 1)));
    return build_novikov_laurent(d);
}

}  // namespace

TEST_CASE("assemble_relative builds t-weighted chains and checks cycles") {
    NovikovComplex<LaurentSeries> free1 = free_complex(1);
    RelativeInvariant inv = assemble_relative({{"g0", 2, 3}}, free1);
    CHECK(inv.chain.at("g0") == LaurentSeries::monomial(Rat(3), 2));
    CHECK(inv.grade == 0);

    // A chain with nonzero boundary image is rejected.
    FloerDatum d;
    d.mode = DatumMode::GammaLaurent;
    d.e_rho = Rat(1);
    d.points = {pt("a", 1, Rat(2)), pt("b", 0, Rat(1))};
    d.flows = {{"a", "b", 0, 1}};
    NovikovComplex<LaurentSeries> n = build_novikov_laurent(d);
    CHECK_THROWS_AS(assemble_relative({{"a", 0, 1}}, n), NotACycle);
    // b generates homology, so it is a legal support.
    CHECK_NOTHROW(assemble_relative({{"b", 0, 1}}, n));
}

TEST_CASE("pairing is the coefficient-product sum and is bilinear") {
    NovikovComplex<LaurentSeries> free1 = free_complex(1);
    RelativeInvariant unit = assemble_relative({{"g0", 0, 1}}, free1);
    CHECK(pair_invariants(unit, unit) == LaurentSeries(Rat(1)));

    RelativeInvariant x = assemble_relative({{"g0", 1, 2}}, free1);
    RelativeInvariant y = assemble_relative({{"g0", 2, 3}}, free1);
    CHECK(pair_invariants(x, y) == LaurentSeries::monomial(Rat(6), 3));

    SplitMix64 rng(5);
    NovikovComplex<LaurentSeries> free3 = free_complex(3);
    auto random_inv = [&] {
        std::vector<std::tuple<std::string, int, long>> counts;
        for (int g = 0; g < 3; ++g)
            for (int m = -2; m <= 2; ++m)
                if (rng.below(2)) counts.push_back({"g" + std::to_string(g), m, rng.nonzero_range(-3, 3)});
        return assemble_relative(counts, free3);
    };
    for (int trial = 0; trial < 50; ++trial) {
        RelativeInvariant a = random_inv(), b = random_inv(), c = random_inv();
        LaurentSeries lhs = pair_invariants(a, b) + pair_invariants(c, b);
        RelativeInvariant sum = a;
        for (const auto& [id, s] : c.chain) sum.chain[id] = sum.chain[id] + s;
        CHECK(pair_invariants(sum, b) == lhs);
    }
}

TEST_CASE("pairing rejects mismatched point sets") {
    RelativeInvariant x = assemble_relative({{"g0", 0, 1}}, free_complex(1));
    RelativeInvariant y = assemble_relative({{"g0", 0, 1}}, free_complex(2));
    CHECK_THROWS_AS(pair_invariants(x, y), MismatchedSupport);
}

TEST_CASE("boundary transpose adjointness at the matrix level") {
    // <d(u), v> = <u, d^T(v)> for the transposed model of the reversed
    // orientation; hence boundaries pair to zero against transpose-cycles.
    SplitMix64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t rows = 1 + rng.below(4), cols = 1 + rng.below(4);
        Matrix<LaurentSeries> m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (rng.below(2))
                    m(i, j) = LaurentSeries::monomial(Rat(rng.nonzero_range(-2, 2)),
                                                      static_cast<int>(rng.range(-2, 2)));
        std::vector<LaurentSeries> u(cols), v(rows);
        for (auto& s : u)
            s = LaurentSeries::monomial(Rat(rng.range(-2, 2)), static_cast<int>(rng.range(-1, 1)));
        for (auto& s : v)
            s = LaurentSeries::monomial(Rat(rng.range(-2, 2)), static_cast<int>(rng.range(-1, 1)));
        LaurentSeries lhs, rhs;
        for (std::size_t i = 0; i < rows; ++i) {
            LaurentSeries du;
            for (std::size_t j = 0; j < cols; ++j) du = du + m(i, j) * u[j];
            lhs = lhs + du * v[i];
        }
        Matrix<LaurentSeries> mt = m.transposed();
        for (std::size_t j = 0; j < cols; ++j) {
            LaurentSeries dv;
            for (std::size_t i = 0; i < rows; ++i) dv = dv + mt(j, i) * v[i];
            rhs = rhs + dv * u[j];
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("glue_check compares against convolution-built closed tables") {
    NovikovComplex<LaurentSeries> free2 = free_complex(2);
    SplitMix64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        auto random_inv = [&] {
            std::vector<std::tuple<std::string, int, long>> counts;
            for (int g = 0; g < 2; ++g)
                for (int m = -2; m <= 2; ++m)
                    if (rng.below(2))
                        counts.push_back({"g" + std::to_string(g), m, rng.nonzero_range(-3, 3)});
            return assemble_relative(counts, free2);
        };
        RelativeInvariant x = random_inv(), y = random_inv();
        // Independent convolution of the two chains.
        std::map<int, Int> closed;
        for (const auto& [id, sx] : x.chain) {
            auto it = y.chain.find(id);
            if (it == y.chain.end()) continue;
            for (const auto& [ea, ca] : sx.terms())
                for (const auto& [eb, cb] : it->second.terms()) {
                    Rat prod = ca * cb;
                    closed[ea + eb] += prod.get_num();  // integer chains: den == 1
                }
        }
        for (auto it = closed.begin(); it != closed.end();)
            it = is_zero(it->second) ? closed.erase(it) : std::next(it);
        CHECK(glue_check(x, y, closed).all_match);
    }

    // Zero invariants demand an all-zero closed table.
    RelativeInvariant zx = assemble_relative({}, free2);
    CHECK(glue_check(zx, zx, {}).all_match);
    CHECK_FALSE(glue_check(zx, zx, {{0, Int(1)}}).all_match);
}

TEST_CASE("glue shift normalizes t-exponent conventions") {
    NovikovComplex<LaurentSeries> free1 = free_complex(1);
    RelativeInvariant x = assemble_relative({{"g0", 1, 1}}, free1);
    // <x, x> = t^2; a closed table at t^5 matches after shift 3.
    CHECK_FALSE(glue_check(x, x, {{5, Int(1)}}).all_match);
    CHECK(glue_check(x, x, {{5, Int(1)}}, 3).all_match);
}

TEST_CASE("builtin worked example reproduces the closed-form pairing") {
    T2d2Example ex = builtin_example_t2d2(42);
    CHECK(ex.report.all_match);
    for (int n = 1; n <= 20; ++n) CHECK(ex.pairing.coeff(2 * n) == Rat(n));
    for (int e = ex.pairing.valuation(); e < ex.pairing.truncation_order(); ++e)
        if (e % 2 != 0) CHECK(is_zero(ex.pairing.coeff(e)));

    // The invariant chain agrees with assembling explicit odd-exponent counts.
    RelativeInvariant counted = assemble_relative(
        [] {
            std::vector<std::tuple<std::string, int, long>> counts;
            for (int e = 1; e < 42; e += 2) counts.push_back({"u", e, -1});
            return counts;
        }(),
        ex.complex);
    CHECK(counted.chain.at("u").agrees_below(ex.invariant.chain.at("u"), 42));

    T2d2Example small = builtin_example_t2d2(10);
    CHECK(small.report.all_match);
    CHECK(small.pairing.coeff(2) == Rat(1));
    CHECK(small.pairing.coeff(4) == Rat(2));
    CHECK(small.pairing.coeff(6) == Rat(3));
    CHECK(small.pairing.coeff(8) == Rat(4));

    T2d2Example tiny = builtin_example_t2d2(4);
    CHECK(tiny.report.all_match);

    // Sign flip: the invariant appears squared, so the pairing is unchanged.
    RelativeInvariant flipped = ex.invariant;
    for (auto& [id, s] : flipped.chain) s = -s;
    CHECK(pair_invariants(flipped, flipped) == ex.pairing);
    CHECK_THROWS_AS(builtin_example_t2d2(3), Error);
}
