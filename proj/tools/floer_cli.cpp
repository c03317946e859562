// Command-line surface of the Floer algebra engine: ingest datum files, run
// the validators and homology/spectral/Novikov engines, and emit
// deterministic JSON reports.
//
// Exit codes: 0 success (or all-match), 1 validation violations or glue
// mismatch, 2 malformed input or unknown flags.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "floer/datum_json.hpp"
#include "floer/direct_sum.hpp"
#include "floer/novikov.hpp"
#include "floer/oracle.hpp"
#include "floer/pairing.hpp"
#include "floer/report.hpp"
#include "floer/spectral.hpp"

using namespace floer;
using nlohmann::json;

namespace {

const char* kUsage =
    "usage: floer <command> [args]\n"
    "\n"
    "commands:\n"
    "  validate <file>                         check every structural rule\n"
    "  homology <file> --coeff {z|q|qt|qtt}    homology groups / dimensions\n"
    "  spectral <file> [--max-page K]          filtration spectral sequence\n"
    "  novikov <file> [--truncate N] [--eval-t0] [--t-torsion]\n"
    "  pair <file> <invA> <invB> [--shift S]   pairing of relative invariants\n"
    "  glue <file> <invA> <invB> --closed <table> [--truncate N] [--shift S]\n"
    "  example t2d2 [--truncate N]             built-in worked example\n"
    "  gen --mode M --seed S --points P [--ell L] [--density D] [--max-level K] [--out F]\n"
    "\n"
    "<file> may be '-' for standard input. Modes: nontorsion, torsion-novikov,\n"
    "gamma-laurent, block (nontorsion with the block-diagonal flag set).\n";

struct Args {
    std::vector<std::string> positional;
    std::map<std::string, std::string> values;
    std::set<std::string> switches;
};

// schema: flag name -> takes a value. Unknown flags are malformed input.
Args parse_args(const std::vector<std::string>& raw, std::size_t start,
                const std::map<std::string, bool>& schema) {
    Args out;
    for (std::size_t i = start; i < raw.size(); ++i) {
        const std::string& a = raw[i];
        if (a.rfind("--", 0) == 0) {
            auto it = schema.find(a);
            if (it == schema.end()) throw ParseError("unknown flag '" + a + "'");
            if (it->second) {
                if (i + 1 >= raw.size()) throw ParseError("flag '" + a + "' expects a value");
                out.values[a] = raw[++i];
            } else {
                out.switches.insert(a);
            }
        } else {
            out.positional.push_back(a);
        }
    }
    return out;
}

long parse_long(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("invalid integer for " + what + ": '" + s + "'");
    }
}

std::uint64_t parse_seed(const std::string& s) {
    try {
        std::size_t pos = 0;
        std::uint64_t v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("invalid seed: '" + s + "'");
    }
}

struct LoadedDatum {
    FloerDatum datum;
    std::uint64_t digest;
};

LoadedDatum load_datum(const std::string& path) {
    std::string text = read_input(path);
    json j = parse_json_text(text, "datum");
    return {datum_from_json(j), fnv1a64(text)};
}

json pair_list(const std::map<int, long>& m) {
    json out = json::array();
    for (const auto& [k, v] : m) out.push_back(json::array({k, v}));
    return out;
}

json homology_group_json(int grade, const HomologyGroup& h) {
    json g;
    g["grade"] = grade;
    g["free_rank"] = h.free_rank;
    json tors = json::array();
    for (const Int& t : h.torsion) tors.push_back(int_to_string(t));
    g["torsion"] = std::move(tors);
    return g;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

int emit(Report& rep, const Timer& timer, int code) {
    rep.timing_ms = timer.ms();
    std::cout << rep.render();
    return code;
}

int cmd_validate(const std::vector<std::string>& raw) {
    Timer timer;
    Args args = parse_args(raw, 1, {});
    if (args.positional.size() != 1) throw ParseError("validate expects exactly one file");
    LoadedDatum in = load_datum(args.positional[0]);
    ValidationReport vrep = validate(in.datum);
    Report rep;
    rep.command = "validate";
    rep.input_digest = digest_hex(in.digest);
    rep.results["mode"] = mode_name(in.datum.mode);
    rep.results["num_points"] = in.datum.points.size();
    rep.results["num_flows"] = in.datum.flows.size();
    rep.results["ok"] = vrep.ok();
    rep.violations = violations_to_json(vrep);
    return emit(rep, timer, vrep.ok() ? 0 : 1);
}

int cmd_homology(const std::vector<std::string>& raw) {
    Timer timer;
    Args args = parse_args(raw, 1, {{"--coeff", true}});
    if (args.positional.size() != 1 || !args.values.count("--coeff"))
        throw ParseError("homology expects a file and --coeff {z|q|qt|qtt}");
    const std::string coeff = args.values.at("--coeff");
    LoadedDatum in = load_datum(args.positional[0]);
    const FloerDatum& d = in.datum;
    Report rep;
    rep.command = "homology";
    rep.input_digest = digest_hex(in.digest);
    rep.results["coefficients"] = coeff;
    try {
        json groups = json::array();
        if (coeff == "z" || coeff == "q") {
            if (d.mode == DatumMode::GammaLaurent)
                throw ParseError("gamma-laurent data have Q((t)) coefficients; use --coeff qtt");
            GradedComplex<Int> c = d.mode == DatumMode::Nontorsion
                                       ? assemble_cyclic_total(d)
                                       : evaluate_t0(build_novikov_power(d).underlying);
            if (coeff == "z") {
                for (const auto& [g, gens] : c.generators)
                    if (!gens.empty()) groups.push_back(homology_group_json(g, homology_z(c, g)));
            } else {
                GradedComplex<Rat> cq = to_rational(c);
                for (const auto& [g, gens] : cq.generators)
                    if (!gens.empty()) {
                        json gj;
                        gj["grade"] = g;
                        gj["dim"] = homology_q(cq, g).free_rank;
                        groups.push_back(std::move(gj));
                    }
            }
        } else if (coeff == "qt") {
            if (d.mode != DatumMode::TorsionNovikov)
                throw ParseError("--coeff qt requires a torsion-novikov datum");
            for (const auto& [g, h] : t_torsion(build_novikov_power(d).underlying)) {
                json gj;
                gj["grade"] = g;
                gj["free_rank"] = h.free_rank;
                gj["t_exponents"] = h.t_exponents;
                groups.push_back(std::move(gj));
            }
        } else if (coeff == "qtt") {
            std::map<int, long> dims;
            if (d.mode == DatumMode::GammaLaurent)
                dims = hf_gamma(build_novikov_laurent(d).underlying);
            else if (d.mode == DatumMode::TorsionNovikov)
                dims = hf_gamma(to_laurent_complex(build_novikov_power(d).underlying));
            else
                throw ParseError("--coeff qtt requires a series-mode datum");
            for (const auto& [g, dim] : dims) {
                json gj;
                gj["grade"] = g;
                gj["dim"] = dim;
                groups.push_back(std::move(gj));
            }
        } else {
            throw ParseError("unknown coefficient system '" + coeff + "'");
        }
        rep.results["groups"] = std::move(groups);
        rep.results["grading"] =
            d.mode == DatumMode::Nontorsion ? json("cyclic") : json("integer");
    } catch (const ValidationFailed& vf) {
        rep.results["ok"] = false;
        rep.violations = violations_to_json(vf.report);
        return emit(rep, timer, 1);
    }
    return emit(rep, timer, 0);
}

json cells_json(const SpectralPage& p) {
    std::map<std::pair<int, long>, long> ordered;
    for (const auto& [key, basis] : p.cells)
        if (!basis.empty()) ordered[{key.second, key.first}] = static_cast<long>(basis.size());
    json out = json::array();
    for (const auto& [key, dim] : ordered) out.push_back(json::array({key.second, key.first, dim}));
    return out;  // entries [q, n, dim] sorted by (n, q)
}

int cmd_spectral(const std::vector<std::string>& raw) {
    Timer timer;
    Args args = parse_args(raw, 1, {{"--max-page", true}});
    if (args.positional.size() != 1) throw ParseError("spectral expects exactly one file");
    LoadedDatum in = load_datum(args.positional[0]);
    if (in.datum.mode != DatumMode::Nontorsion)
        throw ParseError("spectral requires a nontorsion datum");
    Report rep;
    rep.command = "spectral";
    rep.input_digest = digest_hex(in.digest);
    try {
        FilteredComplex f = build_filtered(in.datum);
        ConvergenceReport conv = converge(f);
        int kmax = conv.stabilized_at;
        if (args.values.count("--max-page")) {
            kmax = static_cast<int>(parse_long(args.values.at("--max-page"), "--max-page"));
            if (kmax < 1) throw ParseError("--max-page must be >= 1");
        }
        rep.results["ell"] = f.ell;
        rep.results["stabilized_at"] = conv.stabilized_at;
        json pages = json::array();
        for (int k = 1; k <= kmax; ++k) {
            SpectralPage p = page(f, k);
            json pj;
            pj["page"] = k;
            pj["cells"] = cells_json(p);
            json dranks = json::array();
            std::map<std::pair<int, long>, long> ordered;
            for (const auto& [key, dk] : p.differentials)
                if (dk.cols() > 0 && dk.rows() > 0) {
                    long r = static_cast<long>(rank_rational(dk));
                    if (r > 0) ordered[{key.second, key.first}] = r;
                }
            for (const auto& [key, r] : ordered)
                dranks.push_back(json::array({key.second, key.first, r}));
            pj["differential_ranks"] = std::move(dranks);
            pages.push_back(std::move(pj));
        }
        rep.results["pages"] = std::move(pages);
        rep.results["e_infinity"] = cells_json(conv.e_infinity);
        rep.results["e_infinity_sums"] = pair_list(conv.e_infinity_sums);
        rep.results["hf_dims_rational"] = pair_list(conv.hf_dims);
        rep.results["match"] = conv.match;
    } catch (const ValidationFailed& vf) {
        rep.results["ok"] = false;
        rep.violations = violations_to_json(vf.report);
        return emit(rep, timer, 1);
    }
    return emit(rep, timer, 0);
}

int cmd_novikov(const std::vector<std::string>& raw) {
    Timer timer;
    Args args = parse_args(raw, 1,
                           {{"--truncate", true}, {"--eval-t0", false}, {"--t-torsion", false}});
    if (args.positional.size() != 1) throw ParseError("novikov expects exactly one file");
    LoadedDatum in = load_datum(args.positional[0]);
    const FloerDatum& d = in.datum;
    if (d.mode == DatumMode::Nontorsion)
        throw ParseError("novikov requires a torsion-novikov or gamma-laurent datum");
    int truncate = kDefaultOrder;
    if (args.values.count("--truncate"))
        truncate = static_cast<int>(parse_long(args.values.at("--truncate"), "--truncate"));
    Report rep;
    rep.command = "novikov";
    rep.input_digest = digest_hex(in.digest);
    rep.results["truncation_order"] = truncate;
    rep.results["mode"] = mode_name(d.mode);
    try {
        if (d.mode == DatumMode::TorsionNovikov) {
            NovikovComplex<PowerSeries> nov = build_novikov_power(d);
            nov.underlying.check_complex();
            rep.results["boundary_squares_to_zero"] = true;
            json entries = json::array();
            for (const auto& [g, b] : nov.underlying.boundaries) {
                const auto& src = nov.underlying.generators.at(g);
                const int below = nov.underlying.grade_below(g);
                const auto& tgt = nov.underlying.generators.count(below)
                                      ? nov.underlying.generators.at(below)
                                      : std::vector<std::string>{};
                for (std::size_t j = 0; j < b.cols(); ++j)
                    for (std::size_t i = 0; i < b.rows(); ++i)
                        if (!b(i, j).apparently_zero())
                            entries.push_back(
                                json::array({src[j], tgt[i], power_series_to_json(b(i, j))}));
            }
            rep.results["entries"] = std::move(entries);
            if (args.switches.count("--eval-t0")) {
                GradedComplex<Int> ev = evaluate_t0(nov.underlying);
                json groups = json::array();
                for (const auto& [g, gens] : ev.generators)
                    if (!gens.empty()) groups.push_back(homology_group_json(g, homology_z(ev, g)));
                GradedComplex<Int> restricted = assemble_level_zero(restrict_min_level(d));
                bool same = ev.generators == restricted.generators;
                for (const auto& [n, b] : ev.boundaries)
                    same = same && restricted.boundary_from(n) == b;
                json evj;
                evj["groups"] = std::move(groups);
                evj["matches_min_level_restriction"] = same;
                rep.results["eval_t0"] = std::move(evj);
            }
            if (args.switches.count("--t-torsion")) {
                json groups = json::array();
                for (const auto& [g, h] : t_torsion(nov.underlying)) {
                    json gj;
                    gj["grade"] = g;
                    gj["free_rank"] = h.free_rank;
                    gj["t_exponents"] = h.t_exponents;
                    groups.push_back(std::move(gj));
                }
                rep.results["t_torsion"] = std::move(groups);
            }
        } else {
            if (args.switches.count("--eval-t0") || args.switches.count("--t-torsion"))
                throw ParseError("--eval-t0/--t-torsion require a torsion-novikov datum");
            NovikovComplex<LaurentSeries> nov = build_novikov_laurent(d);
            nov.underlying.check_complex();
            rep.results["boundary_squares_to_zero"] = true;
            json entries = json::array();
            for (const auto& [g, b] : nov.underlying.boundaries) {
                const auto& src = nov.underlying.generators.at(g);
                const int below = nov.underlying.grade_below(g);
                const auto& tgt = nov.underlying.generators.count(below)
                                      ? nov.underlying.generators.at(below)
                                      : std::vector<std::string>{};
                for (std::size_t j = 0; j < b.cols(); ++j)
                    for (std::size_t i = 0; i < b.rows(); ++i)
                        if (!b(i, j).apparently_zero())
                            entries.push_back(
                                json::array({src[j], tgt[i], series_to_json(b(i, j))}));
            }
            rep.results["entries"] = std::move(entries);
            rep.results["hf_gamma"] = pair_list(hf_gamma(nov.underlying));
        }
    } catch (const ValidationFailed& vf) {
        rep.results["ok"] = false;
        rep.violations = violations_to_json(vf.report);
        return emit(rep, timer, 1);
    }
    return emit(rep, timer, 0);
}

struct PairSetup {
    NovikovComplex<LaurentSeries> nov;
    RelativeInvariant a, b;
    std::uint64_t digest = 0;
};

PairSetup load_pair(const std::string& datum_path, const std::string& a_path,
                    const std::string& b_path) {
    std::string dtext = read_input(datum_path);
    std::string atext = read_input(a_path);
    std::string btext = read_input(b_path);
    FloerDatum d = datum_from_json(parse_json_text(dtext, "datum"));
    if (d.mode != DatumMode::GammaLaurent)
        throw ParseError("pairing requires a gamma-laurent datum");
    PairSetup s;
    s.nov = build_novikov_laurent(d);
    InvariantFile fa = invariant_from_json(parse_json_text(atext, "invariant"));
    InvariantFile fb = invariant_from_json(parse_json_text(btext, "invariant"));
    s.a = assemble_relative(fa.counts, s.nov, fa.label);
    s.b = assemble_relative(fb.counts, s.nov, fb.label);
    s.digest = fnv1a64(btext, fnv1a64(atext, fnv1a64(dtext)));
    return s;
}

json invariant_to_json(const RelativeInvariant& inv) {
    json chain = json::array();
    for (const auto& [id, s] : inv.chain)
        if (!s.apparently_zero() || !s.exact())
            chain.push_back(json::array({id, series_to_json(s)}));
    json out;
    out["chain"] = std::move(chain);
    out["grade"] = inv.grade;
    out["label"] = inv.label;
    return out;
}

json cycle_violation(const NotACycle& e) {
    json vj;
    vj["rule"] = "CYCLE";
    vj["name"] = "NotACycle";
    vj["location"] = "invariant";
    vj["detail"] = e.what();
    vj["warning"] = false;
    return vj;
}

int cmd_pair(const std::vector<std::string>& raw) {
    Timer timer;
    Args args = parse_args(raw, 1, {{"--shift", true}});
    if (args.positional.size() != 3) throw ParseError("pair expects <file> <invA> <invB>");
    Report rep;
    rep.command = "pair";
    try {
        PairSetup s = load_pair(args.positional[0], args.positional[1], args.positional[2]);
        rep.input_digest = digest_hex(s.digest);
        int shift = 0;
        if (args.values.count("--shift"))
            shift = static_cast<int>(parse_long(args.values.at("--shift"), "--shift"));
        LaurentSeries paired = pair_invariants(s.a, s.b).shifted(shift);
        rep.results["pairing"] = series_to_json(paired);
        rep.results["grade_a"] = s.a.grade;
        rep.results["grade_b"] = s.b.grade;
        rep.results["shift"] = shift;
    } catch (const NotACycle& e) {
        rep.results["ok"] = false;
        rep.violations.push_back(cycle_violation(e));
        return emit(rep, timer, 1);
    } catch (const ValidationFailed& vf) {
        rep.results["ok"] = false;
        rep.violations = violations_to_json(vf.report);
        return emit(rep, timer, 1);
    }
    return emit(rep, timer, 0);
}

int cmd_glue(const std::vector<std::string>& raw) {
    Timer timer;
    Args args =
        parse_args(raw, 1, {{"--closed", true}, {"--truncate", true}, {"--shift", true}});
    if (args.positional.size() != 3 || !args.values.count("--closed"))
        throw ParseError("glue expects <file> <invA> <invB> --closed <table>");
    Report rep;
    rep.command = "glue";
    try {
        PairSetup s = load_pair(args.positional[0], args.positional[1], args.positional[2]);
        std::string ctext = read_input(args.values.at("--closed"));
        std::map<int, Int> closed = closed_table_from_json(parse_json_text(ctext, "closed table"));
        rep.input_digest = digest_hex(fnv1a64(ctext, s.digest));
        int shift = 0;
        if (args.values.count("--shift"))
            shift = static_cast<int>(parse_long(args.values.at("--shift"), "--shift"));
        LaurentSeries paired = pair_invariants(s.a, s.b);
        if (args.values.count("--truncate"))
            paired = paired.truncated(
                static_cast<int>(parse_long(args.values.at("--truncate"), "--truncate")));
        GlueReport grep = glue_check_series(paired, closed, shift);
        json entries = json::array();
        for (const auto& e : grep.entries)
            entries.push_back(json::array({e.exponent, int_to_string(e.closed_value.get_num()),
                                           rat_to_string(e.paired_value), e.match}));
        rep.results["entries"] = std::move(entries);
        rep.results["all_match"] = grep.all_match;
        rep.results["compared_below"] = grep.compared_below;
        rep.results["shift"] = grep.shift;
        return emit(rep, timer, grep.all_match ? 0 : 1);
    } catch (const NotACycle& e) {
        rep.results["ok"] = false;
        rep.violations.push_back(cycle_violation(e));
        return emit(rep, timer, 1);
    } catch (const ValidationFailed& vf) {
        rep.results["ok"] = false;
        rep.violations = violations_to_json(vf.report);
        return emit(rep, timer, 1);
    }
}

int cmd_example(const std::vector<std::string>& raw) {
    Timer timer;
    Args args = parse_args(raw, 1, {{"--truncate", true}});
    if (args.positional.size() != 1 || args.positional[0] != "t2d2")
        throw ParseError("example expects the name 't2d2'");
    int truncate = kDefaultOrder;
    if (args.values.count("--truncate"))
        truncate = static_cast<int>(parse_long(args.values.at("--truncate"), "--truncate"));
    T2d2Example ex = builtin_example_t2d2(truncate);
    Report rep;
    rep.command = "example";
    rep.input_digest = digest_hex(fnv1a64("t2d2:" + std::to_string(truncate)));
    rep.results["name"] = "t2d2";
    rep.results["truncation_order"] = truncate;
    rep.results["invariant"] = invariant_to_json(ex.invariant);
    rep.results["pairing"] = series_to_json(ex.pairing);
    json entries = json::array();
    for (const auto& e : ex.report.entries)
        entries.push_back(json::array({e.exponent, int_to_string(e.closed_value.get_num()),
                                       rat_to_string(e.paired_value), e.match}));
    rep.results["glue_entries"] = std::move(entries);
    rep.results["all_match"] = ex.report.all_match;
    return emit(rep, timer, ex.report.all_match ? 0 : 1);
}

int cmd_gen(const std::vector<std::string>& raw) {
    Args args = parse_args(raw, 1,
                           {{"--mode", true},
                            {"--seed", true},
                            {"--points", true},
                            {"--ell", true},
                            {"--density", true},
                            {"--max-level", true},
                            {"--out", true}});
    if (!args.positional.empty()) throw ParseError("gen takes flags only");
    if (!args.values.count("--mode") || !args.values.count("--seed") ||
        !args.values.count("--points"))
        throw ParseError("gen requires --mode, --seed and --points");
    oracle::GeneratorConfig cfg;
    const std::string mode = args.values.at("--mode");
    if (mode == "block") {
        cfg.mode = DatumMode::Nontorsion;
        cfg.block_diagonal = true;
    } else {
        cfg.mode = mode_from_string(mode);
    }
    cfg.seed = parse_seed(args.values.at("--seed"));
    cfg.num_points = static_cast<int>(parse_long(args.values.at("--points"), "--points"));
    if (args.values.count("--ell"))
        cfg.ell = static_cast<int>(parse_long(args.values.at("--ell"), "--ell"));
    if (args.values.count("--max-level"))
        cfg.max_level = static_cast<int>(parse_long(args.values.at("--max-level"), "--max-level"));
    if (args.values.count("--density")) cfg.density = rat_from_string(args.values.at("--density"));
    FloerDatum d = oracle::generate(cfg);
    std::string text = datum_to_json(d).dump(2) + "\n";
    if (args.values.count("--out")) {
        std::ofstream out(args.values.at("--out"), std::ios::binary);
        if (!out) throw ParseError("cannot write '" + args.values.at("--out") + "'");
        out << text;
    } else {
        std::cout << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> raw(argv + 1, argv + argc);
    if (raw.empty()) {
        std::cerr << kUsage;
        return 2;
    }
    try {
        const std::string& cmd = raw[0];
        if (cmd == "validate") return cmd_validate(raw);
        if (cmd == "homology") return cmd_homology(raw);
        if (cmd == "spectral") return cmd_spectral(raw);
        if (cmd == "novikov") return cmd_novikov(raw);
        if (cmd == "pair") return cmd_pair(raw);
        if (cmd == "glue") return cmd_glue(raw);
        if (cmd == "example") return cmd_example(raw);
        if (cmd == "gen") return cmd_gen(raw);
        std::cerr << "unknown command '" << cmd << "'\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
