#pragma once

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "floer/floer_datum.hpp"
#include "floer/series.hpp"

namespace floer {

using nlohmann::json;

namespace detail {

inline void require_fields(const json& obj, const std::vector<std::string>& required,
                           const std::vector<std::string>& optional, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + ": expected an object");
    for (const auto& f : required)
        if (!obj.contains(f)) throw ParseError(where + ": missing field '" + f + "'");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const auto& f : required) known = known || key == f;
        for (const auto& f : optional) known = known || key == f;
        if (!known) throw ParseError(where + ": unknown field '" + key + "'");
    }
}

inline long get_int(const json& obj, const std::string& field, const std::string& where) {
    const json& v = obj.at(field);
    if (!v.is_number_integer()) throw ParseError(where + ": '" + field + "' must be an integer");
    return v.get<long>();
}

inline Rat get_rat(const json& obj, const std::string& field, const std::string& where) {
    const json& v = obj.at(field);
    if (!v.is_string()) throw ParseError(where + ": '" + field + "' must be a \"p/q\" string");
    return rat_from_string(v.get<std::string>());
}

inline std::string get_str(const json& obj, const std::string& field, const std::string& where) {
    const json& v = obj.at(field);
    if (!v.is_string()) throw ParseError(where + ": '" + field + "' must be a string");
    return v.get<std::string>();
}

}  // namespace detail

inline void check_version(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("version") || !j.at("version").is_number_integer() ||
        j.at("version").get<long>() != 1)
        throw ParseError(where + ": unsupported or missing version (expected 1)");
}

inline DatumMode mode_from_string(const std::string& s) {
    if (s == "nontorsion") return DatumMode::Nontorsion;
    if (s == "torsion-novikov") return DatumMode::TorsionNovikov;
    if (s == "gamma-laurent") return DatumMode::GammaLaurent;
    throw ParseError("unknown mode '" + s + "'");
}

inline FloerDatum datum_from_json(const json& j) {
    check_version(j, "datum");
    detail::require_fields(j, {"version", "mode", "points", "flows"},
                           {"ell", "omega", "e_rho", "block_diagonal"}, "datum");
    FloerDatum d;
    d.mode = mode_from_string(detail::get_str(j, "mode", "datum"));
    const bool nontorsion = d.mode == DatumMode::Nontorsion;
    if (nontorsion) {
        if (!j.contains("ell")) throw ParseError("datum: nontorsion mode requires 'ell'");
        if (!j.contains("omega")) throw ParseError("datum: nontorsion mode requires 'omega'");
        d.ell = static_cast<int>(detail::get_int(j, "ell", "datum"));
        d.omega = detail::get_rat(j, "omega", "datum");
    } else {
        if (!j.contains("e_rho"))
            throw ParseError("datum: mode '" + mode_name(d.mode) + "' requires 'e_rho'");
        d.e_rho = detail::get_rat(j, "e_rho", "datum");
        if (j.contains("ell")) d.ell = static_cast<int>(detail::get_int(j, "ell", "datum"));
        if (j.contains("omega")) d.omega = detail::get_rat(j, "omega", "datum");
    }
    if (j.contains("block_diagonal")) {
        if (!j.at("block_diagonal").is_boolean())
            throw ParseError("datum: 'block_diagonal' must be a boolean");
        d.block_diagonal = j.at("block_diagonal").get<bool>();
    }
    if (!j.at("points").is_array()) throw ParseError("datum: 'points' must be an array");
    if (!j.at("flows").is_array()) throw ParseError("datum: 'flows' must be an array");
    for (const json& pj : j.at("points")) {
        std::vector<std::string> req{"id", "spinc_label", "ind_lift", "csd_lift"};
        std::vector<std::string> opt{"grade_mod_ell"};
        if (nontorsion) {
            req.push_back("grade_mod_ell");
            opt.clear();
        }
        detail::require_fields(pj, req, opt, "point");
        CriticalPoint p;
        p.id = detail::get_str(pj, "id", "point");
        p.spinc_label = detail::get_str(pj, "spinc_label", "point");
        p.ind_lift = detail::get_int(pj, "ind_lift", "point");
        p.csd_lift = detail::get_rat(pj, "csd_lift", "point");
        if (pj.contains("grade_mod_ell"))
            p.grade_mod_ell = static_cast<int>(detail::get_int(pj, "grade_mod_ell", "point"));
        d.points.push_back(std::move(p));
    }
    for (const json& fj : j.at("flows")) {
        detail::require_fields(fj, {"from", "to", "level", "count"}, {}, "flow");
        FlowClass f;
        f.from = detail::get_str(fj, "from", "flow");
        f.to = detail::get_str(fj, "to", "flow");
        f.level = static_cast<int>(detail::get_int(fj, "level", "flow"));
        f.count = detail::get_int(fj, "count", "flow");
        d.flows.push_back(std::move(f));
    }
    return d;
}

inline json datum_to_json(const FloerDatum& d) {
    json j;
    j["version"] = 1;
    j["mode"] = mode_name(d.mode);
    const bool nontorsion = d.mode == DatumMode::Nontorsion;
    if (nontorsion) {
        j["ell"] = d.ell;
        j["omega"] = rat_to_string(d.omega);
        j["block_diagonal"] = d.block_diagonal;
    } else {
        j["e_rho"] = rat_to_string(d.e_rho);
    }
    json points = json::array();
    for (const auto& p : d.points) {
        json pj;
        pj["id"] = p.id;
        pj["spinc_label"] = p.spinc_label;
        pj["ind_lift"] = p.ind_lift;
        pj["csd_lift"] = rat_to_string(p.csd_lift);
        if (nontorsion) pj["grade_mod_ell"] = p.grade_mod_ell;
        points.push_back(std::move(pj));
    }
    j["points"] = std::move(points);
    json flows = json::array();
    for (const auto& f : d.flows) {
        json fj;
        fj["from"] = f.from;
        fj["to"] = f.to;
        fj["level"] = f.level;
        fj["count"] = f.count;
        flows.push_back(std::move(fj));
    }
    j["flows"] = std::move(flows);
    return j;
}

// Relative invariant file: {"version": 1, "label": ..., "chain":
// [[id, [[m, value], ...]], ...]}.
struct InvariantFile {
    std::string label;
    std::vector<std::tuple<std::string, int, long>> counts;
};

inline InvariantFile invariant_from_json(const json& j) {
    check_version(j, "invariant");
    detail::require_fields(j, {"version", "chain"}, {"label"}, "invariant");
    InvariantFile out;
    if (j.contains("label")) out.label = detail::get_str(j, "label", "invariant");
    if (!j.at("chain").is_array()) throw ParseError("invariant: 'chain' must be an array");
    for (const json& entry : j.at("chain")) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
            !entry[1].is_array())
            throw ParseError("invariant: chain entries are [id, [[m, value], ...]]");
        for (const json& term : entry[1]) {
            if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer() ||
                !term[1].is_number_integer())
                throw ParseError("invariant: terms are [m, value] integer pairs");
            out.counts.push_back(
                {entry[0].get<std::string>(), term[0].get<int>(), term[1].get<long>()});
        }
    }
    return out;
}

// Closed-invariant table: {"version": 1, "closed": [[d, value], ...]}.
inline std::map<int, Int> closed_table_from_json(const json& j) {
    check_version(j, "closed table");
    detail::require_fields(j, {"version", "closed"}, {}, "closed table");
    std::map<int, Int> out;
    if (!j.at("closed").is_array()) throw ParseError("closed table: 'closed' must be an array");
    for (const json& entry : j.at("closed")) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() ||
            !entry[1].is_number_integer())
            throw ParseError("closed table: entries are [d, value] integer pairs");
        out[entry[0].get<int>()] = Int(entry[1].get<long>());
    }
    return out;
}

inline json series_to_json(const LaurentSeries& s) {
    json terms = json::array();
    for (const auto& [e, c] : s.terms()) terms.push_back(json::array({e, rat_to_string(c)}));
    json j;
    j["terms"] = std::move(terms);
    j["truncation_order"] = s.exact() ? json(nullptr) : json(s.truncation_order());
    return j;
}

inline json power_series_to_json(const PowerSeries& s) {
    json terms = json::array();
    for (const auto& [e, c] : s.terms())
        terms.push_back(json::array({e, int_to_string(c) + "/1"}));
    json j;
    j["terms"] = std::move(terms);
    j["truncation_order"] = s.exact() ? json(nullptr) : json(s.truncation_order());
    return j;
}

inline std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json_text(const std::string& text, const std::string& where) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError(where + ": not valid JSON");
    return j;
}

}  // namespace floer
