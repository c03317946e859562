#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "floer/floer_datum.hpp"

namespace floer {

inline std::uint64_t fnv1a64(const std::string& bytes, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string digest_hex(std::uint64_t h) {
    static const char* hexdigits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hexdigits[h & 0xf];
        h >>= 4;
    }
    return out;
}

inline nlohmann::json violations_to_json(const ValidationReport& rep) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : rep.violations) {
        nlohmann::json vj;
        vj["rule"] = v.rule;
        vj["name"] = v.name;
        vj["location"] = v.location;
        vj["detail"] = v.detail;
        vj["warning"] = v.warning;
        out.push_back(std::move(vj));
    }
    return out;
}

// Reports are reproducible given identical inputs and flags; timing_ms is the
// only field excluded from that contract.
struct Report {
    std::string command;
    std::string input_digest;
    nlohmann::json results = nlohmann::json::object();
    nlohmann::json violations = nlohmann::json::array();
    long timing_ms = 0;

    std::string render() const {
        nlohmann::json j;
        j["command"] = command;
        j["input_digest"] = input_digest;
        j["results"] = results;
        j["violations"] = violations;
        j["timing_ms"] = timing_ms;
        return j.dump(2) + "\n";
    }
};

}  // namespace floer
