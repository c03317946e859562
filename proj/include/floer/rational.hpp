#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>

#include "floer/errors.hpp"

namespace floer {

// Exact arithmetic substrate. Int is an arbitrary-precision integer, Rat an
// always-reduced rational with positive denominator (mpq_class keeps values
// canonical through arithmetic; parsing canonicalizes explicitly).
using Int = mpz_class;
using Rat = mpq_class;

inline bool is_zero(const Int& a) { return sgn(a) == 0; }
inline bool is_zero(const Rat& a) { return sgn(a) == 0; }

// Materialize GMP expression templates before testing.
template <typename T, typename U>
inline bool is_zero(const __gmp_expr<T, U>& a) {
    return is_zero(__gmp_expr<T, T>(a));
}

inline Int int_gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int int_abs(const Int& a) { return abs(a); }

inline std::string int_to_string(const Int& a) { return a.get_str(); }

inline bool looks_like_integer(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

inline Int int_from_string(const std::string& s) {
    if (!looks_like_integer(s)) throw ParseError("not a decimal integer: '" + s + "'");
    return Int(s, 10);
}

// Accepts "p/q" or a bare integer "p"; no whitespace.
inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    Int num, den;
    if (slash == std::string::npos) {
        num = int_from_string(s);
        den = 1;
    } else {
        num = int_from_string(s.substr(0, slash));
        den = int_from_string(s.substr(slash + 1));
        if (sgn(den) == 0) throw ParseError("zero denominator in '" + s + "'");
    }
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Canonical rendering: always "p/q", reduced, q > 0, no whitespace.
inline std::string rat_to_string(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_of(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace floer
