#pragma once

#include <map>
#include <string>
#include <utility>

#include "floer/errors.hpp"
#include "floer/rational.hpp"

namespace floer {

// A series is "known below order N": coefficients are stored for exponents
// < N only. Finite supports coming from datum files are known at every order
// and carry the kOrderExact sentinel. Truncation is contagious: binary ops
// take the tightest order implied by their inputs.
constexpr int kOrderExact = 1 << 28;
constexpr int kValInfinity = 1 << 28;  // valuation of a series with no terms
constexpr int kDefaultOrder = 32;

inline int order_clamp(long v) {
    if (v >= kOrderExact) return kOrderExact;
    if (v <= -kOrderExact) return -kOrderExact;
    return static_cast<int>(v);
}

// Saturating sum used when combining truncation orders with valuations.
inline int order_add(int a, int b) {
    if (a >= kOrderExact || b >= kOrderExact) return kOrderExact;
    return order_clamp(static_cast<long>(a) + static_cast<long>(b));
}

// Formal Laurent series over Q with finitely many stored terms.
class LaurentSeries {
public:
    LaurentSeries() = default;  // exact zero
    explicit LaurentSeries(const Rat& constant) {
        if (!is_zero(constant)) c_[0] = constant;
    }

    static LaurentSeries monomial(const Rat& coef, int exp) {
        LaurentSeries s;
        if (!is_zero(coef)) s.c_[exp] = coef;
        return s;
    }

    // The zero series known only below `order`.
    static LaurentSeries zero_to_order(int order) {
        LaurentSeries s;
        s.trunc_ = order;
        return s;
    }

    static LaurentSeries from_terms(std::map<int, Rat> terms, int order = kOrderExact) {
        LaurentSeries s;
        s.c_ = std::move(terms);
        s.trunc_ = order;
        s.prune();
        return s;
    }

    int truncation_order() const { return trunc_; }
    bool exact() const { return trunc_ >= kOrderExact; }
    bool has_terms() const { return !c_.empty(); }
    // No stored terms; equal to zero only if also exact.
    bool apparently_zero() const { return c_.empty(); }
    bool known_zero() const { return c_.empty() && exact(); }
    int valuation() const { return c_.empty() ? kValInfinity : c_.begin()->first; }
    int max_exponent() const { return c_.empty() ? -kValInfinity : c_.rbegin()->first; }
    const std::map<int, Rat>& terms() const { return c_; }

    Rat coeff(int e) const {
        auto it = c_.find(e);
        return it == c_.end() ? Rat(0) : it->second;
    }

    LaurentSeries truncated(int order) const {
        LaurentSeries s = *this;
        s.trunc_ = std::min(s.trunc_, order);
        s.prune();
        return s;
    }

    // Multiplication by t^k.
    LaurentSeries shifted(int k) const {
        LaurentSeries s;
        for (const auto& [e, c] : c_) s.c_[e + k] = c;
        s.trunc_ = order_add(trunc_, k);
        return s;
    }

    LaurentSeries scaled(const Rat& r) const {
        LaurentSeries s;
        if (!is_zero(r))
            for (const auto& [e, c] : c_) s.c_[e] = c * r;
        s.trunc_ = trunc_;
        return s;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        LaurentSeries s;
        s.c_ = a.c_;
        for (const auto& [e, c] : b.c_) {
            auto [it, inserted] = s.c_.emplace(e, c);
            if (!inserted) it->second += c;
        }
        s.trunc_ = std::min(a.trunc_, b.trunc_);
        s.prune();
        return s;
    }

    friend LaurentSeries operator-(const LaurentSeries& a) { return a.scaled(Rat(-1)); }

    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
        return a + (-b);
    }

    // Cauchy product. Coefficients are reliable strictly below
    // min(trunc(a) + val(b), trunc(b) + val(a)); an empty operand contributes
    // its truncation order as the lowest exponent it could still hide.
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        LaurentSeries s;
        const int va = a.c_.empty() ? std::min(a.trunc_, kValInfinity) : a.valuation();
        const int vb = b.c_.empty() ? std::min(b.trunc_, kValInfinity) : b.valuation();
        s.trunc_ = std::min(order_add(a.trunc_, vb), order_add(b.trunc_, va));
        for (const auto& [ea, ca] : a.c_)
            for (const auto& [eb, cb] : b.c_) {
                long e = static_cast<long>(ea) + eb;
                if (e >= s.trunc_) continue;
                auto [it, inserted] = s.c_.emplace(static_cast<int>(e), ca * cb);
                if (!inserted) it->second += ca * cb;
            }
        s.prune();
        return s;
    }

    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        return a.trunc_ == b.trunc_ && a.c_ == b.c_;
    }

    // Coefficient-wise agreement for all exponents below `order`.
    bool agrees_below(const LaurentSeries& other, int order) const {
        auto scan = [order](const LaurentSeries& x, const LaurentSeries& y) {
            for (const auto& [e, c] : x.c_) {
                if (e >= order) break;
                if (y.coeff(e) != c) return false;
            }
            return true;
        };
        return scan(*this, other) && scan(other, *this);
    }

    // Multiplicative inverse. Factors out the leading monomial and expands the
    // remaining unit by the standard recurrence. `order` bounds the result's
    // truncation when the input is exact; truncated inputs can only support
    // trunc - 2*valuation.
    LaurentSeries inverse(int order = kDefaultOrder) const {
        if (c_.empty()) throw ZeroInverse();
        const int v = valuation();
        const Rat lead = c_.begin()->second;
        if (c_.size() == 1) {
            // Monomial: exact inverse.
            return monomial(Rat(1) / lead, -v);
        }
        int inherent = exact() ? kOrderExact : order_clamp(static_cast<long>(trunc_) - 2L * v);
        int n = std::min(order, inherent);
        if (n <= -v) return zero_to_order(n);
        // Normalized unit f = this / (lead * t^v), f_0 = 1.
        std::map<int, Rat> f;
        for (const auto& [e, c] : c_)
            if (e != v) f[e - v] = c / lead;
        const int m = n + v;  // compute g_k for 0 <= k < m
        std::map<int, Rat> g;
        g[0] = Rat(1);
        for (int k = 1; k < m; ++k) {
            Rat acc(0);
            for (const auto& [e, c] : f) {
                if (e > k) break;
                auto it = g.find(k - e);
                if (it != g.end()) acc += c * it->second;
            }
            if (!is_zero(acc)) g[k] = -acc;
        }
        std::map<int, Rat> out;
        for (auto& [e, c] : g) out[e - v] = c / lead;
        return from_terms(std::move(out), n);
    }

private:
    std::map<int, Rat> c_;
    int trunc_ = kOrderExact;

    void prune() {
        for (auto it = c_.begin(); it != c_.end();) {
            if (is_zero(it->second) || it->first >= trunc_)
                it = c_.erase(it);
            else
                ++it;
        }
    }
};

inline bool is_zero(const LaurentSeries& s) { return s.known_zero(); }

inline LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b,
                            int order = kDefaultOrder) {
    return a * b.inverse(order);
}

// Truncated formal power series over Z; exponents are never negative.
class PowerSeries {
public:
    PowerSeries() = default;
    explicit PowerSeries(const Int& constant) {
        if (!is_zero(constant)) c_[0] = constant;
    }

    static PowerSeries monomial(const Int& coef, int exp) {
        PowerSeries s;
        if (exp < 0) throw Error("power series exponent must be non-negative");
        if (!is_zero(coef)) s.c_[exp] = coef;
        return s;
    }

    static PowerSeries from_terms(std::map<int, Int> terms, int order = kOrderExact) {
        PowerSeries s;
        s.c_ = std::move(terms);
        s.trunc_ = order;
        if (!s.c_.empty() && s.c_.begin()->first < 0)
            throw Error("power series exponent must be non-negative");
        s.prune();
        return s;
    }

    int truncation_order() const { return trunc_; }
    bool exact() const { return trunc_ >= kOrderExact; }
    bool apparently_zero() const { return c_.empty(); }
    bool known_zero() const { return c_.empty() && exact(); }
    int valuation() const { return c_.empty() ? kValInfinity : c_.begin()->first; }
    const std::map<int, Int>& terms() const { return c_; }

    Int coeff(int e) const {
        auto it = c_.find(e);
        return it == c_.end() ? Int(0) : it->second;
    }

    // Constant-term evaluation (the |_{t=0} map).
    Int eval_t0() const { return coeff(0); }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        PowerSeries s;
        s.c_ = a.c_;
        for (const auto& [e, c] : b.c_) {
            auto [it, inserted] = s.c_.emplace(e, c);
            if (!inserted) it->second += c;
        }
        s.trunc_ = std::min(a.trunc_, b.trunc_);
        s.prune();
        return s;
    }

    friend PowerSeries operator-(const PowerSeries& a) {
        PowerSeries s;
        for (const auto& [e, c] : a.c_) s.c_[e] = -c;
        s.trunc_ = a.trunc_;
        return s;
    }

    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
        return a + (-b);
    }

    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        PowerSeries s;
        const int va = a.c_.empty() ? std::min(a.trunc_, kValInfinity) : a.valuation();
        const int vb = b.c_.empty() ? std::min(b.trunc_, kValInfinity) : b.valuation();
        s.trunc_ = std::min(order_add(a.trunc_, vb), order_add(b.trunc_, va));
        for (const auto& [ea, ca] : a.c_)
            for (const auto& [eb, cb] : b.c_) {
                long e = static_cast<long>(ea) + eb;
                if (e >= s.trunc_) continue;
                auto [it, inserted] = s.c_.emplace(static_cast<int>(e), ca * cb);
                if (!inserted) it->second += ca * cb;
            }
        s.prune();
        return s;
    }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
        return a.trunc_ == b.trunc_ && a.c_ == b.c_;
    }

    // Base change Z[[t]] -> Q[[t]] (or into Q((t))).
    LaurentSeries to_laurent() const {
        std::map<int, Rat> out;
        for (const auto& [e, c] : c_) out[e] = Rat(c);
        return LaurentSeries::from_terms(std::move(out), trunc_);
    }

private:
    std::map<int, Int> c_;
    int trunc_ = kOrderExact;

    void prune() {
        for (auto it = c_.begin(); it != c_.end();) {
            if (is_zero(it->second) || it->first >= trunc_)
                it = c_.erase(it);
            else
                ++it;
        }
    }
};

inline bool is_zero(const PowerSeries& s) { return s.known_zero(); }

inline std::string series_to_string(const LaurentSeries& s) {
    if (s.apparently_zero()) return s.exact() ? "0" : "O(t^" + std::to_string(s.truncation_order()) + ")";
    std::string out;
    for (const auto& [e, c] : s.terms()) {
        if (!out.empty()) out += " + ";
        out += rat_to_string(c) + "*t^" + std::to_string(e);
    }
    if (!s.exact()) out += " + O(t^" + std::to_string(s.truncation_order()) + ")";
    return out;
}

}  // namespace floer
