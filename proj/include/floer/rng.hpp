#pragma once

#include <cstdint>

#include "floer/rational.hpp"

namespace floer {

// splitmix64 (Steele, Lea, Flood): the fixed pseudo-random source of the
// project. Seeds are portable across platforms and implementations; bounded
// draws use plain modulo reduction, which is part of the documented contract.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    long range(long lo, long hi) {  // inclusive bounds
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    long nonzero_range(long lo, long hi) {
        long v = range(lo, hi);
        while (v == 0) v = range(lo, hi);
        return v;
    }

    // True with probability p given as an exact rational in [0, 1].
    bool chance(const Rat& p) {
        const unsigned long den = p.get_den().get_ui();
        const unsigned long num = p.get_num().get_ui();
        return below(den) < num;
    }
};

}  // namespace floer
