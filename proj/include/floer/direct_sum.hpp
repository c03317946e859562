#pragma once

#include <map>
#include <set>
#include <vector>

#include "floer/floer_datum.hpp"
#include "floer/graded_complex.hpp"

namespace floer {

// Block-diagonal data: the total boundary splits as the direct sum of the
// integer-graded slices, one per lift grade.
struct BlockDecomposition {
    GradedComplex<Int> lift;   // integer-graded by the surgery lift
    GradedComplex<Int> total;  // the Z_ell-graded complex
    std::vector<int> occupied_lift_grades;
};

inline BlockDecomposition decompose(const FloerDatum& d) {
    if (d.mode != DatumMode::Nontorsion || !d.block_diagonal)
        throw NotBlockDiagonal("decompose requires a block-diagonal nontorsion datum");
    ValidationReport rep = validate(d);
    if (rep.has_rule("B1")) throw NotBlockDiagonal("datum contains a non-minimal flow");
    if (!rep.ok()) throw ValidationFailed(std::move(rep));
    BlockDecomposition out;
    out.lift = assemble_level_zero(d);
    out.total = assemble_cyclic_total(d);
    for (int g : out.lift.occupied_grades()) out.occupied_lift_grades.push_back(g);
    // Cross-block detection: every flow must stay inside its slice.
    for (const auto& f : d.flows)
        if (f.level != 0) throw NotBlockDiagonal("datum contains a non-minimal flow");
    return out;
}

// Multiset of prime-power components of a list of invariant factors. Direct
// sums merge invariant factors, so comparisons happen at this level.
inline std::multiset<std::pair<Int, int>> prime_power_components(const std::vector<Int>& factors) {
    std::multiset<std::pair<Int, int>> out;
    for (Int d : factors) {
        if (cmp(d, 1) <= 0) continue;
        Int p(2);
        while (cmp(p * p, d) <= 0 && cmp(p, 1000000) < 0) {
            if (is_zero(d % p)) {
                int e = 0;
                while (is_zero(d % p)) {
                    d /= p;
                    ++e;
                }
                out.insert({p, e});
            }
            p += (cmp(p, 2) == 0) ? 1 : 2;
        }
        if (cmp(d, 1) > 0) out.insert({d, 1});  // prime (or a desk-scale leftover)
    }
    return out;
}

struct ResidueComparison {
    int residue = 0;
    HomologyGroup total;
    std::map<int, HomologyGroup> blocks;  // lift grade -> homology of the slice
    long block_free_sum = 0;
    bool free_match = false;
    bool torsion_match = false;
};

struct DirectSumReport {
    std::vector<ResidueComparison> residues;
    bool ok = true;
};

// HF_n of the total complex against the direct sum of the slice homologies
// over the lifts of n: free ranks add, torsion matches as prime-power
// multisets.
inline DirectSumReport direct_sum_homology(const BlockDecomposition& b) {
    DirectSumReport rep;
    const int ell = b.total.modulus;
    for (int n = 0; n < ell; ++n) {
        ResidueComparison cmp_n;
        cmp_n.residue = n;
        cmp_n.total = homology_z(b.total, n);
        std::multiset<std::pair<Int, int>> block_torsion;
        for (int q : b.occupied_lift_grades) {
            if (((q % ell) + ell) % ell != n) continue;
            HomologyGroup h = homology_z(b.lift, q);
            cmp_n.block_free_sum += h.free_rank;
            for (const auto& c : prime_power_components(h.torsion)) block_torsion.insert(c);
            cmp_n.blocks[q] = std::move(h);
        }
        cmp_n.free_match = cmp_n.block_free_sum == cmp_n.total.free_rank;
        cmp_n.torsion_match = block_torsion == prime_power_components(cmp_n.total.torsion);
        rep.ok = rep.ok && cmp_n.free_match && cmp_n.torsion_match;
        rep.residues.push_back(std::move(cmp_n));
    }
    return rep;
}

}  // namespace floer
