#pragma once

#include "swapdist/measures.hpp"
#include "swapdist/permutohedron.hpp"
#include "swapdist/rational.hpp"

#include <cstdint>
#include <vector>

namespace swapdist {

// Distribution of the best attainable left p-value over supports of size m.
//
// For every ordered sequence of m distinct vertices starting at a fixed
// vertex (vertex transitivity makes the first vertex free), the induced
// ordered distance matrix determines the permutation-test tie class: two
// frequency assignments give equal quadratic forms for all frequencies
// exactly when their induced matrices are equal entrywise. P_m for a mask is
// (size of its sequence bucket) / G with G = (N-1)(N-2)...(N-m+1).
struct MaskClassEntry {
    std::vector<VertexId> representative;   // lexicographically least mask, ascending
    std::vector<int> distance_multiset;     // sorted pairwise distances
    Rational pm;
    std::uint64_t bucket_size = 0;          // sequences per bucket (g)
    std::uint64_t mask_count = 0;           // masks sharing (pm, multiset)
};

struct MaskClassTable {
    int n = 0;
    int m = 0;
    std::uint64_t sequence_total = 0;       // G
    std::vector<MaskClassEntry> entries;    // sorted by (pm, multiset)

    Rational min_pm() const;
};

// n in {3, 4}; the sequence count G must stay desk scale (n=4 caps at m=5).
MaskClassTable compute_pm_table(int n, int m);

// P_m for one mask (any vertex set of size m), via translation of one member
// to the fixed base vertex.
Rational pm_of_mask(const Permutohedron& g, std::vector<VertexId> mask);

// Automorphism-count lower bound P_A = A / N!; exact rational (N! is a big
// integer already at n = 5). Desk scale n <= 5.
Rational compute_pa(const Permutohedron& g);

// Share of the N! frequency relabelings that reproduce the observed <d>
// exactly: the attainable left p-value floor for this input. n = 3 scale.
Rational compute_p_equal_exact(const OrderDistribution& d);

// Monte Carlo version for n >= 4.
double compute_p_equal_mc(const OrderDistribution& d, std::uint64_t trials,
                          std::uint64_t seed, int threads = 0);

struct MultisetCounterexample {
    std::vector<VertexId> mask_low;      // smaller P_m
    std::vector<VertexId> mask_high;     // larger P_m
    std::vector<int> distance_multiset;
    Rational pm_low;
    Rational pm_high;
};

// Searches n = 4, m = 4 for two masks with the same pairwise-distance
// multiset but different P_m, i.e. proof that the multiset does not
// determine the tie class. Throws if the search exhausts without a find.
MultisetCounterexample find_multiset_counterexample();

}  // namespace swapdist
