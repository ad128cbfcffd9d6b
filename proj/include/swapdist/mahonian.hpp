#pragma once

#include <cstdint>
#include <vector>

namespace swapdist {

// counts[k] = number of permutations of 1..n with exactly k inversions,
// k = 0 .. n(n-1)/2. Computed by the convolution recurrence
// T(n,k) = sum_{j=0}^{n-1} T(n-1, k-j).
struct MahonianTable {
    int n = 0;
    std::vector<std::uint64_t> counts;

    int max_inversions() const { return static_cast<int>(counts.size()) - 1; }
};

// Valid for 1 <= n <= 12 (exact in 64-bit with ample margin).
MahonianTable mahonian(int n);

}  // namespace swapdist
