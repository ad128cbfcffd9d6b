#pragma once

#include "swapdist/measures.hpp"
#include "swapdist/permutation.hpp"
#include "swapdist/permutohedron.hpp"
#include "swapdist/rng.hpp"

#include <cmath>
#include <memory>
#include <vector>

namespace testutil {

using swapdist::Permutation;
using swapdist::Permutohedron;
using swapdist::VertexId;

inline std::shared_ptr<const Permutohedron> shared_graph(
    int n, Permutohedron::DistanceStorage storage = Permutohedron::DistanceStorage::automatic) {
    return std::make_shared<const Permutohedron>(Permutohedron::build(n, storage));
}

// Independent swap-distance oracle: sort a into b with adjacent swaps,
// counting them (selection of b's order, bubble style).
inline int swap_distance_brute(const Permutation& a, const Permutation& b) {
    std::vector<int> target(static_cast<std::size_t>(b.size()) + 1);
    for (int i = 0; i < b.size(); ++i) target[static_cast<std::size_t>(b.at(i))] = i;
    std::vector<int> seq;
    for (int i = 0; i < a.size(); ++i) seq.push_back(target[static_cast<std::size_t>(a.at(i))]);
    int swaps = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = 0; j + 1 < seq.size(); ++j)
            if (seq[j] > seq[j + 1]) {
                std::swap(seq[j], seq[j + 1]);
                ++swaps;
            }
    return swaps;
}

// Uniform point on the simplex over nv vertices (normalized exponentials).
inline std::vector<double> random_simplex(std::size_t nv, swapdist::Rng& rng) {
    std::vector<double> p(nv);
    double total = 0.0;
    for (auto& v : p) {
        v = -std::log(1.0 - rng.unit());
        total += v;
    }
    for (auto& v : p) v /= total;
    return p;
}

// Random integer frequency vector with a forced support size.
inline std::vector<double> random_integer_freqs(std::size_t nv, int support, int max_count,
                                                swapdist::Rng& rng) {
    std::vector<double> f(nv, 0.0);
    int placed = 0;
    while (placed < support) {
        const auto v = static_cast<std::size_t>(rng.below(nv));
        if (f[v] > 0.0) continue;
        f[v] = static_cast<double>(1 + rng.below(static_cast<std::uint64_t>(max_count)));
        ++placed;
    }
    return f;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace testutil
