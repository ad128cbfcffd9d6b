#pragma once

#include "swapdist/permutation.hpp"
#include "swapdist/rational.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace swapdist {

using VertexId = std::uint32_t;

// The permutohedron of order n as a graph: one vertex per permutation of
// 1..n, one edge per adjacent transposition. Vertices are Lehmer ranks.
//
// The full N x N distance matrix is kept for n <= 5 (<= 14400 bytes) and
// computed per-row by BFS on demand above that, unless storage is forced.
class Permutohedron {
public:
    enum class DistanceStorage { automatic, full, on_demand };

    static Permutohedron build(int n, DistanceStorage storage = DistanceStorage::automatic);

    int order() const { return n_; }
    std::size_t vertex_count() const { return nverts_; }
    std::size_t edge_count() const { return nverts_ * degree() / 2; }
    int degree() const { return n_ - 1; }
    int diameter() const { return n_ * (n_ - 1) / 2; }
    bool has_full_matrix() const { return !dist_.empty(); }

    std::span<const VertexId> neighbors(VertexId v) const;

    int distance(VertexId a, VertexId b) const;

    // Distances from v to every vertex. Copies the stored row or runs a BFS.
    std::vector<std::uint8_t> distances_from(VertexId v) const;

    Permutation permutation_of(VertexId v) const;
    VertexId vertex_of(const Permutation& p) const;

    // The antipodal map: vertex of the reversed sequence. d(v, reversal(v))
    // is always the diameter.
    VertexId reversal(VertexId v) const;

    // (mean distance over ordered pairs, mean over unordered distinct pairs)
    // = (d_max/2, d_max * N / (2(N-1))), as exact rationals.
    std::pair<Rational, Rational> mean_distances() const;

private:
    int n_ = 0;
    std::size_t nverts_ = 0;
    std::vector<VertexId> adj_;          // nverts_ x (n-1), flat
    std::vector<std::uint8_t> dist_;     // nverts_ x nverts_, flat; may be empty

    std::vector<std::uint8_t> bfs_row(VertexId v) const;
};

// Exhaustive graph-automorphism enumeration with pairwise-distance pruning.
// Desk scale: n <= 5 (the search needs the full distance matrix).
std::vector<std::vector<VertexId>> enumerate_automorphisms(const Permutohedron& g);
std::uint64_t automorphism_count(const Permutohedron& g);

// Graphviz DOT text. When probs/labels are given, vertices carry weight=p_i
// and edges weight=p_i*p_j; labels default to the digit string of the
// permutation. Output is byte-stable: vertices and edges in rank order.
std::string export_dot(const Permutohedron& g,
                       std::span<const double> probs = {},
                       std::span<const std::string> labels = {});

}  // namespace swapdist
