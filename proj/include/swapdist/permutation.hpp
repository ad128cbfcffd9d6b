#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace swapdist {

// A permutation of the ranks 1..n, stored as the sequence of ranks.
// Vertex ids everywhere in this library are Lehmer-code ranks: the position
// of the permutation in lexicographic order, with the identity at rank 0.
class Permutation {
public:
    explicit Permutation(std::vector<int> elems);

    static Permutation identity(int n);
    static Permutation from_rank(int n, std::uint64_t rank);

    std::uint64_t rank() const;

    int size() const { return static_cast<int>(elems_.size()); }
    const std::vector<int>& elements() const { return elems_; }
    int at(int pos) const { return elems_[pos]; }

    Permutation reversed() const;
    int inversions() const;

    // Digits concatenated, e.g. "132".
    std::string str() const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> elems_;
};

// Kendall-tau distance: the number of element pairs whose relative order
// differs between a and b. Equals the graph distance on the permutohedron.
int swap_distance(const Permutation& a, const Permutation& b);

// All n! permutations in Steinhaus-Johnson-Trotter order; consecutive entries
// differ by one adjacent transposition, so the sequence traces a Hamiltonian
// path on the permutohedron.
std::vector<Permutation> hamiltonian_enumeration(int n);

std::uint64_t factorial_u64(unsigned n);

}  // namespace swapdist
