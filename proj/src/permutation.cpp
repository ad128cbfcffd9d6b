#include "swapdist/permutation.hpp"

#include <algorithm>
#include <stdexcept>

namespace swapdist {

std::uint64_t factorial_u64(unsigned n) {
    if (n > 20) throw std::overflow_error("factorial_u64: n! exceeds 64 bits for n > 20");
    std::uint64_t r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

Permutation::Permutation(std::vector<int> elems) : elems_(std::move(elems)) {
    const int n = static_cast<int>(elems_.size());
    if (n == 0) throw std::invalid_argument("Permutation: empty sequence");
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int e : elems_) {
        if (e < 1 || e > n || seen[static_cast<std::size_t>(e)])
            throw std::invalid_argument("Permutation: sequence is not a permutation of 1..n");
        seen[static_cast<std::size_t>(e)] = true;
    }
}

Permutation Permutation::identity(int n) {
    if (n < 1) throw std::invalid_argument("Permutation::identity: n must be >= 1");
    std::vector<int> e(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = i + 1;
    return Permutation(std::move(e));
}

Permutation Permutation::from_rank(int n, std::uint64_t rank) {
    if (n < 1) throw std::invalid_argument("Permutation::from_rank: n must be >= 1");
    const std::uint64_t total = factorial_u64(static_cast<unsigned>(n));
    if (rank >= total) throw std::out_of_range("Permutation::from_rank: rank out of range");
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n));
    std::uint64_t radix = total;
    for (int i = n; i >= 1; --i) {
        radix /= static_cast<std::uint64_t>(i);
        const std::size_t idx = static_cast<std::size_t>(rank / radix);
        rank %= radix;
        out.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return Permutation(std::move(out));
}

std::uint64_t Permutation::rank() const {
    // Lehmer code: digit i counts later elements smaller than elems_[i].
    const int n = size();
    std::uint64_t r = 0;
    std::uint64_t radix = factorial_u64(static_cast<unsigned>(n));
    for (int i = 0; i < n; ++i) {
        radix /= static_cast<std::uint64_t>(n - i);
        std::uint64_t smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (elems_[static_cast<std::size_t>(j)] < elems_[static_cast<std::size_t>(i)]) ++smaller;
        r += smaller * radix;
    }
    return r;
}

Permutation Permutation::reversed() const {
    std::vector<int> e(elems_.rbegin(), elems_.rend());
    return Permutation(std::move(e));
}

int Permutation::inversions() const {
    const int n = size();
    int inv = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (elems_[static_cast<std::size_t>(i)] > elems_[static_cast<std::size_t>(j)]) ++inv;
    return inv;
}

std::string Permutation::str() const {
    std::string s;
    for (int e : elems_) s += std::to_string(e);
    return s;
}

int swap_distance(const Permutation& a, const Permutation& b) {
    const int n = a.size();
    if (b.size() != n) throw std::invalid_argument("swap_distance: size mismatch");
    std::vector<int> pos_a(static_cast<std::size_t>(n) + 1), pos_b(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) {
        pos_a[static_cast<std::size_t>(a.at(i))] = i;
        pos_b[static_cast<std::size_t>(b.at(i))] = i;
    }
    int discordant = 0;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) {
            const bool before_a = pos_a[static_cast<std::size_t>(u)] < pos_a[static_cast<std::size_t>(v)];
            const bool before_b = pos_b[static_cast<std::size_t>(u)] < pos_b[static_cast<std::size_t>(v)];
            if (before_a != before_b) ++discordant;
        }
    return discordant;
}

std::vector<Permutation> hamiltonian_enumeration(int n) {
    if (n < 1 || n > 7)
        throw std::invalid_argument("hamiltonian_enumeration: n must be in 1..7");
    // Steinhaus-Johnson-Trotter with directions: repeatedly move the largest
    // mobile element, flipping directions of everything larger.
    std::vector<int> val(static_cast<std::size_t>(n));
    std::vector<int> dir(static_cast<std::size_t>(n), -1);  // -1 left, +1 right
    for (int i = 0; i < n; ++i) val[static_cast<std::size_t>(i)] = i + 1;

    std::vector<Permutation> out;
    out.reserve(factorial_u64(static_cast<unsigned>(n)));
    out.emplace_back(val);

    auto mobile = [&]() -> int {
        int best = -1;
        for (int i = 0; i < n; ++i) {
            const int j = i + dir[static_cast<std::size_t>(i)];
            if (j < 0 || j >= n) continue;
            if (val[static_cast<std::size_t>(j)] > val[static_cast<std::size_t>(i)]) continue;
            if (best < 0 || val[static_cast<std::size_t>(i)] > val[static_cast<std::size_t>(best)]) best = i;
        }
        return best;
    };

    for (;;) {
        const int i = mobile();
        if (i < 0) break;
        const int moving = val[static_cast<std::size_t>(i)];
        const int j = i + dir[static_cast<std::size_t>(i)];
        std::swap(val[static_cast<std::size_t>(i)], val[static_cast<std::size_t>(j)]);
        std::swap(dir[static_cast<std::size_t>(i)], dir[static_cast<std::size_t>(j)]);
        for (int k = 0; k < n; ++k)
            if (val[static_cast<std::size_t>(k)] > moving) dir[static_cast<std::size_t>(k)] = -dir[static_cast<std::size_t>(k)];
        out.emplace_back(val);
    }
    return out;
}

}  // namespace swapdist
