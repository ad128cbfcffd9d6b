#include "swapdist/permutohedron.hpp"

#include "swapdist/format.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace swapdist {

Permutohedron Permutohedron::build(int n, DistanceStorage storage) {
    if (n < 1 || n > 7)
        throw std::invalid_argument("Permutohedron::build: n must be in 1..7");

    Permutohedron g;
    g.n_ = n;
    g.nverts_ = factorial_u64(static_cast<unsigned>(n));

    const int deg = n - 1;
    g.adj_.resize(g.nverts_ * static_cast<std::size_t>(deg));
    for (std::size_t v = 0; v < g.nverts_; ++v) {
        std::vector<int> seq = Permutation::from_rank(n, v).elements();
        for (int i = 0; i < deg; ++i) {
            std::swap(seq[static_cast<std::size_t>(i)], seq[static_cast<std::size_t>(i) + 1]);
            g.adj_[v * static_cast<std::size_t>(deg) + static_cast<std::size_t>(i)] =
                static_cast<VertexId>(Permutation(seq).rank());
            std::swap(seq[static_cast<std::size_t>(i)], seq[static_cast<std::size_t>(i) + 1]);
        }
    }

    const bool full = storage == DistanceStorage::full ||
                      (storage == DistanceStorage::automatic && n <= 5);
    if (full) {
        g.dist_.resize(g.nverts_ * g.nverts_);
        for (std::size_t v = 0; v < g.nverts_; ++v) {
            const auto row = g.bfs_row(static_cast<VertexId>(v));
            std::copy(row.begin(), row.end(), g.dist_.begin() + static_cast<std::ptrdiff_t>(v * g.nverts_));
        }
    }
    return g;
}

std::span<const VertexId> Permutohedron::neighbors(VertexId v) const {
    const std::size_t deg = static_cast<std::size_t>(degree());
    return {adj_.data() + static_cast<std::size_t>(v) * deg, deg};
}

std::vector<std::uint8_t> Permutohedron::bfs_row(VertexId source) const {
    std::vector<std::uint8_t> dist(nverts_, 0xff);
    std::queue<VertexId> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        const VertexId u = q.front();
        q.pop();
        const std::uint8_t du = dist[u];
        for (VertexId w : neighbors(u)) {
            if (dist[w] == 0xff) {
                dist[w] = static_cast<std::uint8_t>(du + 1);
                q.push(w);
            }
        }
    }
    return dist;
}

int Permutohedron::distance(VertexId a, VertexId b) const {
    if (a >= nverts_ || b >= nverts_)
        throw std::out_of_range("Permutohedron::distance: vertex id out of range");
    if (!dist_.empty()) return dist_[static_cast<std::size_t>(a) * nverts_ + b];
    return bfs_row(a)[b];
}

std::vector<std::uint8_t> Permutohedron::distances_from(VertexId v) const {
    if (v >= nverts_)
        throw std::out_of_range("Permutohedron::distances_from: vertex id out of range");
    if (!dist_.empty()) {
        const auto* begin = dist_.data() + static_cast<std::size_t>(v) * nverts_;
        return {begin, begin + nverts_};
    }
    return bfs_row(v);
}

Permutation Permutohedron::permutation_of(VertexId v) const {
    if (v >= nverts_)
        throw std::out_of_range("Permutohedron::permutation_of: vertex id out of range");
    return Permutation::from_rank(n_, v);
}

VertexId Permutohedron::vertex_of(const Permutation& p) const {
    if (p.size() != n_)
        throw std::invalid_argument("Permutohedron::vertex_of: size mismatch");
    return static_cast<VertexId>(p.rank());
}

VertexId Permutohedron::reversal(VertexId v) const {
    return static_cast<VertexId>(permutation_of(v).reversed().rank());
}

std::pair<Rational, Rational> Permutohedron::mean_distances() const {
    const Rational dmax(diameter());
    const Rational N(static_cast<std::uint64_t>(nverts_));
    Rational over_ordered = dmax / 2;
    Rational over_unordered = nverts_ > 1 ? Rational(dmax * N / (2 * (N - 1))) : Rational(0);
    return {over_ordered, over_unordered};
}

std::vector<std::vector<VertexId>> enumerate_automorphisms(const Permutohedron& g) {
    if (g.order() > 5)
        throw std::invalid_argument("enumerate_automorphisms: desk scale is n <= 5");
    const std::size_t N = g.vertex_count();
    if (N == 1) return {{0}};

    const Permutohedron local = g.has_full_matrix()
                                    ? Permutohedron()
                                    : Permutohedron::build(g.order(), Permutohedron::DistanceStorage::full);
    const Permutohedron& gg = g.has_full_matrix() ? g : local;

    // Map vertices in BFS order from 0 so every new vertex touches a mapped
    // one; a candidate image must reproduce all distances to mapped vertices.
    std::vector<VertexId> order;
    order.reserve(N);
    {
        std::vector<bool> seen(N, false);
        std::queue<VertexId> q;
        q.push(0);
        seen[0] = true;
        while (!q.empty()) {
            const VertexId u = q.front();
            q.pop();
            order.push_back(u);
            for (VertexId w : gg.neighbors(u))
                if (!seen[w]) {
                    seen[w] = true;
                    q.push(w);
                }
        }
    }

    std::vector<std::vector<VertexId>> found;
    std::vector<VertexId> image(N, 0);
    std::vector<bool> used(N, false);

    auto extend = [&](auto&& self, std::size_t depth) -> void {
        if (depth == N) {
            std::vector<VertexId> automorphism(N);
            for (std::size_t i = 0; i < N; ++i) automorphism[order[i]] = image[order[i]];
            found.push_back(std::move(automorphism));
            return;
        }
        const VertexId u = order[depth];
        // candidate images: unused neighbors of the image of u's first mapped
        // neighbor (BFS order guarantees one exists)
        VertexId anchor = 0;
        bool have_anchor = false;
        for (std::size_t j = 0; j < depth && !have_anchor; ++j)
            if (gg.distance(order[j], u) == 1) {
                anchor = image[order[j]];
                have_anchor = true;
            }
        auto try_candidate = [&](VertexId w) {
            if (used[w]) return;
            for (std::size_t j = 0; j < depth; ++j)
                if (gg.distance(order[j], u) != gg.distance(image[order[j]], w)) return;
            image[u] = w;
            used[w] = true;
            self(self, depth + 1);
            used[w] = false;
        };
        if (have_anchor) {
            for (VertexId w : gg.neighbors(anchor)) try_candidate(w);
        } else {
            for (std::size_t w = 0; w < N; ++w) try_candidate(static_cast<VertexId>(w));
        }
    };
    extend(extend, 0);
    return found;
}

std::uint64_t automorphism_count(const Permutohedron& g) {
    return enumerate_automorphisms(g).size();
}

std::string export_dot(const Permutohedron& g, std::span<const double> probs,
                       std::span<const std::string> labels) {
    const std::size_t N = g.vertex_count();
    if (!probs.empty() && probs.size() != N)
        throw std::invalid_argument("export_dot: probs size mismatch");
    if (!labels.empty() && labels.size() != N)
        throw std::invalid_argument("export_dot: labels size mismatch");

    std::string out;
    out += "graph permutohedron_" + std::to_string(g.order()) + " {\n";
    for (std::size_t v = 0; v < N; ++v) {
        out += "  " + std::to_string(v) + " [label=\"";
        out += labels.empty() ? g.permutation_of(static_cast<VertexId>(v)).str() : labels[v];
        out += "\"";
        if (!probs.empty()) out += ", weight=" + format_double(probs[v]);
        out += "];\n";
    }
    for (std::size_t v = 0; v < N; ++v)
        for (VertexId w : g.neighbors(static_cast<VertexId>(v))) {
            if (w <= v) continue;
            out += "  " + std::to_string(v) + " -- " + std::to_string(w);
            if (!probs.empty())
                out += " [weight=" + format_double(probs[v] * probs[w]) + "]";
            out += ";\n";
        }
    out += "}\n";
    return out;
}

}  // namespace swapdist
