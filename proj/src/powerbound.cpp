#include "swapdist/powerbound.hpp"

#include "swapdist/detail/parallel.hpp"
#include "swapdist/hypothesis.hpp"
#include "swapdist/nullmodels.hpp"
#include "swapdist/rng.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace swapdist {

namespace {

std::uint64_t sequence_count(std::size_t N, int m) {
    std::uint64_t G = 1;
    for (int k = 1; k < m; ++k) G *= static_cast<std::uint64_t>(N - static_cast<std::size_t>(k));
    return G;
}

// Key: induced ordered distance matrix, upper triangle flattened column by
// column, one byte per entry (diameters here are < 256).
using BucketMap = std::unordered_map<std::string, std::uint64_t>;

BucketMap bucket_sequences(const Permutohedron& g, int m) {
    const std::size_t N = g.vertex_count();
    BucketMap buckets;
    std::vector<VertexId> seq{0};
    std::vector<bool> used(N, false);
    used[0] = true;
    std::string key;
    key.reserve(static_cast<std::size_t>(m) * (static_cast<std::size_t>(m) - 1) / 2);

    auto dfs = [&](auto&& self) -> void {
        if (static_cast<int>(seq.size()) == m) {
            ++buckets[key];
            return;
        }
        for (std::size_t v = 0; v < N; ++v) {
            if (used[v]) continue;
            used[v] = true;
            for (VertexId u : seq)
                key.push_back(static_cast<char>(g.distance(u, static_cast<VertexId>(v))));
            seq.push_back(static_cast<VertexId>(v));
            self(self);
            seq.pop_back();
            key.resize(key.size() - seq.size());
            used[v] = false;
        }
    };
    dfs(dfs);
    return buckets;
}

std::string mask_key(const Permutohedron& g, const std::vector<VertexId>& mask) {
    std::string key;
    for (std::size_t k = 1; k < mask.size(); ++k)
        for (std::size_t j = 0; j < k; ++j)
            key.push_back(static_cast<char>(g.distance(mask[j], mask[k])));
    return key;
}

std::vector<int> mask_multiset(const Permutohedron& g, const std::vector<VertexId>& mask) {
    std::vector<int> out;
    for (std::size_t j = 0; j < mask.size(); ++j)
        for (std::size_t k = j + 1; k < mask.size(); ++k)
            out.push_back(g.distance(mask[j], mask[k]));
    std::sort(out.begin(), out.end());
    return out;
}

void check_gate(int n, int m, std::size_t N) {
    if (n < 3 || n > 4)
        throw std::invalid_argument("compute_pm_table: n must be 3 or 4");
    if (m < 1 || static_cast<std::size_t>(m) > N)
        throw std::invalid_argument("compute_pm_table: m must be in 1..N");
    if (sequence_count(N, m) > 250'000)
        throw std::invalid_argument("compute_pm_table: sequence count exceeds the desk-scale gate");
}

struct PmContext {
    Permutohedron graph;
    BucketMap buckets;
    std::uint64_t total = 0;
};

const PmContext& pm_context(int n, int m) {
    static std::map<std::pair<int, int>, PmContext> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, m});
    if (it == cache.end()) {
        PmContext ctx;
        ctx.graph = Permutohedron::build(n, Permutohedron::DistanceStorage::full);
        check_gate(n, m, ctx.graph.vertex_count());
        ctx.buckets = bucket_sequences(ctx.graph, m);
        ctx.total = sequence_count(ctx.graph.vertex_count(), m);
        it = cache.emplace(std::make_pair(n, m), std::move(ctx)).first;
    }
    return it->second;
}

// Left-translate so that `member` lands on vertex 0; translation by a group
// element is a graph automorphism, so bucket sizes are preserved.
std::vector<VertexId> translate_mask(const Permutohedron& g,
                                     const std::vector<VertexId>& mask, VertexId member) {
    const std::vector<int> u = g.permutation_of(member).elements();
    const int n = g.order();
    std::vector<int> uinv(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) uinv[static_cast<std::size_t>(u[static_cast<std::size_t>(i)])] = i + 1;

    std::vector<VertexId> out;
    out.reserve(mask.size());
    for (VertexId v : mask) {
        const std::vector<int> pv = g.permutation_of(v).elements();
        std::vector<int> img(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            img[static_cast<std::size_t>(i)] = uinv[static_cast<std::size_t>(pv[static_cast<std::size_t>(i)])];
        out.push_back(static_cast<VertexId>(Permutation(std::move(img)).rank()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Rational MaskClassTable::min_pm() const {
    if (entries.empty()) throw std::logic_error("MaskClassTable::min_pm: empty table");
    Rational best = entries.front().pm;
    for (const auto& e : entries) best = std::min(best, e.pm);
    return best;
}

MaskClassTable compute_pm_table(int n, int m) {
    const PmContext& ctx = pm_context(n, m);
    const Permutohedron& g = ctx.graph;
    const std::size_t N = g.vertex_count();

    MaskClassTable table;
    table.n = n;
    table.m = m;
    table.sequence_total = ctx.total;

    // group masks (ascending vertex sets containing 0) by (bucket size, multiset)
    std::map<std::pair<std::uint64_t, std::vector<int>>, MaskClassEntry> groups;
    std::vector<VertexId> mask(static_cast<std::size_t>(m));
    mask[0] = 0;
    auto visit = [&](auto&& self, std::size_t depth, VertexId next) -> void {
        if (depth == mask.size()) {
            const auto it = ctx.buckets.find(mask_key(g, mask));
            if (it == ctx.buckets.end())
                throw std::logic_error("compute_pm_table: mask ordering missing from buckets");
            const std::uint64_t gsize = it->second;
            auto ms = mask_multiset(g, mask);
            auto [slot, inserted] = groups.try_emplace({gsize, std::move(ms)});
            MaskClassEntry& e = slot->second;
            if (inserted) {
                e.representative = mask;
                e.distance_multiset = slot->first.second;
                e.bucket_size = gsize;
                e.pm = Rational(gsize, ctx.total);
            }
            ++e.mask_count;
            return;
        }
        for (VertexId v = next; v < N; ++v) {
            mask[depth] = v;
            self(self, depth + 1, v + 1);
        }
    };
    visit(visit, 1, 1);

    for (auto& [key, entry] : groups) table.entries.push_back(std::move(entry));
    std::sort(table.entries.begin(), table.entries.end(),
              [](const MaskClassEntry& a, const MaskClassEntry& b) {
                  if (a.pm != b.pm) return a.pm < b.pm;
                  return a.distance_multiset < b.distance_multiset;
              });
    return table;
}

Rational pm_of_mask(const Permutohedron& g, std::vector<VertexId> mask) {
    if (mask.empty()) throw std::invalid_argument("pm_of_mask: empty mask");
    std::sort(mask.begin(), mask.end());
    if (std::adjacent_find(mask.begin(), mask.end()) != mask.end())
        throw std::invalid_argument("pm_of_mask: repeated vertex");
    if (mask.back() >= g.vertex_count())
        throw std::out_of_range("pm_of_mask: vertex id out of range");

    const auto translated = translate_mask(g, mask, mask.front());
    const PmContext& ctx = pm_context(g.order(), static_cast<int>(mask.size()));
    const auto it = ctx.buckets.find(mask_key(ctx.graph, translated));
    if (it == ctx.buckets.end())
        throw std::logic_error("pm_of_mask: translated mask missing from buckets");
    return Rational(it->second, ctx.total);
}

Rational compute_pa(const Permutohedron& g) {
    const std::uint64_t A = automorphism_count(g);
    return Rational(BigInt(A), factorial_big(static_cast<unsigned>(g.vertex_count())));
}

Rational compute_p_equal_exact(const OrderDistribution& d) {
    return left_pvalue_exact_rp(d).p_equal();
}

double compute_p_equal_mc(const OrderDistribution& d, std::uint64_t trials,
                          std::uint64_t seed, int threads) {
    if (trials == 0) throw std::invalid_argument("compute_p_equal_mc: trials must be >= 1");
    const Permutohedron& g = d.graph();
    const double observed = avg_swap_distance(d);
    const double tol = 1e-12 * static_cast<double>(g.diameter());
    const auto sampler = make_random_permutation_sampler(d);
    auto counts = detail::run_chunked<std::uint64_t>(
        trials, kMcChunk, resolve_threads(threads),
        [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
            std::uint64_t c = 0;
            std::vector<double> freqs(g.vertex_count());
            for (std::uint64_t t = begin; t < end; ++t) {
                sampler(derive_seed(seed, t), freqs);
                if (std::abs(avg_swap_distance(g, freqs) - observed) <= tol) ++c;
            }
            return c;
        });
    const std::uint64_t count = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    return static_cast<double>(count) / static_cast<double>(trials);
}

MultisetCounterexample find_multiset_counterexample() {
    const int n = 4, m = 4;
    const PmContext& ctx = pm_context(n, m);
    const Permutohedron& g = ctx.graph;
    const std::size_t N = g.vertex_count();

    // multiset -> bucket size -> first mask in lexicographic order
    std::map<std::vector<int>, std::map<std::uint64_t, std::vector<VertexId>>> by_multiset;
    std::vector<VertexId> mask(static_cast<std::size_t>(m));
    mask[0] = 0;
    auto visit = [&](auto&& self, std::size_t depth, VertexId next) -> void {
        if (depth == mask.size()) {
            const std::uint64_t gsize = ctx.buckets.at(mask_key(g, mask));
            by_multiset[mask_multiset(g, mask)].try_emplace(gsize, mask);
            return;
        }
        for (VertexId v = next; v < N; ++v) {
            mask[depth] = v;
            self(self, depth + 1, v + 1);
        }
    };
    visit(visit, 1, 1);

    for (const auto& [ms, sizes] : by_multiset) {
        if (sizes.size() < 2) continue;
        MultisetCounterexample out;
        out.distance_multiset = ms;
        out.mask_low = sizes.begin()->second;
        out.pm_low = Rational(sizes.begin()->first, ctx.total);
        out.mask_high = sizes.rbegin()->second;
        out.pm_high = Rational(sizes.rbegin()->first, ctx.total);
        return out;
    }
    throw std::runtime_error("find_multiset_counterexample: search exhausted without a find");
}

}  // namespace swapdist
