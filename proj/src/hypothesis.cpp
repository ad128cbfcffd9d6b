#include "swapdist/hypothesis.hpp"

#include "swapdist/detail/parallel.hpp"
#include "swapdist/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace swapdist {

TestResult left_pvalue_mc(double observed, const SampleFn& sampler, const ScoreFn& score,
                          std::size_t nvertices, std::uint64_t trials, std::uint64_t seed,
                          int threads) {
    if (trials == 0) throw std::invalid_argument("left_pvalue_mc: trials must be >= 1");
    auto counts = detail::run_chunked<std::uint64_t>(
        trials, kMcChunk, resolve_threads(threads),
        [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
            std::uint64_t c = 0;
            std::vector<double> freqs(nvertices);
            for (std::uint64_t t = begin; t < end; ++t) {
                sampler(derive_seed(seed, t), freqs);
                if (score(freqs) <= observed) ++c;
            }
            return c;
        });
    const std::uint64_t count = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    TestResult r;
    r.trials = trials;
    r.count_le = count;
    if (count == 0) {
        r.p_left = 1.0 / static_cast<double>(trials);
        r.is_upper_bound = true;
    } else {
        r.p_left = static_cast<double>(count) / static_cast<double>(trials);
    }
    return r;
}

ExactPValue left_pvalue_exact_rp(const OrderDistribution& d) {
    const Permutohedron& g = d.graph();
    if (g.order() > 3)
        throw std::invalid_argument("left_pvalue_exact_rp: exhaustive enumeration is n <= 3 scale");
    const std::size_t N = g.vertex_count();
    const auto freqs = d.freqs();

    // Everything is compared through the quadratic form Q = sum d_ij f_i f_j
    // (no normalization): exact for integer frequencies, 1e-12 of the
    // attainable range F^2 d_max otherwise.
    const double F = d.total();
    const double tol = 1e-12 * F * F * static_cast<double>(g.diameter());

    std::vector<VertexId> support(d.support().begin(), d.support().end());
    auto qform = [&](const std::vector<VertexId>& images) {
        double acc = 0.0;
        for (std::size_t a = 0; a < support.size(); ++a)
            for (std::size_t b = 0; b < support.size(); ++b)
                acc += freqs[support[a]] * freqs[support[b]] *
                       g.distance(images[a], images[b]);
        return acc;
    };

    std::vector<VertexId> images(support);
    const double observed = qform(images);

    std::vector<VertexId> perm(N);
    for (std::size_t i = 0; i < N; ++i) perm[i] = static_cast<VertexId>(i);

    ExactPValue out;
    do {
        for (std::size_t a = 0; a < support.size(); ++a) images[a] = perm[support[a]];
        const double q = qform(images);
        if (q <= observed + tol) ++out.count_le;
        if (std::abs(q - observed) <= tol) ++out.count_eq;
        ++out.total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<double> holm_correct(const std::vector<double>& pvalues) {
    return holm_correct(pvalues, std::vector<bool>(pvalues.size(), false)).first;
}

std::pair<std::vector<double>, std::vector<bool>> holm_correct(
    const std::vector<double>& pvalues, const std::vector<bool>& is_bound) {
    const std::size_t k = pvalues.size();
    if (is_bound.size() != k)
        throw std::invalid_argument("holm_correct: flag vector size mismatch");
    for (double p : pvalues)
        if (!(p >= 0.0) || p > 1.0)
            throw std::invalid_argument("holm_correct: p-values must lie in [0, 1]");

    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return pvalues[a] < pvalues[b]; });

    std::vector<double> adjusted(k, 0.0);
    std::vector<bool> bound(k, false);
    double running = 0.0;
    bool running_bound = false;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = idx[i];
        const double scaled = pvalues[j] * static_cast<double>(k - i);
        if (scaled >= running) {
            running = scaled;
            running_bound = is_bound[j];
        }
        adjusted[j] = std::min(1.0, running);
        bound[j] = adjusted[j] < 1.0 && (running_bound || is_bound[j]);
    }
    return {std::move(adjusted), std::move(bound)};
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

WilcoxonResult wilcoxon_left(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("wilcoxon_left: paired vectors must have equal length");
    std::vector<double> diffs;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        if (d != 0.0) diffs.push_back(d);
    }
    const std::size_t n = diffs.size();
    if (n == 0)
        throw std::invalid_argument("wilcoxon_left: all differences are zero, test undefined");

    // midranks of |d|
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(diffs[a]) < std::abs(diffs[b]);
    });
    std::vector<double> rank(n, 0.0);
    double tie_term = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && std::abs(diffs[idx[j]]) == std::abs(diffs[idx[i]])) ++j;
        const double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) rank[idx[k]] = mid;
        const double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }

    WilcoxonResult r;
    r.n_eff = static_cast<int>(n);
    for (std::size_t i = 0; i < n; ++i)
        if (diffs[i] > 0.0) r.v += rank[i];

    const double nd = static_cast<double>(n);
    const double mu = nd * (nd + 1.0) / 4.0;
    const double var = (nd * (nd + 1.0) * (2.0 * nd + 1.0) - tie_term / 2.0) / 24.0;
    r.p_normal = var > 0.0 ? normal_cdf((r.v - mu + 0.5) / std::sqrt(var)) : 1.0;

    if (n <= 20) {
        // all 2^n sign assignments, Gray-code order so each step updates the
        // rank sum by one term; ranks doubled to make the sums integral
        std::vector<std::int64_t> r2(n);
        for (std::size_t i = 0; i < n; ++i) r2[i] = std::llround(2.0 * rank[i]);
        const std::int64_t v2 = std::llround(2.0 * r.v);
        const std::uint64_t total = std::uint64_t{1} << n;
        std::uint64_t count = 0;
        std::int64_t sum = 0;
        std::uint64_t gray = 0;
        if (sum <= v2) ++count;
        for (std::uint64_t k = 1; k < total; ++k) {
            const unsigned bit = static_cast<unsigned>(std::countr_zero(k));
            const std::uint64_t mask = std::uint64_t{1} << bit;
            gray ^= mask;
            sum += (gray & mask) ? r2[bit] : -r2[bit];
            if (sum <= v2) ++count;
        }
        r.p_exact = static_cast<double>(count) / static_cast<double>(total);
    }
    return r;
}

}  // namespace swapdist
