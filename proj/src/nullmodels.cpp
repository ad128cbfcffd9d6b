#include "swapdist/nullmodels.hpp"

#include "swapdist/detail/parallel.hpp"
#include "swapdist/rng.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace swapdist {

std::string null_model_key(NullModel m) {
    switch (m) {
        case NullModel::die_rolling: return "dr";
        case NullModel::random_walk: return "rw";
        case NullModel::polya_urn: return "pu";
        case NullModel::random_permutation: return "rp";
    }
    throw std::invalid_argument("null_model_key: unknown model");
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

void fill_die_rolling(std::uint64_t F, std::size_t N, Rng& rng, std::vector<double>& freqs) {
    freqs.assign(N, 0.0);
    for (std::uint64_t t = 0; t < F; ++t) freqs[rng.below(N)] += 1.0;
}

// Urn kept as a flat list of balls: uniform draw over balls is a uniform
// draw proportional to color counts, and adding the copy is O(1).
void fill_polya(std::uint64_t F, std::size_t N, PolyaCounting counting, Rng& rng,
                std::vector<double>& freqs, std::vector<std::uint32_t>& balls) {
    balls.clear();
    balls.reserve(F);
    for (std::size_t c = 0; c < N; ++c) balls.push_back(static_cast<std::uint32_t>(c));
    while (balls.size() < F) balls.push_back(balls[rng.below(balls.size())]);
    freqs.assign(N, counting == PolyaCounting::ball_counts ? 0.0 : -1.0);
    for (std::uint32_t c : balls) freqs[c] += 1.0;
}

void fill_random_walk(const Permutohedron& g, VertexId start, std::uint64_t steps,
                      Rng& rng, std::vector<double>& freqs) {
    freqs.assign(g.vertex_count(), 0.0);
    VertexId cur = start;
    const std::size_t deg = static_cast<std::size_t>(g.degree());
    freqs[cur] += 1.0;
    for (std::uint64_t s = 1; s < steps; ++s) {
        cur = g.neighbors(cur)[deg == 1 ? 0 : rng.below(deg)];
        freqs[cur] += 1.0;
    }
}

void fill_random_permutation(std::span<const double> observed, Rng& rng,
                             std::vector<double>& freqs) {
    freqs.assign(observed.begin(), observed.end());
    for (std::size_t i = freqs.size(); i > 1; --i)
        std::swap(freqs[i - 1], freqs[rng.below(i)]);
}

void check_polya_args(std::uint64_t F, std::size_t N) {
    if (F < N)
        throw std::invalid_argument("polya_urn: F must be >= N (one seed ball per order)");
}

}  // namespace

NullModelSample die_rolling_sample(std::uint64_t F, const Permutohedron& g,
                                   std::uint64_t seed) {
    if (F == 0) throw std::invalid_argument("die_rolling: F must be >= 1");
    Rng rng(seed);
    NullModelSample s{NullModel::die_rolling, {}, seed};
    fill_die_rolling(F, g.vertex_count(), rng, s.freqs);
    return s;
}

NullModelSample polya_urn_sample(std::uint64_t F, const Permutohedron& g,
                                 std::uint64_t seed, PolyaCounting counting) {
    check_polya_args(F, g.vertex_count());
    Rng rng(seed);
    NullModelSample s{NullModel::polya_urn, {}, seed};
    std::vector<std::uint32_t> balls;
    fill_polya(F, g.vertex_count(), counting, rng, s.freqs, balls);
    return s;
}

NullModelSample random_permutation_sample(const OrderDistribution& d, std::uint64_t seed) {
    Rng rng(seed);
    NullModelSample s{NullModel::random_permutation, {}, seed};
    fill_random_permutation(d.freqs(), rng, s.freqs);
    return s;
}

NullModelSample random_walk_sample(const Permutohedron& g, VertexId start,
                                   std::uint64_t steps, std::uint64_t seed) {
    if (steps == 0) throw std::invalid_argument("random_walk: steps must be >= 1");
    if (start >= g.vertex_count()) throw std::out_of_range("random_walk: start out of range");
    if (g.order() == 1 && steps > 1)
        throw std::invalid_argument("random_walk: single-vertex graph has no moves");
    Rng rng(seed);
    NullModelSample s{NullModel::random_walk, {}, seed};
    fill_random_walk(g, start, steps, rng, s.freqs);
    return s;
}

double expected_d_die_rolling(std::uint64_t F, const Permutohedron& g) {
    if (F == 0) throw std::invalid_argument("expected_d_die_rolling: F must be >= 1");
    const double dmax = g.diameter();
    return (static_cast<double>(F) - 1.0) / static_cast<double>(F) * dmax / 2.0;
}

double expected_d_random_permutation(const OrderDistribution& d) {
    const double N = static_cast<double>(d.graph().vertex_count());
    if (N < 2) return 0.0;
    return dominance(d) * N / (N - 1.0) * d.graph().diameter() / 2.0;
}

double expected_H_die_rolling(std::uint64_t F, std::size_t N, std::uint64_t mc_threshold) {
    if (F == 0 || N == 0)
        throw std::invalid_argument("expected_H_die_rolling: F and N must be >= 1");
    if (N == 1) return 0.0;
    if (F > mc_threshold) {
        std::cerr << "expected_H_die_rolling: F = " << F
                  << " beyond exact-sum threshold, using Monte Carlo\n";
        detail::Kahan acc;
        const std::uint64_t trials = 4096;
        std::vector<double> freqs;
        for (std::uint64_t t = 0; t < trials; ++t) {
            Rng rng(derive_seed(0x48d1ull, F ^ N, t));
            fill_die_rolling(F, N, rng, freqs);
            acc.add(entropy_plugin(freqs));
        }
        return acc.sum / static_cast<double>(trials);
    }
    // E[H] = ln F - (N/F) * E[f ln f], f ~ Binomial(F, 1/N); the a = 0 and
    // a = 1 terms vanish. Each pmf term is evaluated in log space.
    const double logF = std::log(static_cast<double>(F));
    const double lgF1 = std::lgamma(static_cast<double>(F) + 1.0);
    const double logp = -std::log(static_cast<double>(N));
    const double logq = std::log1p(-1.0 / static_cast<double>(N));
    detail::Kahan acc;
    for (std::uint64_t a = 2; a <= F; ++a) {
        const double ad = static_cast<double>(a);
        const double logpmf = lgF1 - std::lgamma(ad + 1.0) -
                              std::lgamma(static_cast<double>(F - a) + 1.0) + ad * logp +
                              static_cast<double>(F - a) * logq;
        acc.add(std::exp(logpmf) * ad * std::log(ad));
    }
    return logF - static_cast<double>(N) / static_cast<double>(F) * acc.sum;
}

SampleFn make_die_rolling_sampler(std::uint64_t F, const Permutohedron& g) {
    if (F == 0) throw std::invalid_argument("die_rolling: F must be >= 1");
    const std::size_t N = g.vertex_count();
    return [F, N](std::uint64_t trial_seed, std::vector<double>& freqs) {
        Rng rng(trial_seed);
        fill_die_rolling(F, N, rng, freqs);
    };
}

SampleFn make_polya_sampler(std::uint64_t F, const Permutohedron& g, PolyaCounting counting) {
    check_polya_args(F, g.vertex_count());
    const std::size_t N = g.vertex_count();
    return [F, N, counting](std::uint64_t trial_seed, std::vector<double>& freqs) {
        thread_local std::vector<std::uint32_t> balls;
        Rng rng(trial_seed);
        fill_polya(F, N, counting, rng, freqs, balls);
    };
}

SampleFn make_random_permutation_sampler(const OrderDistribution& d) {
    std::vector<double> observed(d.freqs().begin(), d.freqs().end());
    return [observed](std::uint64_t trial_seed, std::vector<double>& freqs) {
        Rng rng(trial_seed);
        fill_random_permutation(observed, rng, freqs);
    };
}

SampleFn make_random_walk_sampler(const Permutohedron& g, std::uint64_t steps) {
    if (steps == 0) throw std::invalid_argument("random_walk: steps must be >= 1");
    if (g.order() == 1 && steps > 1)
        throw std::invalid_argument("random_walk: single-vertex graph has no moves");
    return [&g, steps](std::uint64_t trial_seed, std::vector<double>& freqs) {
        Rng rng(trial_seed);
        const VertexId start = static_cast<VertexId>(rng.below(g.vertex_count()));
        fill_random_walk(g, start, steps, rng, freqs);
    };
}

ScoreFn make_entropy_score() {
    return [](const std::vector<double>& freqs) { return entropy_plugin(freqs); };
}

ScoreFn make_avg_distance_score(const Permutohedron& g) {
    return [&g](const std::vector<double>& freqs) { return avg_swap_distance(g, freqs); };
}

McExpectation monte_carlo_expectation(const SampleFn& sampler, const ScoreFn& score,
                                      std::size_t nvertices, std::uint64_t trials,
                                      std::uint64_t seed, int threads) {
    if (trials == 0) throw std::invalid_argument("monte_carlo_expectation: trials must be >= 1");
    struct Chunk {
        detail::Kahan sum, sum_sq;
    };
    auto chunks = detail::run_chunked<Chunk>(
        trials, kMcChunk, resolve_threads(threads),
        [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
            Chunk c;
            std::vector<double> freqs(nvertices);
            for (std::uint64_t t = begin; t < end; ++t) {
                sampler(derive_seed(seed, t), freqs);
                const double x = score(freqs);
                c.sum.add(x);
                c.sum_sq.add(x * x);
            }
            return c;
        });
    detail::Kahan total, total_sq;
    for (const auto& c : chunks) {
        total.add(c.sum.sum);
        total_sq.add(c.sum_sq.sum);
    }
    const double T = static_cast<double>(trials);
    const double mean = total.sum / T;
    const double var = std::max(0.0, total_sq.sum / T - mean * mean);
    return McExpectation{mean, std::sqrt(var / T), trials};
}

}  // namespace swapdist
