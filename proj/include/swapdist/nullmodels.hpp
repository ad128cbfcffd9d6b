#pragma once

#include "swapdist/measures.hpp"
#include "swapdist/permutohedron.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace swapdist {

enum class NullModel { die_rolling, random_walk, polya_urn, random_permutation };

std::string null_model_key(NullModel m);   // "dr", "rw", "pu", "rp"

enum class PolyaCounting {
    ball_counts,   // seed ball included: every color >= 1, sum = F
    draw_counts,   // draws only: sum = F - N
};

struct NullModelSample {
    NullModel model;
    std::vector<double> freqs;
    std::uint64_t seed = 0;
};

// One sample per call; all samplers are pure functions of their seed.
NullModelSample die_rolling_sample(std::uint64_t F, const Permutohedron& g,
                                   std::uint64_t seed);
NullModelSample polya_urn_sample(std::uint64_t F, const Permutohedron& g,
                                 std::uint64_t seed,
                                 PolyaCounting counting = PolyaCounting::ball_counts);
NullModelSample random_permutation_sample(const OrderDistribution& d,
                                          std::uint64_t seed);
// Visit counts of an unbiased nearest-neighbor walk over `steps` visited
// vertices (steps - 1 moves), starting at `start`.
NullModelSample random_walk_sample(const Permutohedron& g, VertexId start,
                                   std::uint64_t steps, std::uint64_t seed);

// Closed-form expectations.
// Die rolling: <d>_dr = (F-1)/F * d_max/2.
double expected_d_die_rolling(std::uint64_t F, const Permutohedron& g);
// Random permutation of the observed frequencies:
// <d>_rp = dominance * N/(N-1) * d_max/2.
double expected_d_random_permutation(const OrderDistribution& d);
// Die rolling entropy: ln F - (N/F) sum_{a=2}^{F} Bin(F, 1/N)(a) * a ln a,
// evaluated with log-space binomial terms. Above `mc_threshold` the sum is
// replaced by a Monte Carlo estimate and a note goes to stderr.
double expected_H_die_rolling(std::uint64_t F, std::size_t N,
                              std::uint64_t mc_threshold = 2'000'000);

// Monte Carlo machinery. A sampler fills `freqs` for the given per-trial
// seed; a score maps frequencies to a statistic. Trials are processed in
// fixed-size chunks whose partial results are folded in chunk order, so the
// result is identical for any thread count.
using SampleFn = std::function<void(std::uint64_t trial_seed, std::vector<double>& freqs)>;
using ScoreFn = std::function<double(const std::vector<double>& freqs)>;

SampleFn make_die_rolling_sampler(std::uint64_t F, const Permutohedron& g);
SampleFn make_polya_sampler(std::uint64_t F, const Permutohedron& g,
                            PolyaCounting counting = PolyaCounting::ball_counts);
SampleFn make_random_permutation_sampler(const OrderDistribution& d);
// Start vertex drawn uniformly per trial; exactly stationary on a regular graph.
SampleFn make_random_walk_sampler(const Permutohedron& g, std::uint64_t steps);

ScoreFn make_entropy_score();
ScoreFn make_avg_distance_score(const Permutohedron& g);

struct McExpectation {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

McExpectation monte_carlo_expectation(const SampleFn& sampler, const ScoreFn& score,
                                      std::size_t nvertices, std::uint64_t trials,
                                      std::uint64_t seed, int threads = 0);

// Deterministic chunk schedule shared by every Monte Carlo loop.
inline constexpr std::uint64_t kMcChunk = 1024;
int resolve_threads(int requested);

}  // namespace swapdist
