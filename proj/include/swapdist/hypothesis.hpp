#pragma once

#include "swapdist/measures.hpp"
#include "swapdist/nullmodels.hpp"
#include "swapdist/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace swapdist {

struct TestResult {
    double p_left = 1.0;
    bool is_upper_bound = false;   // no null sample scored <= observed; p = 1/T
    std::uint64_t trials = 0;
    std::uint64_t count_le = 0;
};

// Left-tail Monte Carlo p-value: share of null samples whose score is <= the
// observed score. The comparison is inclusive, so ties inflate p
// (conservative). A zero count is reported as 1/T with is_upper_bound set.
TestResult left_pvalue_mc(double observed, const SampleFn& sampler,
                          const ScoreFn& score, std::size_t nvertices,
                          std::uint64_t trials, std::uint64_t seed,
                          int threads = 0);

struct ExactPValue {
    std::uint64_t count_le = 0;      // permutations scoring <= observed
    std::uint64_t count_eq = 0;      // permutations scoring == observed
    std::uint64_t total = 0;         // N!
    Rational p_left() const { return Rational(count_le, total); }
    Rational p_equal() const { return Rational(count_eq, total); }
};

// Exact left-tail permutation test for <d>: enumerates all N! relabelings of
// the frequency vector. n = 3 scale (720 permutations). Scores are compared
// through the integer-valued quadratic form sum d_ij f_i f_j with a 1e-12
// relative tolerance for non-integer frequencies.
ExactPValue left_pvalue_exact_rp(const OrderDistribution& d);

// Holm step-down adjustment of a family of p-values (any order); returns the
// adjusted values in the original order. The flagged overload propagates
// upper-bound markers through the running maximum.
std::vector<double> holm_correct(const std::vector<double>& pvalues);
std::pair<std::vector<double>, std::vector<bool>> holm_correct(
    const std::vector<double>& pvalues, const std::vector<bool>& is_bound);

struct WilcoxonResult {
    double v = 0.0;                      // rank sum of positive differences
    int n_eff = 0;                       // pairs after dropping zeros
    std::optional<double> p_exact;       // 2^n_eff enumeration, n_eff <= 20
    double p_normal = 1.0;               // normal approximation, c.c. + tie term
    double p_left() const { return p_exact ? *p_exact : p_normal; }
};

// One-sided (left) Wilcoxon signed-rank test of x against y: small V, i.e.
// x systematically below y, gives a small p. Zero differences are dropped
// and tied magnitudes get midranks.
WilcoxonResult wilcoxon_left(const std::vector<double>& x,
                             const std::vector<double>& y);

}  // namespace swapdist
