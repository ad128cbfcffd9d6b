#pragma once

#include "swapdist/datasets.hpp"
#include "swapdist/format.hpp"
#include "swapdist/hypothesis.hpp"
#include "swapdist/measures.hpp"
#include "swapdist/nullmodels.hpp"
#include "swapdist/powerbound.hpp"
#include "swapdist/spectral.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace swapdist {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed0001;
inline constexpr std::uint64_t kDefaultTrials = 1'000'000;

enum class Correction { holm, none };
enum class Statistic { entropy, mean_distance };

std::string statistic_key(Statistic s);  // "H", "d"

struct AnalyzeConfig {
    std::uint64_t trials = kDefaultTrials;
    std::uint64_t seed = kDefaultSeed;
    double alpha = 0.05;                       // report annotation only
    Correction correction = Correction::holm;
    bool exact_rp = true;                      // exact permutation test at n = 3
    std::vector<NullModel> models = {NullModel::die_rolling, NullModel::polya_urn,
                                     NullModel::random_permutation};
    int threads = 0;                           // 0 = hardware default
};

struct PValueCell {
    Statistic stat;
    NullModel model;
    double raw = 1.0;
    bool raw_is_bound = false;
    double adjusted = 1.0;
    bool adjusted_is_bound = false;
    bool exact = false;            // exhaustive permutation test, not MC
    std::uint64_t trials = 0;
};

struct AnalyzeRow {
    DatasetRow meta;
    DiversityReport report;
    // Null expectations; keyed by model, present when the model was run.
    std::map<NullModel, double> expected_H;
    std::map<NullModel, double> expected_d;
    std::vector<PValueCell> pvalues;

    const PValueCell* pvalue(Statistic s, NullModel m) const;
};

std::vector<AnalyzeRow> analyze(const std::vector<DatasetRow>& rows,
                                const AnalyzeConfig& cfg);

std::string analyze_tsv(const std::vector<AnalyzeRow>& rows, const AnalyzeConfig& cfg);
std::string analyze_json_text(const std::vector<AnalyzeRow>& rows, const AnalyzeConfig& cfg);

// Pooled Monte Carlo sweep for one row and one model: null means of both
// statistics plus inclusive tie counts against the observed values, from a
// single sample stream. Identical to running left_pvalue_mc /
// monte_carlo_expectation with the same seed, model and trial count.
struct NullModelRun {
    double mean_H = 0.0, se_H = 0.0;
    double mean_d = 0.0, se_d = 0.0;
    std::uint64_t count_H_le = 0, count_d_le = 0;
    std::uint64_t trials = 0;
};

NullModelRun run_null_model(const OrderDistribution& observed, NullModel model,
                            std::uint64_t trials, std::uint64_t seed, int threads = 0);

// Row filter: "n=3", "kind=dominant" (prefix match on kind), otherwise exact
// match on database/structure/unit.
bool row_matches(const DatasetRow& row, const std::vector<std::string>& filters);

struct WilcoxonConfig {
    Statistic stat = Statistic::mean_distance;
    NullModel model = NullModel::polya_urn;
    std::vector<std::string> filters;
    std::uint64_t trials = kDefaultTrials;
    std::uint64_t seed = kDefaultSeed;
    int threads = 0;
};

struct WilcoxonReport {
    WilcoxonResult result;
    std::size_t rows_used = 0;
    std::vector<std::string> row_ids;
    std::vector<double> observed;
    std::vector<double> expected;
};

// Pairs each selected row's observed statistic with its null expectation and
// runs the one-sided signed-rank test (observed below expectation = small p).
WilcoxonReport wilcoxon_rows(const std::vector<DatasetRow>& rows,
                             const WilcoxonConfig& cfg);

std::string wilcoxon_tsv(const WilcoxonReport& rep, const WilcoxonConfig& cfg);
std::string wilcoxon_json_text(const WilcoxonReport& rep, const WilcoxonConfig& cfg);

// Table writers for the combinatorial outputs.
std::string power_table_tsv(const MaskClassTable& table);
std::string power_table_json_text(const MaskClassTable& table);
std::string counterexample_tsv(const MultisetCounterexample& ce);
std::string counterexample_json_text(const MultisetCounterexample& ce);
std::string spectra_tsv(int n, bool allow_large = false);
std::string spectra_json_text(int n, bool allow_large = false);

}  // namespace swapdist
