#include "swapdist/analysis.hpp"

#include "swapdist/rng.hpp"

#include "helpers.hpp"

#include "doctest.h"

#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

using namespace swapdist;
using testutil::shared_graph;

namespace {

std::vector<DatasetRow> example_rows() {
    return load_csv(std::string(SWAPDIST_DATA_DIR) + "/example_word_orders.csv");
}

AnalyzeConfig fast_config(std::uint64_t trials = 3000) {
    AnalyzeConfig cfg;
    cfg.trials = trials;
    cfg.seed = 20240917;
    return cfg;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("full pipeline over the example corpus") {
    const auto rows = example_rows();
    const auto cfg = fast_config();
    const auto out = analyze(rows, cfg);
    REQUIRE(out.size() == 4);

    // spread-out three-element row
    const auto& r0 = out[0];
    CHECK(r0.report.total == 105.0);
    CHECK(r0.report.support == 6);
    CHECK(r0.report.entropy > 0.0);
    CHECK(r0.report.entropy < r0.report.entropy_max);
    CHECK(r0.report.entropy_max == doctest::Approx(std::log(6.0)).epsilon(1e-12));
    CHECK(r0.report.mean_distance > 0.0);
    CHECK(r0.report.mean_distance < 1.5);
    CHECK(r0.report.mean_distance_max == 1.5);

    // closed-form null columns
    auto g3 = shared_graph(3);
    CHECK(r0.expected_d.at(NullModel::die_rolling) == expected_d_die_rolling(105, *g3));
    CHECK(r0.expected_H.at(NullModel::die_rolling) == expected_H_die_rolling(105, 6));
    CHECK(r0.expected_d.at(NullModel::random_permutation) ==
          expected_d_random_permutation(to_distribution(rows[0], g3)));

    // the urn columns reproduce the pooled sweep at the derived per-row seed
    const auto urn = run_null_model(to_distribution(rows[0], g3), NullModel::polya_urn,
                                    cfg.trials, derive_seed(cfg.seed, 2), cfg.threads);
    CHECK(r0.expected_H.at(NullModel::polya_urn) == urn.mean_H);
    CHECK(r0.expected_d.at(NullModel::polya_urn) == urn.mean_d);

    // degenerate single-order row
    const auto& r3 = out[3];
    CHECK(r3.report.support == 1);
    CHECK(r3.report.entropy == 0.0);
    CHECK(r3.report.mean_distance == 0.0);
    const PValueCell* rp = r3.pvalue(Statistic::mean_distance, NullModel::random_permutation);
    REQUIRE(rp != nullptr);
    CHECK(rp->exact);
    CHECK(rp->trials == 720);
    CHECK(rp->raw == 1.0);   // every relabeling reproduces <d> = 0

    // all cells carry valid p-values and Holm never lowers them
    for (const auto& row : out)
        for (const auto& cell : row.pvalues) {
            CHECK(cell.raw > 0.0);
            CHECK(cell.raw <= 1.0);
            CHECK(cell.adjusted >= cell.raw);
            CHECK(cell.adjusted <= 1.0);
        }

    // no entropy test exists for relabeling (entropy is invariant under it)
    for (const auto& row : out)
        CHECK(row.pvalue(Statistic::entropy, NullModel::random_permutation) == nullptr);

    CHECK_THROWS_AS(analyze(rows, AnalyzeConfig{.trials = 0}), std::invalid_argument);
}

TEST_CASE("holm adjustment runs down each statistic-model column") {
    const auto out = analyze(example_rows(), fast_config(2000));
    for (NullModel model : {NullModel::die_rolling, NullModel::polya_urn}) {
        std::vector<double> raws;
        std::vector<bool> bounds;
        for (const auto& row : out) {
            const auto* cell = row.pvalue(Statistic::mean_distance, model);
            REQUIRE(cell != nullptr);
            raws.push_back(cell->raw);
            bounds.push_back(cell->raw_is_bound);
        }
        const auto [adj, adj_bound] = holm_correct(raws, bounds);
        for (std::size_t r = 0; r < out.size(); ++r) {
            const auto* cell = out[r].pvalue(Statistic::mean_distance, model);
            CHECK(cell->adjusted == adj[r]);
            CHECK(cell->adjusted_is_bound == adj_bound[r]);
        }
    }
    // correction = none leaves raw values in place
    auto cfg = fast_config(2000);
    cfg.correction = Correction::none;
    for (const auto& row : analyze(example_rows(), cfg))
        for (const auto& cell : row.pvalues) {
            CHECK(cell.adjusted == cell.raw);
            CHECK(cell.adjusted_is_bound == cell.raw_is_bound);
        }
}

TEST_CASE("pooled null sweep equals the single-purpose primitives") {
    auto g = shared_graph(3);
    const auto rows = example_rows();
    const auto d = to_distribution(rows[0], g);
    const std::uint64_t T = 5000, seed = 424242;

    const auto run = run_null_model(d, NullModel::polya_urn, T, seed);
    CHECK(run.trials == T);

    const auto sampler = make_polya_sampler(105, *g);
    const auto mh = monte_carlo_expectation(sampler, make_entropy_score(), 6, T, seed);
    const auto md = monte_carlo_expectation(sampler, make_avg_distance_score(*g), 6, T, seed);
    CHECK(run.mean_H == mh.mean);
    CHECK(run.se_H == mh.std_error);
    CHECK(run.mean_d == md.mean);
    CHECK(run.se_d == md.std_error);

    const auto ph = left_pvalue_mc(entropy_plugin(d), sampler, make_entropy_score(), 6, T, seed);
    const auto pd =
        left_pvalue_mc(avg_swap_distance(d), sampler, make_avg_distance_score(*g), 6, T, seed);
    CHECK(run.count_H_le == ph.count_le);
    CHECK(run.count_d_le == pd.count_le);

    // thread-count invariance of the pooled sweep
    const auto run3 = run_null_model(d, NullModel::polya_urn, T, seed, 3);
    CHECK(run.mean_H == run3.mean_H);
    CHECK(run.count_d_le == run3.count_d_le);
    CHECK(run.se_d == run3.se_d);

    CHECK_THROWS_AS(run_null_model(d, NullModel::polya_urn, 0, seed), std::invalid_argument);
}

TEST_CASE("tsv report is deterministic, thread invariant, and well shaped") {
    const auto rows = example_rows();
    auto cfg = fast_config(2000);
    const auto a = analyze_tsv(analyze(rows, cfg), cfg);
    const auto b = analyze_tsv(analyze(rows, cfg), cfg);
    CHECK(a == b);

    auto cfg1 = cfg;
    cfg1.threads = 1;
    auto cfg3 = cfg;
    cfg3.threads = 3;
    CHECK(analyze_tsv(analyze(rows, cfg1), cfg1) == analyze_tsv(analyze(rows, cfg3), cfg3));

    // a different seed must change some Monte Carlo column
    auto cfg_alt = cfg;
    cfg_alt.seed = cfg.seed + 1;
    CHECK(analyze_tsv(analyze(rows, cfg_alt), cfg_alt) != a);

    const auto lines = split(a, '\n');
    REQUIRE(lines.size() >= 6);   // comment + header + 4 rows + trailing empty
    CHECK(lines[0].rfind("# trials=2000 seed=20240917 correction=holm", 0) == 0);
    const auto header = split(lines[1], '\t');
    CHECK(header.size() == 27);   // 3 models, both statistics, raw + adjusted
    CHECK(header[0] == "database");
    CHECK(header[8] == "H");
    CHECK(header[9] == "H_pu");
    CHECK(header[10] == "H_dr");
    CHECK(header[13] == "d_rp");
    CHECK(header[26] == "p_d_dr_raw");
    for (std::size_t i = 2; i <= 5; ++i)
        CHECK(split(lines[i], '\t').size() == header.size());
    CHECK(split(lines[2], '\t')[0] == "demo-atlas");
    CHECK(split(lines[5], '\t')[5] == "25");   // F of the single-order row
}

TEST_CASE("json report parses and mirrors the analysis") {
    const auto rows = example_rows();
    const auto cfg = fast_config(2000);
    const auto out = analyze(rows, cfg);
    const auto doc = nlohmann::json::parse(analyze_json_text(out, cfg));
    CHECK(doc.at("config").at("trials") == 2000);
    CHECK(doc.at("config").at("correction") == "holm");
    CHECK(doc.at("config").at("models").size() == 3);
    REQUIRE(doc.at("rows").size() == 4);
    const auto& r0 = doc.at("rows").at(0);
    CHECK(r0.at("database") == "demo-atlas");
    CHECK(r0.at("F") == 105.0);
    CHECK(r0.at("m") == 6);
    CHECK(r0.at("H").get<double>() == out[0].report.entropy);
    CHECK(r0.at("d_rp").get<double>() ==
          out[0].expected_d.at(NullModel::random_permutation));
    const auto spectrum = r0.at("spectrum").get<std::vector<double>>();
    REQUIRE(spectrum.size() == 4);   // k = 0..3
    double mass = 0.0;
    for (double v : spectrum) mass += v;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    // every p-value cell is tagged with statistic, model and bound flags
    for (const auto& jr : doc.at("rows"))
        for (const auto& cell : jr.at("pvalues")) {
            CHECK((cell.at("statistic") == "H" || cell.at("statistic") == "d"));
            CHECK(cell.at("raw").get<double>() > 0.0);
            CHECK(cell.at("adjusted").get<double>() >= cell.at("raw").get<double>());
        }
}

TEST_CASE("row filters") {
    const auto rows = example_rows();
    CHECK(row_matches(rows[0], {}));
    CHECK(row_matches(rows[0], {"n=3"}));
    CHECK_FALSE(row_matches(rows[0], {"n=4"}));
    CHECK(row_matches(rows[0], {"kind=dominant"}));         // prefix match
    CHECK(row_matches(rows[0], {"kind=dominant order"}));
    CHECK_FALSE(row_matches(rows[0], {"kind=corpus"}));
    CHECK(row_matches(rows[2], {"kind=corpus", "n=4", "database=demo-corpus"}));
    CHECK_FALSE(row_matches(rows[2], {"kind=corpus", "n=3"}));
    CHECK(row_matches(rows[0], {"structure=SOV", "unit=langs"}));
    CHECK_FALSE(row_matches(rows[0], {"unit=genera"}));
    CHECK_THROWS_AS(row_matches(rows[0], {"bogus=1"}), std::invalid_argument);
    CHECK_THROWS_AS(row_matches(rows[0], {"n3"}), std::invalid_argument);
}

TEST_CASE("signed-rank sweep across rows") {
    const auto rows = example_rows();
    WilcoxonConfig cfg;
    cfg.stat = Statistic::mean_distance;
    cfg.model = NullModel::die_rolling;
    const auto rep = wilcoxon_rows(rows, cfg);
    CHECK(rep.rows_used == 4);
    REQUIRE(rep.observed.size() == 4);
    REQUIRE(rep.row_ids.size() == 4);
    CHECK(rep.row_ids[0] == "demo-atlas/dominant order/SOV/langs");

    // expectations column uses the closed form per row
    auto g3 = shared_graph(3);
    auto g4 = shared_graph(4);
    CHECK(rep.expected[0] == expected_d_die_rolling(105, *g3));
    CHECK(rep.expected[1] == expected_d_die_rolling(41, *g3));
    CHECK(rep.expected[2] == expected_d_die_rolling(120, *g4));
    CHECK(rep.expected[3] == expected_d_die_rolling(25, *g3));

    // the reported test is exactly the signed-rank test of those two columns
    const auto direct = wilcoxon_left(rep.observed, rep.expected);
    CHECK(rep.result.v == direct.v);
    CHECK(rep.result.n_eff == direct.n_eff);
    CHECK(rep.result.p_left() == direct.p_left());

    // filters select subsets
    WilcoxonConfig sub = cfg;
    sub.filters = {"n=3"};
    CHECK(wilcoxon_rows(rows, sub).rows_used == 3);

    // entropy against relabeling is degenerate: all differences vanish
    WilcoxonConfig bad = cfg;
    bad.stat = Statistic::entropy;
    bad.model = NullModel::random_permutation;
    CHECK_THROWS_AS(wilcoxon_rows(rows, bad), std::invalid_argument);

    WilcoxonConfig none = cfg;
    none.filters = {"database=missing"};
    CHECK_THROWS_AS(wilcoxon_rows(rows, none), std::invalid_argument);

    // tsv writer carries the headline numbers
    const auto text = wilcoxon_tsv(rep, cfg);
    CHECK(text.rfind("# score=d null=dr", 0) == 0);
    const auto tl = split(text, '\n');
    REQUIRE(tl.size() >= 4);
    CHECK(tl[1] == "rows\tn_eff\tV\tp_exact\tp_normal");
    CHECK(split(tl[2], '\t')[0] == "4");
    const auto jd = nlohmann::json::parse(wilcoxon_json_text(rep, cfg));
    CHECK(jd.at("n_eff") == rep.result.n_eff);
    CHECK(jd.at("rows").size() == 4);
}

TEST_CASE("combinatorial table writers") {
    const auto t = compute_pm_table(3, 2);
    const auto text = power_table_tsv(t);
    const auto lines = split(text, '\n');
    REQUIRE(lines.size() >= 6);
    CHECK(lines[0] == "# n=3 m=2 sequences=5");
    CHECK(lines[1] == "P_m\tP_m_float\tbucket_size\tmask_count\tdistance_multiset\trepresentative");
    CHECK(lines[2] == "1/5\t0.2\t1\t1\t3\t123 321");
    CHECK(lines[3] == "2/5\t0.4\t2\t2\t1\t123 132");
    CHECK(lines[4] == "2/5\t0.4\t2\t2\t2\t123 231");
    const auto jt = nlohmann::json::parse(power_table_json_text(t));
    CHECK(jt.at("sequences") == 5);
    REQUIRE(jt.at("classes").size() == 3);
    CHECK(jt.at("classes").at(0).at("P_m") == "1/5");
    CHECK(jt.at("classes").at(0).at("representative_ids") == std::vector<VertexId>{0, 5});

    const auto ce = find_multiset_counterexample();
    const auto cet = counterexample_tsv(ce);
    const auto cel = split(cet, '\n');
    REQUIRE(cel.size() >= 3);
    CHECK(cel[0] == "distance_multiset\tP_m\tmask");
    CHECK(cel[1] == "1,1,2,2,3,3\t2/5313\t1234 1243 1342 1432");
    CHECK(cel[2] == "1,1,2,2,3,3\t4/5313\t1234 1243 1324 2314");
    const auto cj = nlohmann::json::parse(counterexample_json_text(ce));
    CHECK(cj.at("low").at("P_m") == "2/5313");
    CHECK(cj.at("high").at("P_m") == "4/5313");

    const auto st = spectra_tsv(3);
    const auto sl = split(st, '\n');
    REQUIRE(sl.size() >= 5);
    CHECK(sl[0] == "# n=3 shift=1.5 negative_semidefinite=1");
    CHECK(sl[1] == "eigenvalue\tmultiplicity");
    const auto row = [&](std::size_t i) {
        const auto f = split(sl[i], '\t');
        REQUIRE(f.size() == 2);
        return std::pair<double, int>{std::strtod(f[0].c_str(), nullptr), std::stoi(f[1])};
    };
    CHECK(row(2).first == doctest::Approx(-4.0).epsilon(1e-9));
    CHECK(row(2).second == 2);
    CHECK(row(3).first == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(row(3).second == 1);
    CHECK(std::abs(row(4).first) < 1e-9);
    CHECK(row(4).second == 3);
    const auto sj = nlohmann::json::parse(spectra_json_text(4));
    CHECK(sj.at("negative_semidefinite") == true);
    REQUIRE(sj.at("groups").size() == 3);
    CHECK(sj.at("groups").at(2).at("multiplicity") == 18);
}

}  // TEST_SUITE
