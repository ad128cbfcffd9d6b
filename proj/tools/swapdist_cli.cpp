#include "swapdist/analysis.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCompute = 3;

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file " + path);
    out << text;
}

std::vector<swapdist::NullModel> parse_models(const std::vector<std::string>& specs) {
    using swapdist::NullModel;
    const std::map<std::string, NullModel> table = {
        {"dr", NullModel::die_rolling},
        {"rw", NullModel::random_walk},
        {"pu", NullModel::polya_urn},
        {"rp", NullModel::random_permutation},
    };
    std::vector<NullModel> out;
    auto add = [&](NullModel m) {
        for (NullModel seen : out)
            if (seen == m) return;
        out.push_back(m);
    };
    for (const auto& s : specs) {
        if (s == "all") {
            for (const auto& [key, m] : table) add(m);
        } else {
            const auto it = table.find(s);
            if (it == table.end())
                throw std::invalid_argument("unknown null model '" + s + "' (use dr, rw, pu, rp, all)");
            add(it->second);
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace swapdist;

    CLI::App app{"entropy and swap-distance diversity over the permutohedron"};
    app.require_subcommand(1);

    std::string input, output, format = "tsv", correction = "holm";
    std::uint64_t trials = kDefaultTrials;
    std::uint64_t seed = kDefaultSeed;
    int threads = 0;
    double alpha = 0.05;
    bool no_exact = false;
    std::vector<std::string> model_specs;
    std::vector<std::string> filters;

    auto add_common = [&](CLI::App* cmd, bool with_mc) {
        cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"tsv", "json"}));
        cmd->add_option("-o,--output", output, "output path (default stdout)");
        if (with_mc) {
            cmd->add_option("--trials", trials, "Monte Carlo trials");
            cmd->add_option("--seed", seed, "master RNG seed")->envname("SWAPDIST_SEED");
            cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
        }
    };

    auto* analyze_cmd = app.add_subcommand("analyze", "diversity report for a dataset");
    analyze_cmd->add_option("-i,--input", input, "dataset (.csv or .json)")->required();
    analyze_cmd->add_option("--null", model_specs, "null models: dr, rw, pu, rp, all");
    analyze_cmd->add_option("--correction", correction, "multiple-comparison correction")
        ->check(CLI::IsMember({"holm", "none"}));
    analyze_cmd->add_option("--alpha", alpha, "significance annotation level");
    analyze_cmd->add_flag("--no-exact", no_exact,
                          "Monte Carlo instead of the exact n=3 permutation test");
    add_common(analyze_cmd, true);

    std::string w_score = "d", w_null = "pu";
    auto* wilcoxon_cmd = app.add_subcommand("wilcoxon", "signed-rank test of scores vs null expectations");
    wilcoxon_cmd->add_option("-i,--input", input, "dataset (.csv or .json)")->required();
    wilcoxon_cmd->add_option("--score", w_score, "statistic")->check(CLI::IsMember({"H", "d"}));
    wilcoxon_cmd->add_option("--null", w_null, "null model")
        ->check(CLI::IsMember({"dr", "rw", "pu", "rp"}));
    wilcoxon_cmd->add_option("--filter", filters, "row filter key=value (repeatable)");
    add_common(wilcoxon_cmd, true);

    int n = 3, m = 2;
    bool counterexample = false, allow_large = false;
    auto* power_cmd = app.add_subcommand("power", "permutation-test power bounds P_m");
    power_cmd->add_option("--n", n, "permutohedron order")->required();
    power_cmd->add_option("--m", m, "support size");
    power_cmd->add_flag("--counterexample", counterexample,
                        "emit the equal-multiset, unequal-P_m mask pair (n=4, m=4)");
    add_common(power_cmd, false);

    auto* spectra_cmd = app.add_subcommand("spectra", "eigenvalues of the shifted distance matrix");
    spectra_cmd->add_option("--n", n, "permutohedron order")->required();
    spectra_cmd->add_flag("--allow-large", allow_large, "permit the n=7 dense matrix");
    add_common(spectra_cmd, false);

    std::string row_id;
    auto* graph_cmd = app.add_subcommand("graph", "DOT export of the permutohedron");
    graph_cmd->add_option("--n", n, "permutohedron order");
    graph_cmd->add_option("-i,--input", input, "dataset supplying vertex weights");
    graph_cmd->add_option("--row", row_id, "dataset row id or 0-based index (default first row)");
    add_common(graph_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*analyze_cmd) {
            AnalyzeConfig cfg;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.threads = threads;
            cfg.alpha = alpha;
            cfg.correction = correction == "none" ? Correction::none : Correction::holm;
            cfg.exact_rp = !no_exact;
            if (!model_specs.empty()) cfg.models = parse_models(model_specs);
            const auto rows = load_dataset(input);
            const auto result = analyze(rows, cfg);
            write_output(format == "json" ? analyze_json_text(result, cfg)
                                          : analyze_tsv(result, cfg),
                         output);
        } else if (*wilcoxon_cmd) {
            WilcoxonConfig cfg;
            cfg.stat = w_score == "H" ? Statistic::entropy : Statistic::mean_distance;
            cfg.model = parse_models({w_null}).front();
            cfg.filters = filters;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.threads = threads;
            const auto rows = load_dataset(input);
            const auto rep = wilcoxon_rows(rows, cfg);
            write_output(format == "json" ? wilcoxon_json_text(rep, cfg) : wilcoxon_tsv(rep, cfg),
                         output);
        } else if (*power_cmd) {
            if (counterexample) {
                const auto ce = find_multiset_counterexample();
                write_output(format == "json" ? counterexample_json_text(ce)
                                              : counterexample_tsv(ce),
                             output);
            } else {
                const auto table = compute_pm_table(n, m);
                write_output(format == "json" ? power_table_json_text(table)
                                              : power_table_tsv(table),
                             output);
            }
        } else if (*spectra_cmd) {
            write_output(format == "json" ? spectra_json_text(n, allow_large)
                                          : spectra_tsv(n, allow_large),
                         output);
        } else if (*graph_cmd) {
            if (input.empty()) {
                const auto g = Permutohedron::build(n);
                write_output(export_dot(g), output);
            } else {
                const auto rows = load_dataset(input);
                std::size_t idx = 0;
                if (!row_id.empty()) {
                    bool numeric = !row_id.empty() &&
                                   row_id.find_first_not_of("0123456789") == std::string::npos;
                    if (numeric) {
                        idx = std::stoul(row_id);
                        if (idx >= rows.size())
                            throw std::invalid_argument("row index out of range: " + row_id);
                    } else {
                        idx = rows.size();
                        for (std::size_t i = 0; i < rows.size(); ++i)
                            if (rows[i].id() == row_id) idx = i;
                        if (idx == rows.size())
                            throw std::invalid_argument("no row with id " + row_id);
                    }
                }
                auto g = std::make_shared<const Permutohedron>(Permutohedron::build(rows[idx].n));
                const auto dist = to_distribution(rows[idx], g);
                std::vector<std::string> labels;
                for (std::size_t v = 0; v < g->vertex_count(); ++v)
                    labels.push_back(dist.order_label(static_cast<VertexId>(v)));
                write_output(export_dot(*g, dist.probs(), labels), output);
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::out_of_range& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return kExitCompute;
    }
    return kExitOk;
}
