#include "swapdist/analysis.hpp"

#include "swapdist/detail/parallel.hpp"
#include "swapdist/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace swapdist {

namespace {

int model_id(NullModel m) {
    switch (m) {
        case NullModel::die_rolling: return 0;
        case NullModel::random_walk: return 1;
        case NullModel::polya_urn: return 2;
        case NullModel::random_permutation: return 3;
    }
    throw std::invalid_argument("model_id: unknown model");
}

std::uint64_t row_model_seed(std::uint64_t master, std::size_t row, NullModel m) {
    return derive_seed(master, static_cast<std::uint64_t>(row) * 8 +
                                   static_cast<std::uint64_t>(model_id(m)));
}

std::uint64_t rounded_total(const OrderDistribution& d) {
    const auto F = static_cast<std::uint64_t>(std::llround(d.total()));
    return F == 0 ? 1 : F;
}

// Column orders mirroring the report tables.
const std::vector<NullModel> kHOrder = {NullModel::polya_urn, NullModel::die_rolling,
                                        NullModel::random_walk};
const std::vector<NullModel> kDOrder = {NullModel::random_permutation, NullModel::polya_urn,
                                        NullModel::die_rolling, NullModel::random_walk};

bool selected(const AnalyzeConfig& cfg, NullModel m) {
    return std::find(cfg.models.begin(), cfg.models.end(), m) != cfg.models.end();
}

std::shared_ptr<const Permutohedron> graph_for(int n,
                                               std::map<int, std::shared_ptr<const Permutohedron>>& cache) {
    auto it = cache.find(n);
    if (it == cache.end()) {
        // keep the matrix dense through n = 6 so per-trial scores stay O(m^2)
        const auto storage = n <= 6 ? Permutohedron::DistanceStorage::full
                                    : Permutohedron::DistanceStorage::on_demand;
        it = cache.emplace(n, std::make_shared<Permutohedron>(Permutohedron::build(n, storage)))
                 .first;
    }
    return it->second;
}

}  // namespace

std::string statistic_key(Statistic s) {
    return s == Statistic::entropy ? "H" : "d";
}

const PValueCell* AnalyzeRow::pvalue(Statistic s, NullModel m) const {
    for (const auto& c : pvalues)
        if (c.stat == s && c.model == m) return &c;
    return nullptr;
}

NullModelRun run_null_model(const OrderDistribution& observed, NullModel model,
                            std::uint64_t trials, std::uint64_t seed, int threads) {
    if (trials == 0) throw std::invalid_argument("run_null_model: trials must be >= 1");
    const Permutohedron& g = observed.graph();
    const std::uint64_t F = rounded_total(observed);

    SampleFn sampler;
    switch (model) {
        case NullModel::die_rolling: sampler = make_die_rolling_sampler(F, g); break;
        case NullModel::random_walk: sampler = make_random_walk_sampler(g, F); break;
        case NullModel::polya_urn: sampler = make_polya_sampler(F, g); break;
        case NullModel::random_permutation:
            sampler = make_random_permutation_sampler(observed);
            break;
    }
    const double obs_H = entropy_plugin(observed);
    const double obs_d = avg_swap_distance(observed);

    struct Chunk {
        detail::Kahan h, h2, d, d2;
        std::uint64_t h_le = 0, d_le = 0;
    };
    auto chunks = detail::run_chunked<Chunk>(
        trials, kMcChunk, resolve_threads(threads),
        [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
            Chunk c;
            std::vector<double> freqs(g.vertex_count());
            for (std::uint64_t t = begin; t < end; ++t) {
                sampler(derive_seed(seed, t), freqs);
                const double h = entropy_plugin(freqs);
                const double d = avg_swap_distance(g, freqs);
                c.h.add(h);
                c.h2.add(h * h);
                c.d.add(d);
                c.d2.add(d * d);
                if (h <= obs_H) ++c.h_le;
                if (d <= obs_d) ++c.d_le;
            }
            return c;
        });

    detail::Kahan h, h2, d, d2;
    NullModelRun out;
    for (const auto& c : chunks) {
        h.add(c.h.sum);
        h2.add(c.h2.sum);
        d.add(c.d.sum);
        d2.add(c.d2.sum);
        out.count_H_le += c.h_le;
        out.count_d_le += c.d_le;
    }
    const double T = static_cast<double>(trials);
    out.trials = trials;
    out.mean_H = h.sum / T;
    out.mean_d = d.sum / T;
    out.se_H = std::sqrt(std::max(0.0, h2.sum / T - out.mean_H * out.mean_H) / T);
    out.se_d = std::sqrt(std::max(0.0, d2.sum / T - out.mean_d * out.mean_d) / T);
    return out;
}

std::vector<AnalyzeRow> analyze(const std::vector<DatasetRow>& rows, const AnalyzeConfig& cfg) {
    if (cfg.trials == 0) throw std::invalid_argument("analyze: trials must be >= 1");
    std::map<int, std::shared_ptr<const Permutohedron>> cache;
    std::vector<AnalyzeRow> out;
    out.reserve(rows.size());

    for (std::size_t r = 0; r < rows.size(); ++r) {
        const DatasetRow& row = rows[r];
        auto g = graph_for(row.n, cache);
        const OrderDistribution dist = to_distribution(row, g);

        AnalyzeRow ar;
        ar.meta = row;
        ar.report = compute_report(dist);
        const std::uint64_t F = rounded_total(dist);

        for (NullModel model : kDOrder) {
            if (!selected(cfg, model)) continue;
            switch (model) {
                case NullModel::die_rolling: {
                    ar.expected_H[model] = expected_H_die_rolling(F, g->vertex_count());
                    ar.expected_d[model] = expected_d_die_rolling(F, *g);
                    const auto run = run_null_model(dist, model, cfg.trials,
                                                    row_model_seed(cfg.seed, r, model), cfg.threads);
                    const bool hb = run.count_H_le == 0, db = run.count_d_le == 0;
                    ar.pvalues.push_back({Statistic::entropy, model,
                                          hb ? 1.0 / static_cast<double>(run.trials)
                                             : static_cast<double>(run.count_H_le) / static_cast<double>(run.trials),
                                          hb, 1.0, false, false, run.trials});
                    ar.pvalues.push_back({Statistic::mean_distance, model,
                                          db ? 1.0 / static_cast<double>(run.trials)
                                             : static_cast<double>(run.count_d_le) / static_cast<double>(run.trials),
                                          db, 1.0, false, false, run.trials});
                    break;
                }
                case NullModel::random_walk:
                case NullModel::polya_urn: {
                    const auto run = run_null_model(dist, model, cfg.trials,
                                                    row_model_seed(cfg.seed, r, model), cfg.threads);
                    ar.expected_H[model] = run.mean_H;
                    ar.expected_d[model] = run.mean_d;
                    const bool hb = run.count_H_le == 0, db = run.count_d_le == 0;
                    ar.pvalues.push_back({Statistic::entropy, model,
                                          hb ? 1.0 / static_cast<double>(run.trials)
                                             : static_cast<double>(run.count_H_le) / static_cast<double>(run.trials),
                                          hb, 1.0, false, false, run.trials});
                    ar.pvalues.push_back({Statistic::mean_distance, model,
                                          db ? 1.0 / static_cast<double>(run.trials)
                                             : static_cast<double>(run.count_d_le) / static_cast<double>(run.trials),
                                          db, 1.0, false, false, run.trials});
                    break;
                }
                case NullModel::random_permutation: {
                    ar.expected_d[model] = expected_d_random_permutation(dist);
                    // entropy is invariant under relabeling: no test
                    if (cfg.exact_rp && row.n <= 3) {
                        const auto ex = left_pvalue_exact_rp(dist);
                        ar.pvalues.push_back({Statistic::mean_distance, model,
                                              rational_double(ex.p_left()), false, 1.0, false,
                                              true, ex.total});
                    } else {
                        const auto run = run_null_model(dist, model, cfg.trials,
                                                        row_model_seed(cfg.seed, r, model), cfg.threads);
                        const bool db = run.count_d_le == 0;
                        ar.pvalues.push_back({Statistic::mean_distance, model,
                                              db ? 1.0 / static_cast<double>(run.trials)
                                                 : static_cast<double>(run.count_d_le) / static_cast<double>(run.trials),
                                              db, 1.0, false, false, run.trials});
                    }
                    break;
                }
            }
        }
        out.push_back(std::move(ar));
    }

    // multiple-comparison correction applied down each (statistic, model) column
    for (Statistic stat : {Statistic::entropy, Statistic::mean_distance}) {
        for (NullModel model : kDOrder) {
            std::vector<std::size_t> where;
            std::vector<double> raws;
            std::vector<bool> bounds;
            for (std::size_t r = 0; r < out.size(); ++r) {
                for (std::size_t c = 0; c < out[r].pvalues.size(); ++c) {
                    const auto& cell = out[r].pvalues[c];
                    if (cell.stat == stat && cell.model == model) {
                        where.push_back(r * 1000 + c);
                        raws.push_back(cell.raw);
                        bounds.push_back(cell.raw_is_bound);
                    }
                }
            }
            if (raws.empty()) continue;
            if (cfg.correction == Correction::holm) {
                auto [adj, adj_bound] = holm_correct(raws, bounds);
                for (std::size_t i = 0; i < where.size(); ++i) {
                    auto& cell = out[where[i] / 1000].pvalues[where[i] % 1000];
                    cell.adjusted = adj[i];
                    cell.adjusted_is_bound = adj_bound[i];
                }
            } else {
                for (std::size_t i = 0; i < where.size(); ++i) {
                    auto& cell = out[where[i] / 1000].pvalues[where[i] % 1000];
                    cell.adjusted = raws[i];
                    cell.adjusted_is_bound = bounds[i];
                }
            }
        }
    }
    return out;
}

namespace {

std::string correction_key(Correction c) { return c == Correction::holm ? "holm" : "none"; }

void append_config_comment(std::string& out, const AnalyzeConfig& cfg) {
    out += "# trials=" + std::to_string(cfg.trials) + " seed=" + std::to_string(cfg.seed) +
           " correction=" + correction_key(cfg.correction) +
           " alpha=" + format_double(cfg.alpha) + " exact_rp=" + (cfg.exact_rp ? "1" : "0") +
           " models=";
    bool first = true;
    for (NullModel m : kDOrder) {
        if (!selected(cfg, m)) continue;
        if (!first) out += ",";
        out += null_model_key(m);
        first = false;
    }
    out += "\n";
}

}  // namespace

std::string analyze_tsv(const std::vector<AnalyzeRow>& rows, const AnalyzeConfig& cfg) {
    std::string out;
    append_config_comment(out, cfg);

    out += "database\tkind\tn\tstructure\tunit\tF\tm\tS_bar\tH";
    for (NullModel m : kHOrder)
        if (selected(cfg, m)) out += "\tH_" + null_model_key(m);
    out += "\tH_max\td";
    for (NullModel m : kDOrder)
        if (selected(cfg, m)) out += "\td_" + null_model_key(m);
    out += "\td_max";
    for (NullModel m : kHOrder)
        if (selected(cfg, m)) out += "\tp_H_" + null_model_key(m) + "\tp_H_" + null_model_key(m) + "_raw";
    for (NullModel m : kDOrder)
        if (selected(cfg, m)) out += "\tp_d_" + null_model_key(m) + "\tp_d_" + null_model_key(m) + "_raw";
    out += "\n";

    for (const auto& row : rows) {
        out += row.meta.database + "\t" + row.meta.kind + "\t" + std::to_string(row.meta.n) +
               "\t" + row.meta.structure + "\t" + row.meta.unit + "\t" +
               format_double(row.report.total) + "\t" + std::to_string(row.report.support) +
               "\t" + format_double(row.report.dominance) + "\t" + format_double(row.report.entropy);
        for (NullModel m : kHOrder) {
            if (!selected(cfg, m)) continue;
            const auto it = row.expected_H.find(m);
            out += "\t" + (it == row.expected_H.end() ? std::string("-") : format_double(it->second));
        }
        out += "\t" + format_double(row.report.entropy_max) + "\t" +
               format_double(row.report.mean_distance);
        for (NullModel m : kDOrder) {
            if (!selected(cfg, m)) continue;
            const auto it = row.expected_d.find(m);
            out += "\t" + (it == row.expected_d.end() ? std::string("-") : format_double(it->second));
        }
        out += "\t" + format_double(row.report.mean_distance_max);
        auto emit_p = [&](Statistic s, NullModel m) {
            const PValueCell* cell = row.pvalue(s, m);
            if (!cell) {
                out += "\t-\t-";
                return;
            }
            out += "\t" + format_pvalue(cell->adjusted, cell->adjusted_is_bound) + "\t" +
                   format_pvalue(cell->raw, cell->raw_is_bound);
        };
        for (NullModel m : kHOrder)
            if (selected(cfg, m)) emit_p(Statistic::entropy, m);
        for (NullModel m : kDOrder)
            if (selected(cfg, m)) emit_p(Statistic::mean_distance, m);
        out += "\n";
    }
    return out;
}

std::string analyze_json_text(const std::vector<AnalyzeRow>& rows, const AnalyzeConfig& cfg) {
    nlohmann::ordered_json doc;
    doc["config"] = {{"trials", cfg.trials},
                     {"seed", cfg.seed},
                     {"alpha", cfg.alpha},
                     {"correction", correction_key(cfg.correction)},
                     {"exact_rp", cfg.exact_rp}};
    auto& models = doc["config"]["models"] = nlohmann::ordered_json::array();
    for (NullModel m : kDOrder)
        if (selected(cfg, m)) models.push_back(null_model_key(m));

    auto& jrows = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json jr;
        jr["database"] = row.meta.database;
        jr["kind"] = row.meta.kind;
        jr["n"] = row.meta.n;
        jr["structure"] = row.meta.structure;
        jr["unit"] = row.meta.unit;
        jr["F"] = row.report.total;
        jr["m"] = row.report.support;
        jr["simpson"] = row.report.simpson;
        jr["dominance"] = row.report.dominance;
        jr["H"] = row.report.entropy;
        jr["H_max"] = row.report.entropy_max;
        jr["d"] = row.report.mean_distance;
        jr["d_max"] = row.report.mean_distance_max;
        jr["spectrum"] = row.report.spectrum;
        for (NullModel m : kHOrder)
            if (const auto it = row.expected_H.find(m); it != row.expected_H.end())
                jr["H_" + null_model_key(m)] = it->second;
        for (NullModel m : kDOrder)
            if (const auto it = row.expected_d.find(m); it != row.expected_d.end())
                jr["d_" + null_model_key(m)] = it->second;
        auto& jps = jr["pvalues"] = nlohmann::ordered_json::array();
        for (const auto& cell : row.pvalues) {
            jps.push_back({{"statistic", statistic_key(cell.stat)},
                           {"model", null_model_key(cell.model)},
                           {"raw", cell.raw},
                           {"raw_is_upper_bound", cell.raw_is_bound},
                           {"adjusted", cell.adjusted},
                           {"adjusted_is_upper_bound", cell.adjusted_is_bound},
                           {"exact", cell.exact},
                           {"trials", cell.trials}});
        }
        jrows.push_back(std::move(jr));
    }
    return doc.dump(2) + "\n";
}

bool row_matches(const DatasetRow& row, const std::vector<std::string>& filters) {
    for (const auto& f : filters) {
        const auto eq = f.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("filter must look like key=value: " + f);
        const std::string key = f.substr(0, eq);
        const std::string value = f.substr(eq + 1);
        if (key == "n") {
            if (std::to_string(row.n) != value) return false;
        } else if (key == "kind") {
            if (row.kind.rfind(value, 0) != 0) return false;  // prefix match
        } else if (key == "database") {
            if (row.database != value) return false;
        } else if (key == "structure") {
            if (row.structure != value) return false;
        } else if (key == "unit") {
            if (row.unit != value) return false;
        } else {
            throw std::invalid_argument("unknown filter key: " + key);
        }
    }
    return true;
}

WilcoxonReport wilcoxon_rows(const std::vector<DatasetRow>& rows, const WilcoxonConfig& cfg) {
    std::map<int, std::shared_ptr<const Permutohedron>> cache;
    WilcoxonReport rep;

    for (std::size_t r = 0; r < rows.size(); ++r) {
        const DatasetRow& row = rows[r];
        if (!row_matches(row, cfg.filters)) continue;
        auto g = graph_for(row.n, cache);
        const OrderDistribution dist = to_distribution(row, g);
        const std::uint64_t F = rounded_total(dist);

        double observed = 0.0, expected = 0.0;
        if (cfg.stat == Statistic::entropy) {
            observed = entropy_plugin(dist);
            switch (cfg.model) {
                case NullModel::die_rolling:
                    expected = expected_H_die_rolling(F, g->vertex_count());
                    break;
                case NullModel::random_permutation:
                    expected = observed;  // relabeling preserves entropy
                    break;
                default:
                    expected = run_null_model(dist, cfg.model, cfg.trials,
                                              row_model_seed(cfg.seed, r, cfg.model), cfg.threads)
                                   .mean_H;
            }
        } else {
            observed = avg_swap_distance(dist);
            switch (cfg.model) {
                case NullModel::die_rolling:
                    expected = expected_d_die_rolling(F, *g);
                    break;
                case NullModel::random_permutation:
                    expected = expected_d_random_permutation(dist);
                    break;
                default:
                    expected = run_null_model(dist, cfg.model, cfg.trials,
                                              row_model_seed(cfg.seed, r, cfg.model), cfg.threads)
                                   .mean_d;
            }
        }
        rep.row_ids.push_back(row.id());
        rep.observed.push_back(observed);
        rep.expected.push_back(expected);
    }
    rep.rows_used = rep.observed.size();
    if (rep.rows_used == 0)
        throw std::invalid_argument("wilcoxon_rows: no rows match the filters");
    rep.result = wilcoxon_left(rep.observed, rep.expected);
    return rep;
}

std::string wilcoxon_tsv(const WilcoxonReport& rep, const WilcoxonConfig& cfg) {
    std::string out = "# score=" + statistic_key(cfg.stat) + " null=" + null_model_key(cfg.model);
    for (const auto& f : cfg.filters) out += " filter=" + f;
    out += "\n";
    out += "rows\tn_eff\tV\tp_exact\tp_normal\n";
    out += std::to_string(rep.rows_used) + "\t" + std::to_string(rep.result.n_eff) + "\t" +
           format_double(rep.result.v) + "\t" +
           (rep.result.p_exact ? format_pvalue(*rep.result.p_exact, false) : std::string("-")) +
           "\t" + format_pvalue(rep.result.p_normal, false) + "\n";
    return out;
}

std::string wilcoxon_json_text(const WilcoxonReport& rep, const WilcoxonConfig& cfg) {
    nlohmann::ordered_json doc;
    doc["score"] = statistic_key(cfg.stat);
    doc["null"] = null_model_key(cfg.model);
    doc["filters"] = cfg.filters;
    doc["rows"] = rep.row_ids;
    doc["observed"] = rep.observed;
    doc["expected"] = rep.expected;
    doc["n_eff"] = rep.result.n_eff;
    doc["V"] = rep.result.v;
    if (rep.result.p_exact) doc["p_exact"] = *rep.result.p_exact;
    doc["p_normal"] = rep.result.p_normal;
    doc["p_left"] = rep.result.p_left();
    return doc.dump(2) + "\n";
}

namespace {

std::string multiset_str(const std::vector<int>& ms) {
    if (ms.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(ms[i]);
    }
    return out;
}

std::string mask_str(const Permutohedron& g, const std::vector<VertexId>& mask) {
    std::string out;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (i) out += " ";
        out += g.permutation_of(mask[i]).str();
    }
    return out;
}

}  // namespace

std::string power_table_tsv(const MaskClassTable& table) {
    const auto g = Permutohedron::build(table.n);
    std::string out = "# n=" + std::to_string(table.n) + " m=" + std::to_string(table.m) +
                      " sequences=" + std::to_string(table.sequence_total) + "\n";
    out += "P_m\tP_m_float\tbucket_size\tmask_count\tdistance_multiset\trepresentative\n";
    for (const auto& e : table.entries) {
        out += rational_str(e.pm) + "\t" + format_double(rational_double(e.pm)) + "\t" +
               std::to_string(e.bucket_size) + "\t" + std::to_string(e.mask_count) + "\t" +
               multiset_str(e.distance_multiset) + "\t" + mask_str(g, e.representative) + "\n";
    }
    return out;
}

std::string power_table_json_text(const MaskClassTable& table) {
    const auto g = Permutohedron::build(table.n);
    nlohmann::ordered_json doc;
    doc["n"] = table.n;
    doc["m"] = table.m;
    doc["sequences"] = table.sequence_total;
    auto& entries = doc["classes"] = nlohmann::ordered_json::array();
    for (const auto& e : table.entries) {
        nlohmann::ordered_json je;
        je["P_m"] = rational_str(e.pm);
        je["P_m_float"] = rational_double(e.pm);
        je["bucket_size"] = e.bucket_size;
        je["mask_count"] = e.mask_count;
        je["distance_multiset"] = e.distance_multiset;
        je["representative_ids"] = e.representative;
        je["representative"] = mask_str(g, e.representative);
        entries.push_back(std::move(je));
    }
    return doc.dump(2) + "\n";
}

std::string counterexample_tsv(const MultisetCounterexample& ce) {
    const auto g = Permutohedron::build(4);
    std::string out = "distance_multiset\tP_m\tmask\n";
    out += multiset_str(ce.distance_multiset) + "\t" + rational_str(ce.pm_low) + "\t" +
           mask_str(g, ce.mask_low) + "\n";
    out += multiset_str(ce.distance_multiset) + "\t" + rational_str(ce.pm_high) + "\t" +
           mask_str(g, ce.mask_high) + "\n";
    return out;
}

std::string counterexample_json_text(const MultisetCounterexample& ce) {
    const auto g = Permutohedron::build(4);
    nlohmann::ordered_json doc;
    doc["distance_multiset"] = ce.distance_multiset;
    doc["low"] = {{"P_m", rational_str(ce.pm_low)},
                  {"mask_ids", ce.mask_low},
                  {"mask", mask_str(g, ce.mask_low)}};
    doc["high"] = {{"P_m", rational_str(ce.pm_high)},
                   {"mask_ids", ce.mask_high},
                   {"mask", mask_str(g, ce.mask_high)}};
    return doc.dump(2) + "\n";
}

std::string spectra_tsv(int n, bool allow_large) {
    const auto m = build_shifted(n, allow_large);
    const auto eigs = symmetric_eigenvalues(m);
    const auto groups = group_eigenvalues(eigs);
    const bool nsd = eigs.back() <= 1e-9 * m.inf_norm();
    std::string out = "# n=" + std::to_string(n) +
                      " shift=" + format_double(n * (n - 1) / 4.0) +
                      " negative_semidefinite=" + (nsd ? "1" : "0") + "\n";
    out += "eigenvalue\tmultiplicity\n";
    for (const auto& grp : groups)
        out += format_double(grp.value) + "\t" + std::to_string(grp.multiplicity) + "\n";
    return out;
}

std::string spectra_json_text(int n, bool allow_large) {
    const auto m = build_shifted(n, allow_large);
    const auto eigs = symmetric_eigenvalues(m);
    const auto groups = group_eigenvalues(eigs);
    nlohmann::ordered_json doc;
    doc["n"] = n;
    doc["shift"] = n * (n - 1) / 4.0;
    doc["negative_semidefinite"] = eigs.back() <= 1e-9 * m.inf_norm();
    auto& jg = doc["groups"] = nlohmann::ordered_json::array();
    for (const auto& grp : groups)
        jg.push_back({{"value", grp.value}, {"multiplicity", grp.multiplicity}});
    return doc.dump(2) + "\n";
}

}  // namespace swapdist
