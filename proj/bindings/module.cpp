#include "swapdist/analysis.hpp"
#include "swapdist/datasets.hpp"
#include "swapdist/hypothesis.hpp"
#include "swapdist/mahonian.hpp"
#include "swapdist/measures.hpp"
#include "swapdist/nullmodels.hpp"
#include "swapdist/powerbound.hpp"
#include "swapdist/rational.hpp"
#include "swapdist/spectral.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

namespace py = pybind11;
using namespace swapdist;

namespace {

std::shared_ptr<const Permutohedron> build_graph(int n, const std::string& storage) {
    auto mode = Permutohedron::DistanceStorage::automatic;
    if (storage == "full") mode = Permutohedron::DistanceStorage::full;
    else if (storage == "on_demand") mode = Permutohedron::DistanceStorage::on_demand;
    else if (storage != "auto")
        throw std::invalid_argument("storage must be auto, full or on_demand");
    return std::make_shared<const Permutohedron>(Permutohedron::build(n, mode));
}

OrderDistribution make_distribution(std::shared_ptr<const Permutohedron> g,
                                    std::vector<double> freqs,
                                    std::vector<std::string> element_names) {
    return OrderDistribution(std::move(g), std::move(freqs), std::move(element_names));
}

NullModel model_from_key(const std::string& key) {
    if (key == "dr") return NullModel::die_rolling;
    if (key == "rw") return NullModel::random_walk;
    if (key == "pu") return NullModel::polya_urn;
    if (key == "rp") return NullModel::random_permutation;
    throw std::invalid_argument("unknown null model '" + key + "' (use dr, rw, pu, rp)");
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "entropy and swap-distance diversity over the permutohedron";

    py::class_<Permutohedron, std::shared_ptr<Permutohedron>>(mod, "Permutohedron")
        .def_property_readonly("n", &Permutohedron::order)
        .def_property_readonly("vertex_count", &Permutohedron::vertex_count)
        .def_property_readonly("edge_count", &Permutohedron::edge_count)
        .def_property_readonly("diameter", &Permutohedron::diameter)
        .def("distance", &Permutohedron::distance)
        .def("distances_from",
             [](const Permutohedron& g, VertexId v) {
                 const auto row = g.distances_from(v);
                 return std::vector<int>(row.begin(), row.end());
             })
        .def("neighbors",
             [](const Permutohedron& g, VertexId v) {
                 const auto nb = g.neighbors(v);
                 return std::vector<VertexId>(nb.begin(), nb.end());
             })
        .def("permutation_of",
             [](const Permutohedron& g, VertexId v) { return g.permutation_of(v).elements(); })
        .def("vertex_of",
             [](const Permutohedron& g, const std::vector<int>& seq) {
                 return g.vertex_of(Permutation(seq));
             })
        .def("reversal", &Permutohedron::reversal)
        .def("mean_distances", [](const Permutohedron& g) {
            const auto [d_op, d_up] = g.mean_distances();
            return std::make_pair(rational_double(d_op), rational_double(d_up));
        });

    py::class_<OrderDistribution>(mod, "OrderDistribution")
        .def(py::init(&make_distribution), py::arg("graph"), py::arg("freqs"),
             py::arg("element_names") = std::vector<std::string>{})
        .def_property_readonly("total", &OrderDistribution::total)
        .def_property_readonly("support_size", &OrderDistribution::support_size)
        .def_property_readonly("freqs",
                               [](const OrderDistribution& d) {
                                   return std::vector<double>(d.freqs().begin(), d.freqs().end());
                               })
        .def_property_readonly("probs",
                               [](const OrderDistribution& d) {
                                   return std::vector<double>(d.probs().begin(), d.probs().end());
                               })
        .def("order_label", &OrderDistribution::order_label);

    mod.def("build", &build_graph, py::arg("n"), py::arg("storage") = "auto");
    mod.def("swap_distance", [](const std::vector<int>& a, const std::vector<int>& b) {
        return swap_distance(Permutation(a), Permutation(b));
    });
    mod.def("inversion_count", [](const std::vector<int>& seq) {
        return Permutation(seq).inversions();
    });
    mod.def("rank_of", [](const std::vector<int>& seq) { return Permutation(seq).rank(); });
    mod.def("permutation_of_rank", [](int n, std::uint64_t rank) {
        return Permutation::from_rank(n, rank).elements();
    });
    mod.def("mahonian", [](int n) { return mahonian(n).counts; });
    mod.def("hamiltonian_enumeration", [](int n) {
        std::vector<std::vector<int>> out;
        for (const auto& p : hamiltonian_enumeration(n)) out.push_back(p.elements());
        return out;
    });
    mod.def("automorphism_count",
            [](const Permutohedron& g) { return automorphism_count(g); });
    mod.def("export_dot",
            [](const Permutohedron& g, const std::vector<double>& probs,
               const std::vector<std::string>& labels) { return export_dot(g, probs, labels); },
            py::arg("graph"), py::arg("probs") = std::vector<double>{},
            py::arg("labels") = std::vector<std::string>{});

    mod.def("entropy_plugin",
            [](const OrderDistribution& d) { return entropy_plugin(d); });
    mod.def("simpson", [](const OrderDistribution& d) { return simpson(d); });
    mod.def("dominance", [](const OrderDistribution& d) { return dominance(d); });
    mod.def("avg_swap_distance",
            [](const OrderDistribution& d) { return avg_swap_distance(d); });
    mod.def("conditional_mean", &conditional_mean);
    mod.def("distance_spectrum", &distance_spectrum);
    mod.def("delta_n3", &delta_n3);
    mod.def("renyi_entropy", &renyi_entropy);

    mod.def("die_rolling_sample",
            [](std::uint64_t F, const Permutohedron& g, std::uint64_t seed) {
                return die_rolling_sample(F, g, seed).freqs;
            });
    mod.def("polya_urn_sample",
            [](std::uint64_t F, const Permutohedron& g, std::uint64_t seed, bool draw_counts) {
                return polya_urn_sample(F, g, seed,
                                        draw_counts ? PolyaCounting::draw_counts
                                                    : PolyaCounting::ball_counts)
                    .freqs;
            },
            py::arg("F"), py::arg("graph"), py::arg("seed"), py::arg("draw_counts") = false);
    mod.def("random_permutation_sample",
            [](const OrderDistribution& d, std::uint64_t seed) {
                return random_permutation_sample(d, seed).freqs;
            });
    mod.def("random_walk_sample",
            [](const Permutohedron& g, VertexId start, std::uint64_t steps, std::uint64_t seed) {
                return random_walk_sample(g, start, steps, seed).freqs;
            });
    mod.def("expected_d_die_rolling", &expected_d_die_rolling);
    mod.def("expected_d_random_permutation", &expected_d_random_permutation);
    mod.def("expected_H_die_rolling", &expected_H_die_rolling, py::arg("F"), py::arg("N"),
            py::arg("mc_threshold") = 2'000'000);
    mod.def("null_expectation",
            [](const OrderDistribution& d, const std::string& model, std::uint64_t trials,
               std::uint64_t seed, int threads) {
                const auto run = run_null_model(d, model_from_key(model), trials, seed, threads);
                py::dict out;
                out["mean_H"] = run.mean_H;
                out["se_H"] = run.se_H;
                out["mean_d"] = run.mean_d;
                out["se_d"] = run.se_d;
                out["count_H_le"] = run.count_H_le;
                out["count_d_le"] = run.count_d_le;
                out["trials"] = run.trials;
                return out;
            },
            py::arg("dist"), py::arg("model"), py::arg("trials"), py::arg("seed"),
            py::arg("threads") = 0);

    mod.def("left_pvalue_exact_rp", [](const OrderDistribution& d) {
        const auto ex = left_pvalue_exact_rp(d);
        py::dict out;
        out["count_le"] = ex.count_le;
        out["count_eq"] = ex.count_eq;
        out["total"] = ex.total;
        out["p_left"] = rational_double(ex.p_left());
        out["p_equal"] = rational_double(ex.p_equal());
        return out;
    });
    mod.def("holm_correct",
            [](const std::vector<double>& p) { return holm_correct(p); });
    mod.def("wilcoxon_left", [](const std::vector<double>& x, const std::vector<double>& y) {
        const auto r = wilcoxon_left(x, y);
        py::dict out;
        out["V"] = r.v;
        out["n_eff"] = r.n_eff;
        out["p_exact"] = r.p_exact ? py::cast(*r.p_exact) : py::none();
        out["p_normal"] = r.p_normal;
        out["p_left"] = r.p_left();
        return out;
    });

    mod.def("pm_table", [](int n, int m) {
        const auto table = compute_pm_table(n, m);
        py::list entries;
        for (const auto& e : table.entries) {
            py::dict je;
            je["P_m"] = rational_str(e.pm);
            je["P_m_float"] = rational_double(e.pm);
            je["bucket_size"] = e.bucket_size;
            je["mask_count"] = e.mask_count;
            je["distance_multiset"] = e.distance_multiset;
            je["representative"] = e.representative;
            entries.append(std::move(je));
        }
        py::dict out;
        out["n"] = table.n;
        out["m"] = table.m;
        out["sequences"] = table.sequence_total;
        out["classes"] = entries;
        return out;
    });
    mod.def("pm_of_mask", [](const Permutohedron& g, std::vector<VertexId> mask) {
        return rational_str(pm_of_mask(g, std::move(mask)));
    });
    mod.def("pa", [](const Permutohedron& g) { return rational_str(compute_pa(g)); });
    mod.def("p_equal_exact",
            [](const OrderDistribution& d) { return rational_str(compute_p_equal_exact(d)); });
    mod.def("multiset_counterexample", []() {
        const auto ce = find_multiset_counterexample();
        py::dict out;
        out["distance_multiset"] = ce.distance_multiset;
        out["mask_low"] = ce.mask_low;
        out["mask_high"] = ce.mask_high;
        out["P_m_low"] = rational_str(ce.pm_low);
        out["P_m_high"] = rational_str(ce.pm_high);
        return out;
    });

    mod.def("shifted_eigenvalues",
            [](int n, bool allow_large) {
                return symmetric_eigenvalues(build_shifted(n, allow_large));
            },
            py::arg("n"), py::arg("allow_large") = false);

    mod.def("analyze_file",
            [](const std::string& path, std::uint64_t trials, std::uint64_t seed, int threads,
               const std::string& format) {
                AnalyzeConfig cfg;
                cfg.trials = trials;
                cfg.seed = seed;
                cfg.threads = threads;
                const auto rows = load_dataset(path);
                const auto result = analyze(rows, cfg);
                return format == "tsv" ? analyze_tsv(result, cfg)
                                       : analyze_json_text(result, cfg);
            },
            py::arg("path"), py::arg("trials") = 10000, py::arg("seed") = kDefaultSeed,
            py::arg("threads") = 0, py::arg("format") = "json");
}
