#include "swapdist/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swapdist {

namespace {

// Sum of fn over the positive entries, accumulated in ascending value order:
// any permutation of the input yields the bit-identical result.
template <class Fn>
double sorted_sum(std::span<const double> freqs, Fn fn) {
    std::vector<double> vals;
    vals.reserve(freqs.size());
    for (double f : freqs)
        if (f > 0.0) vals.push_back(f);
    std::sort(vals.begin(), vals.end());
    double acc = 0.0;
    for (double f : vals) acc += fn(f);
    return acc;
}

double total_of(std::span<const double> freqs) {
    for (double f : freqs)
        if (!(f >= 0.0))
            throw std::invalid_argument("frequencies must be nonnegative and finite");
    // accumulate in sorted order too: keeps F, and hence H and S, bit-identical
    // under any permutation of the input
    const double total = sorted_sum(freqs, [](double f) { return f; });
    if (!(total > 0.0)) throw std::invalid_argument("total frequency must be positive");
    return total;
}

}  // namespace

OrderDistribution::OrderDistribution(std::shared_ptr<const Permutohedron> graph,
                                     std::vector<double> freqs,
                                     std::vector<std::string> element_names)
    : graph_(std::move(graph)), freqs_(std::move(freqs)), names_(std::move(element_names)) {
    if (!graph_) throw std::invalid_argument("OrderDistribution: null graph");
    if (freqs_.size() != graph_->vertex_count())
        throw std::invalid_argument("OrderDistribution: frequency vector length != vertex count");
    if (!names_.empty() && names_.size() != static_cast<std::size_t>(graph_->order()))
        throw std::invalid_argument("OrderDistribution: one element name per rank required");
    total_ = total_of(freqs_);
    probs_.resize(freqs_.size());
    for (std::size_t i = 0; i < freqs_.size(); ++i) {
        probs_[i] = freqs_[i] / total_;
        if (freqs_[i] > 0.0) support_ids_.push_back(static_cast<VertexId>(i));
    }
    support_ = static_cast<int>(support_ids_.size());
}

std::string OrderDistribution::order_label(VertexId v) const {
    const Permutation p = graph_->permutation_of(v);
    if (names_.empty()) return p.str();
    std::string label;
    for (int i = 0; i < p.size(); ++i) label += names_[static_cast<std::size_t>(p.at(i) - 1)];
    return label;
}

double entropy_plugin(std::span<const double> freqs) {
    const double total = total_of(freqs);
    const double sum_flogf = sorted_sum(freqs, [](double f) { return f * std::log(f); });
    return std::log(total) - sum_flogf / total;
}

double simpson(std::span<const double> freqs) {
    const double total = total_of(freqs);
    const double sum_sq = sorted_sum(freqs, [](double f) { return f * f; });
    return sum_sq / (total * total);
}

double avg_swap_distance(const Permutohedron& g, std::span<const double> freqs) {
    if (freqs.size() != g.vertex_count())
        throw std::invalid_argument("avg_swap_distance: frequency vector length != vertex count");
    const double total = total_of(freqs);
    double acc = 0.0;
    if (g.has_full_matrix()) {
        for (std::size_t i = 0; i < freqs.size(); ++i) {
            if (freqs[i] <= 0.0) continue;
            double row = 0.0;
            for (std::size_t j = 0; j < freqs.size(); ++j)
                if (freqs[j] > 0.0) row += freqs[j] * g.distance(static_cast<VertexId>(i), static_cast<VertexId>(j));
            acc += freqs[i] * row;
        }
    } else {
        for (std::size_t i = 0; i < freqs.size(); ++i) {
            if (freqs[i] <= 0.0) continue;
            const auto dist = g.distances_from(static_cast<VertexId>(i));
            double row = 0.0;
            for (std::size_t j = 0; j < freqs.size(); ++j)
                if (freqs[j] > 0.0) row += freqs[j] * dist[j];
            acc += freqs[i] * row;
        }
    }
    return acc / (total * total);
}

double entropy_plugin(const OrderDistribution& d) { return entropy_plugin(d.freqs()); }
double simpson(const OrderDistribution& d) { return simpson(d.freqs()); }
double dominance(const OrderDistribution& d) { return 1.0 - simpson(d.freqs()); }
double avg_swap_distance(const OrderDistribution& d) {
    return avg_swap_distance(d.graph(), d.freqs());
}

double conditional_mean(const OrderDistribution& d, VertexId v) {
    const auto dist = d.graph().distances_from(v);
    const auto probs = d.probs();
    double acc = 0.0;
    for (std::size_t j = 0; j < probs.size(); ++j)
        if (probs[j] > 0.0) acc += probs[j] * dist[j];
    return acc;
}

std::vector<double> distance_spectrum(const OrderDistribution& d) {
    const Permutohedron& g = d.graph();
    std::vector<double> spectrum(static_cast<std::size_t>(g.diameter()) + 1, 0.0);
    const auto probs = d.probs();
    for (VertexId i : d.support()) {
        const auto dist = g.distances_from(i);
        for (VertexId j : d.support())
            spectrum[dist[j]] += probs[i] * probs[j];
    }
    return spectrum;
}

double renyi_entropy(const OrderDistribution& d, double alpha) {
    if (alpha == 1.0)
        throw std::invalid_argument("renyi_entropy: alpha = 1 is the plug-in entropy limit");
    if (alpha < 0.0) throw std::invalid_argument("renyi_entropy: alpha must be >= 0");
    const auto probs = d.probs();
    std::vector<double> support;
    for (double p : probs)
        if (p > 0.0) support.push_back(p);
    std::sort(support.begin(), support.end());
    double acc = 0.0;
    for (double p : support) acc += std::pow(p, alpha);
    return std::log(acc) / (1.0 - alpha);
}

std::vector<VertexId> hexagon_ring(const Permutohedron& g) {
    if (g.order() != 3) throw std::invalid_argument("hexagon_ring: defined for n = 3 only");
    std::vector<VertexId> ring;
    ring.reserve(6);
    VertexId prev = 0;
    auto nb0 = g.neighbors(0);
    VertexId cur = std::min(nb0[0], nb0[1]);
    ring.push_back(prev);
    while (cur != 0) {
        ring.push_back(cur);
        const auto nb = g.neighbors(cur);
        const VertexId next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
    }
    return ring;
}

double delta_n3(const OrderDistribution& d) {
    const auto ring = hexagon_ring(d.graph());
    const auto probs = d.probs();
    double q[3];
    for (int k = 0; k < 3; ++k)
        q[k] = probs[ring[static_cast<std::size_t>(k)]] - probs[ring[static_cast<std::size_t>(k) + 3]];
    const double q1 = q[0], q2 = q[1], q3 = q[2];
    return q1 * q1 + q2 * q2 + q3 * q3 + (q1 + q2) * (q1 + q2) + (q2 + q3) * (q2 + q3) +
           (q1 - q3) * (q1 - q3);
}

DiversityReport compute_report(const OrderDistribution& d) {
    DiversityReport r;
    r.total = d.total();
    r.support = d.support_size();
    r.simpson = simpson(d);
    r.dominance = 1.0 - r.simpson;
    r.entropy = entropy_plugin(d);
    r.entropy_max = std::log(static_cast<double>(d.graph().vertex_count()));
    r.mean_distance = avg_swap_distance(d);
    r.mean_distance_max = d.graph().diameter() / 2.0;
    r.spectrum = distance_spectrum(d);
    return r;
}

}  // namespace swapdist
