#pragma once

#include "swapdist/permutohedron.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace swapdist {

// Nonnegative frequencies over the vertices of a permutohedron, plus optional
// element names (one per rank, e.g. {"S","O","V"}) used to label orders.
class OrderDistribution {
public:
    OrderDistribution(std::shared_ptr<const Permutohedron> graph,
                      std::vector<double> freqs,
                      std::vector<std::string> element_names = {});

    const Permutohedron& graph() const { return *graph_; }
    std::shared_ptr<const Permutohedron> graph_ptr() const { return graph_; }

    std::span<const double> freqs() const { return freqs_; }
    std::span<const double> probs() const { return probs_; }
    const std::vector<std::string>& element_names() const { return names_; }

    double total() const { return total_; }          // F
    int support_size() const { return support_; }    // m
    std::span<const VertexId> support() const { return support_ids_; }

    // Label of a vertex using the element names, e.g. "SVO".
    std::string order_label(VertexId v) const;

private:
    std::shared_ptr<const Permutohedron> graph_;
    std::vector<double> freqs_;
    std::vector<double> probs_;
    std::vector<std::string> names_;
    std::vector<VertexId> support_ids_;
    double total_ = 0.0;
    int support_ = 0;
};

// Low-level overloads working on raw frequency vectors; the
// OrderDistribution wrappers below call these. Sums over values are
// accumulated in sorted order, which makes every frequency-permutation
// of the input give the bit-identical result.
double entropy_plugin(std::span<const double> freqs);
double simpson(std::span<const double> freqs);
double avg_swap_distance(const Permutohedron& g, std::span<const double> freqs);

// Plug-in (maximum-likelihood) entropy in nats: ln F - (1/F) sum f_i ln f_i.
double entropy_plugin(const OrderDistribution& d);

// Simpson concentration sum p_i^2 and its complement.
double simpson(const OrderDistribution& d);
double dominance(const OrderDistribution& d);

// Frequency-weighted mean swap distance <d> = sum_ij p_i p_j d_ij.
double avg_swap_distance(const OrderDistribution& d);

// Mean distance from a fixed vertex: <d|v> = sum_j d_vj p_j.
double conditional_mean(const OrderDistribution& d, VertexId v);

// P(k) = probability two independent draws lie at distance k, k = 0..d_max.
// P(0) is the Simpson sum and sum_k k P(k) = <d>.
std::vector<double> distance_spectrum(const OrderDistribution& d);

// Renyi entropy of order alpha (alpha != 1); alpha = 0 gives ln m and
// alpha = 2 gives -ln Simpson.
double renyi_entropy(const OrderDistribution& d, double alpha);

// n = 3 only. The hexagon collapses <d> to (3 - delta)/2 where delta is a
// positive semidefinite quadratic form in the three reversal-pair
// probability differences q_k (opposite vertices of the 6-cycle):
//   delta = q1^2 + q2^2 + q3^2 + (q1+q2)^2 + (q2+q3)^2 + (q1-q3)^2.
double delta_n3(const OrderDistribution& d);

// The 6-cycle vertex order of the n=3 permutohedron, starting at rank 0 and
// stepping to the lower-ranked neighbor first; opposite positions are
// reversal pairs. This fixes the labeling delta_n3 uses.
std::vector<VertexId> hexagon_ring(const Permutohedron& g);

struct DiversityReport {
    double total = 0.0;            // F
    int support = 0;               // m
    double simpson = 0.0;          // S
    double dominance = 0.0;        // S bar
    double entropy = 0.0;          // H
    double entropy_max = 0.0;      // ln N
    double mean_distance = 0.0;    // <d>
    double mean_distance_max = 0.0;  // d_max / 2
    std::vector<double> spectrum;
};

DiversityReport compute_report(const OrderDistribution& d);

}  // namespace swapdist
