#pragma once

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lrp/graph.hpp"
#include "lrp/lattice.hpp"
#include "lrp/params.hpp"
#include "lrp/rng.hpp"

namespace lrp {

// One unordered displacement class: the canonical displacement v (first
// nonzero coordinate positive, so each unordered pair belongs to exactly one
// class), the number of base points M(v) = prod_i (L - |v_i|), and the
// connection probability at |v|_2.
struct DisplacementClass {
    std::vector<Coord> shift;
    Index pair_count = 0;
    double prob = 0.0;
    std::uint64_t key = 0;  // stable id, input to the per-class substream seed
};

// Class table for a (box, params) pair; built once and reused across seeds.
class ClassTable {
public:
    ClassTable(const LatticeBox& box, const LrpParams& params);

    const LatticeBox& box() const { return box_; }
    const LrpParams& params() const { return params_; }
    const std::vector<DisplacementClass>& classes() const { return classes_; }

    // Sum of M(v) over classes; equals n(n-1)/2.
    Index total_pairs() const { return total_pairs_; }

    // Decodes base-point slot `slot` of class `c` into the two endpoint site
    // indices.
    std::pair<Index, Index> endpoints(const DisplacementClass& c, Index slot) const;

    std::unordered_map<std::uint64_t, std::size_t> key_index() const;

private:
    LatticeBox box_;
    LrpParams params_;
    std::vector<DisplacementClass> classes_;
    Index total_pairs_ = 0;
};

// Streams the edges of one exact sample. Per class: K ~ Bin(M(v), q(v)) via
// two-sided geometric skipping, then K distinct base slots via Floyd
// selection; the class substream is seeded from (seed, class key). Sink is
// called as sink(class_index, u, v).
template <typename Sink>
void for_each_sampled_edge(const ClassTable& table, std::uint64_t seed, Sink&& sink) {
    std::unordered_set<std::uint64_t> scratch;
    const auto& classes = table.classes();
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        const auto& cls = classes[ci];
        if (cls.prob <= 0.0) continue;
        Xoshiro256pp rng(mix_seed(seed, cls.key));
        auto trials = static_cast<std::uint64_t>(cls.pair_count);
        std::uint64_t hits = binomial_draw(rng, trials, cls.prob);
        if (hits == 0) continue;
        if (hits == trials) {
            for (Index slot = 0; slot < cls.pair_count; ++slot) {
                auto [u, v] = table.endpoints(cls, slot);
                sink(ci, u, v);
            }
            continue;
        }
        for (std::uint64_t slot : floyd_sample(rng, trials, hits, scratch)) {
            auto [u, v] = table.endpoints(cls, static_cast<Index>(slot));
            sink(ci, u, v);
        }
    }
}

// Exact sample of the percolation graph on the box: every unordered pair
// {x,y} is an edge independently with probability connection_prob(|x-y|_2).
SampledGraph sample_graph(const LatticeBox& box, const LrpParams& params, std::uint64_t seed);
SampledGraph sample_graph(const ClassTable& table, std::uint64_t seed);

// Sum over unordered pairs of the connection probability, evaluated per
// displacement class in O(#classes).
double expected_edge_count(const LatticeBox& box, const LrpParams& params);

// Naive per-pair Bernoulli sampler, identical in distribution to
// sample_graph. Pair uniforms are derived from (seed, pair id), so coupled
// runs at increasing p (or beta) share their uniforms. Guarded to n <= 10^4;
// test oracle only.
SampledGraph reference_sample_graph(const LatticeBox& box, const LrpParams& params, std::uint64_t seed);

// Renormalized coarse lattice: the box split into ceil(L / (beta/(2 sqrt d)))^d
// equal sub-boxes; a coarse box is active when its induced fine subgraph is
// connected, and an adjacent active pair is open when some fine edge joins
// the two boxes.
struct RenormalizedConfig {
    int dim = 0;
    Index per_axis = 0;        // coarse boxes per axis
    Index coarse_count = 0;    // m = per_axis^d
    std::vector<std::uint8_t> active;
    std::vector<std::pair<Index, Index>> open_edges;  // sorted coarse-index pairs
    std::vector<Index> occupancy;                     // fine sites per coarse box

    double active_fraction() const;
    Index min_occupancy() const;
    // Largest connected set of active coarse boxes under open edges.
    Index largest_cluster() const;
    // Adjacent coarse pairs with both endpoints active.
    Index adjacent_active_pairs() const;
};

RenormalizedConfig renormalize(const SampledGraph& graph);

}  // namespace lrp
