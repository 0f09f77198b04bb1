#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lrp/lattice.hpp"
#include "lrp/params.hpp"

namespace lrp {

// Immutable sampled graph over a LatticeBox. Edges are unordered site-index
// pairs stored as (min, max), sorted; adjacency is CSR. Regenerating with
// the same (box, params, seed) reproduces the identical edge list.
class SampledGraph {
public:
    SampledGraph(LatticeBox box, LrpParams params, std::uint64_t seed,
                 std::vector<std::pair<Index, Index>> edges);

    const LatticeBox& box() const { return box_; }
    const LrpParams& params() const { return params_; }
    std::uint64_t seed() const { return seed_; }

    const std::vector<std::pair<Index, Index>>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    std::span<const Index> neighbors(Index site) const {
        return {adj_.data() + offsets_[static_cast<std::size_t>(site)],
                adj_.data() + offsets_[static_cast<std::size_t>(site) + 1]};
    }

    bool has_edge(Index u, Index v) const;

private:
    LatticeBox box_;
    LrpParams params_;
    std::uint64_t seed_;
    std::vector<std::pair<Index, Index>> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<Index> adj_;
};

// Plain-text edge list: header "d L seed alpha beta p", then one "i j"
// site-index pair per line. Polynomial-kernel graphs only.
void write_graph(std::ostream& os, const SampledGraph& graph);
SampledGraph read_graph(std::istream& is);
void write_graph_file(const std::string& path, const SampledGraph& graph);
SampledGraph read_graph_file(const std::string& path);

}  // namespace lrp
