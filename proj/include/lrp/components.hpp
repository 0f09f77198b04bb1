#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "lrp/geometry.hpp"
#include "lrp/graph.hpp"

namespace lrp {

// Union-find with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(Index n);
    Index find(Index x);
    bool unite(Index a, Index b);  // false if already joined
    Index component_size(Index x);

private:
    std::vector<Index> parent_;
    std::vector<Index> size_;
};

// Component analytics of one sampled graph. Ties between equal-size
// components break toward the component containing the smallest site index;
// c2 is empty exactly when the largest component spans all sites. c0 is the
// component of the all-zeros origin site.
struct ComponentReport {
    std::vector<Index> sizes;  // descending
    SiteSet c1;
    SiteSet c2;
    SiteSet c0;
    bool origin_in_c1 = false;
    double theta_hat = 0.0;  // |c1| / n
};

ComponentReport connected_components(const SampledGraph& graph);

// Size-only view of the same analytics, computable from streamed edges
// without materializing a graph. Agrees with connected_components on every
// field it carries (same tie-breaks).
struct ComponentSummary {
    Index c1_size = 0;
    Index c2_size = 0;
    Index c0_size = 0;
    bool origin_in_c1 = false;
    double theta_hat = 0.0;
};

class StreamingComponents {
public:
    explicit StreamingComponents(Index n) : n_(n), uf_(n) {}
    void add_edge(Index u, Index v) { uf_.unite(u, v); }
    ComponentSummary finish(Index origin_index);

private:
    Index n_;
    UnionFind uf_;
};

ComponentSummary summarize(const SampledGraph& graph);

// CSV row for one analyzed replica.
extern const char* const kComponentCsvHeader;
std::string component_csv_row(const SampledGraph& graph, const ComponentSummary& summary);

// Contraction of a component's blocks: vertex i per block, an edge {i,j}
// whenever some fine edge joins block i to block j.
struct BlockGraph {
    std::vector<SiteSet> blocks;
    std::set<std::pair<std::size_t, std::size_t>> edges;  // i < j, 0-based

    bool has_edge(std::size_t i, std::size_t j) const {
        if (i == j) return false;
        if (i > j) std::swap(i, j);
        return edges.count({i, j}) != 0;
    }
    bool connected() const;
};

// Requires `component` to be exactly one connected component of the graph.
BlockGraph block_graph(const SiteSet& component, const SampledGraph& graph);

// Forward-degree vector (f_1, ..., f_b): nonnegative entries summing to
// b - 1 with dominated partial sums f_1 + ... + f_j >= j for j < b. Such a
// vector determines a unique rooted labeled tree whose b-th vertex is a leaf.
struct ForwardDegreeVector {
    std::vector<int> f;

    std::size_t order() const { return f.size(); }
    void validate() const;  // throws on invariant violations
};

// True iff every edge of the tree determined by `fdv` (children of vertex j
// carry the consecutive labels after those of vertices < j) is present in bg.
bool has_forward_tree(const BlockGraph& bg, const ForwardDegreeVector& fdv);

// Candidate check for the small-blocks isolation event: the family must be
// pairwise 1-disconnected hole-free blocks with closures of size <= 3n/4
// (throws otherwise); returns true iff the union has at least k sites, the
// block graph over the family is connected in `graph`, and no graph edge
// joins the union's free interior boundary to the rest of the box.
bool check_isolated_small_family(const std::vector<SiteSet>& blocks, Index k, const SampledGraph& graph);

// Candidate check for the large-block isolation event: true iff
// |closure(a)| > 3n/4, |a| <= n/2, and no graph edge joins a to its exterior
// boundary within the box. `a` must be a block.
bool check_isolated_large_block(const SiteSet& a, const SampledGraph& graph);

}  // namespace lrp
