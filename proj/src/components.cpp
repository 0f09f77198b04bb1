#include "lrp/components.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>

namespace lrp {

UnionFind::UnionFind(Index n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1) {
    for (Index i = 0; i < n; ++i) parent_[static_cast<std::size_t>(i)] = i;
}

Index UnionFind::find(Index x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
        parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
        x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
}

bool UnionFind::unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
    return true;
}

Index UnionFind::component_size(Index x) { return size_[static_cast<std::size_t>(find(x))]; }

namespace {

// Roots of the two leading components under the (size desc, min index asc)
// order, plus all component sizes. Scanning indices in ascending order makes
// "first occurrence" the minimal site index of each root.
struct RootStats {
    Index c1_root = -1, c2_root = -1;
    std::vector<Index> sizes_desc;
};

RootStats leading_roots(UnionFind& uf, Index n) {
    std::unordered_map<Index, Index> min_index;
    std::vector<Index> order;  // roots by first occurrence = by min site index
    min_index.reserve(64);
    for (Index i = 0; i < n; ++i) {
        Index r = uf.find(i);
        if (min_index.emplace(r, i).second) order.push_back(r);
    }
    RootStats out;
    Index best = 0, second = 0;
    for (Index r : order) {
        Index s = uf.component_size(r);
        out.sizes_desc.push_back(s);
        if (s > best) {
            second = best;
            out.c2_root = out.c1_root;
            best = s;
            out.c1_root = r;
        } else if (s > second) {
            second = s;
            out.c2_root = r;
        }
    }
    std::sort(out.sizes_desc.begin(), out.sizes_desc.end(), std::greater<Index>());
    return out;
}

}  // namespace

ComponentSummary StreamingComponents::finish(Index origin_index) {
    RootStats stats = leading_roots(uf_, n_);
    ComponentSummary s;
    s.c1_size = stats.c1_root >= 0 ? uf_.component_size(stats.c1_root) : 0;
    s.c2_size = stats.c2_root >= 0 ? uf_.component_size(stats.c2_root) : 0;
    s.c0_size = uf_.component_size(origin_index);
    s.origin_in_c1 = uf_.find(origin_index) == stats.c1_root;
    s.theta_hat = static_cast<double>(s.c1_size) / static_cast<double>(n_);
    return s;
}

ComponentReport connected_components(const SampledGraph& graph) {
    const Index n = graph.box().site_count();
    UnionFind uf(n);
    for (const auto& e : graph.edges()) uf.unite(e.first, e.second);
    RootStats stats = leading_roots(uf, n);

    const Index origin = graph.box().origin_index();
    const Index origin_root = uf.find(origin);

    ComponentReport report{std::move(stats.sizes_desc), SiteSet(graph.box()), SiteSet(graph.box()),
                           SiteSet(graph.box()), false, 0.0};
    std::vector<Coord> c(static_cast<std::size_t>(graph.box().dim()));
    for (Index i = 0; i < n; ++i) {
        Index r = uf.find(i);
        if (r != stats.c1_root && r != stats.c2_root && r != origin_root) continue;
        graph.box().coord_of(i, c);
        if (r == stats.c1_root) report.c1.insert(c);
        if (r == stats.c2_root) report.c2.insert(c);
        if (r == origin_root) report.c0.insert(c);
    }
    report.origin_in_c1 = origin_root == stats.c1_root;
    report.theta_hat = static_cast<double>(report.c1.size()) / static_cast<double>(n);
    return report;
}

ComponentSummary summarize(const SampledGraph& graph) {
    StreamingComponents sc(graph.box().site_count());
    for (const auto& e : graph.edges()) sc.add_edge(e.first, e.second);
    return sc.finish(graph.box().origin_index());
}

const char* const kComponentCsvHeader = "seed,d,n,alpha,beta,p,size_c1,size_c2,size_c0,origin_in_c1,theta_hat";

std::string component_csv_row(const SampledGraph& graph, const ComponentSummary& s) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%" PRIu64 ",%d,%" PRId64 ",%.17g,%.17g,%.17g,%" PRId64 ",%" PRId64 ",%" PRId64 ",%d,%.17g",
                  graph.seed(), graph.params().d, static_cast<std::int64_t>(graph.box().site_count()),
                  graph.params().alpha, graph.params().beta, graph.params().p,
                  static_cast<std::int64_t>(s.c1_size), static_cast<std::int64_t>(s.c2_size),
                  static_cast<std::int64_t>(s.c0_size), s.origin_in_c1 ? 1 : 0, s.theta_hat);
    return buf;
}

bool BlockGraph::connected() const {
    const std::size_t b = blocks.size();
    if (b <= 1) return b == 1;
    UnionFind uf(static_cast<Index>(b));
    Index joins = 0;
    for (const auto& e : edges) {
        if (uf.unite(static_cast<Index>(e.first), static_cast<Index>(e.second))) ++joins;
    }
    return joins == static_cast<Index>(b) - 1;
}

BlockGraph block_graph(const SiteSet& component, const SampledGraph& graph) {
    if (component.empty()) throw std::invalid_argument("block_graph: empty component");
    const LatticeBox& box = graph.box();

    // Verify the input is exactly one component: BFS over the graph from the
    // component's minimal site must reach the input set and nothing else.
    std::vector<Index> members = component.sorted_indices();
    std::unordered_map<Index, std::size_t> member_pos;
    member_pos.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) member_pos.emplace(members[i], i);

    std::vector<Index> stack{members[0]};
    std::unordered_map<Index, bool> seen{{members[0], true}};
    std::size_t reached = 0;
    while (!stack.empty()) {
        Index cur = stack.back();
        stack.pop_back();
        if (!member_pos.count(cur)) throw std::invalid_argument("block_graph: input is not a full component");
        ++reached;
        for (Index nb : graph.neighbors(cur)) {
            if (!seen[nb]) {
                seen[nb] = true;
                stack.push_back(nb);
            }
        }
    }
    if (reached != members.size()) throw std::invalid_argument("block_graph: input is not a full component");

    BlockGraph bg;
    bg.blocks = block_decompose(component);

    std::unordered_map<Index, std::size_t> block_of;
    block_of.reserve(members.size());
    std::vector<Coord> c(static_cast<std::size_t>(box.dim()));
    for (std::size_t bi = 0; bi < bg.blocks.size(); ++bi) {
        for (Index idx : bg.blocks[bi].sorted_indices()) block_of.emplace(idx, bi);
    }
    for (Index idx : members) {
        std::size_t bi = block_of.at(idx);
        for (Index nb : graph.neighbors(idx)) {
            std::size_t bj = block_of.at(nb);
            if (bi != bj) bg.edges.emplace(std::min(bi, bj), std::max(bi, bj));
        }
    }
    return bg;
}

void ForwardDegreeVector::validate() const {
    const std::size_t b = f.size();
    if (b == 0) throw std::invalid_argument("ForwardDegreeVector: empty");
    long long sum = 0;
    for (std::size_t j = 0; j < b; ++j) {
        if (f[j] < 0) throw std::invalid_argument("ForwardDegreeVector: negative entry");
        sum += f[j];
        if (j + 1 <= b - 1 && sum < static_cast<long long>(j + 1))
            throw std::invalid_argument("ForwardDegreeVector: partial-sum dominance violated");
    }
    if (sum != static_cast<long long>(b) - 1) throw std::invalid_argument("ForwardDegreeVector: entries must sum to b-1");
}

bool has_forward_tree(const BlockGraph& bg, const ForwardDegreeVector& fdv) {
    fdv.validate();
    if (fdv.order() != bg.blocks.size()) throw std::invalid_argument("has_forward_tree: order mismatch");
    std::size_t next_child = 1;
    for (std::size_t j = 0; j < fdv.order(); ++j) {
        for (int cnum = 0; cnum < fdv.f[j]; ++cnum) {
            if (!bg.has_edge(j, next_child)) return false;
            ++next_child;
        }
    }
    return true;
}

namespace {

SiteSet union_of(const std::vector<SiteSet>& blocks) {
    SiteSet all = blocks[0].box() ? SiteSet(*blocks[0].box()) : SiteSet(blocks[0].dim());
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.size(); ++i) all.insert(b.site(i));
    }
    return all;
}

}  // namespace

bool check_isolated_small_family(const std::vector<SiteSet>& blocks, Index k, const SampledGraph& graph) {
    if (blocks.empty()) throw std::invalid_argument("check_isolated_small_family: no blocks");
    if (!pairwise_1_disconnected(blocks)) throw std::invalid_argument("check_isolated_small_family: blocks touch");
    const LatticeBox& box = graph.box();
    const Index n = box.site_count();

    SiteSet interior_union(box);
    for (const auto& b : blocks) {
        HoleReport hr = closure_and_holes(b, box);
        if (hr.closure.size() != b.size()) throw std::invalid_argument("check_isolated_small_family: block has holes");
        if (4 * static_cast<Index>(hr.closure.size()) > 3 * n)
            throw std::invalid_argument("check_isolated_small_family: closure exceeds 3n/4");
        BoundaryReport br = boundaries(b, box);
        for (std::size_t i = 0; i < br.int_free.size(); ++i) interior_union.insert(br.int_free.site(i));
    }

    SiteSet all = union_of(blocks);
    if (static_cast<Index>(all.size()) < k) return false;

    // Isolation: no edge from the union's free interior boundary out of the
    // union.
    std::vector<Coord> c(static_cast<std::size_t>(box.dim()));
    for (Index idx : interior_union.sorted_indices()) {
        for (Index nb : graph.neighbors(idx)) {
            box.coord_of(nb, c);
            if (!all.contains(c)) return false;
        }
    }

    // Block graph over the family must be connected in the graph.
    std::unordered_map<Index, std::size_t> block_of;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        for (Index idx : blocks[bi].sorted_indices()) block_of.emplace(idx, bi);
    }
    UnionFind uf(static_cast<Index>(blocks.size()));
    Index joins = 0;
    for (const auto& [idx, bi] : block_of) {
        for (Index nb : graph.neighbors(idx)) {
            auto it = block_of.find(nb);
            if (it != block_of.end() && it->second != bi) {
                if (uf.unite(static_cast<Index>(bi), static_cast<Index>(it->second))) ++joins;
            }
        }
    }
    return joins == static_cast<Index>(blocks.size()) - 1;
}

bool check_isolated_large_block(const SiteSet& a, const SampledGraph& graph) {
    const LatticeBox& box = graph.box();
    const Index n = box.site_count();
    HoleReport hr = closure_and_holes(a, box);  // validates that a is a block
    if (4 * static_cast<Index>(hr.closure.size()) <= 3 * n) return false;
    if (2 * static_cast<Index>(a.size()) > n) return false;
    BoundaryReport br = boundaries(a, box);
    std::vector<Coord> c(static_cast<std::size_t>(box.dim()));
    for (Index idx : a.sorted_indices()) {
        for (Index nb : graph.neighbors(idx)) {
            box.coord_of(nb, c);
            if (br.ext_box.contains(c)) return false;
        }
    }
    return true;
}

}  // namespace lrp
