#include "lrp/graph.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lrp {

SampledGraph::SampledGraph(LatticeBox box, LrpParams params, std::uint64_t seed,
                           std::vector<std::pair<Index, Index>> edges)
    : box_(box), params_(std::move(params)), seed_(seed), edges_(std::move(edges)) {
    const auto n = static_cast<std::size_t>(box_.site_count());
    for (auto& e : edges_) {
        if (e.first > e.second) std::swap(e.first, e.second);
        if (e.first == e.second) throw std::invalid_argument("SampledGraph: self-loop");
        if (e.first < 0 || e.second >= box_.site_count()) throw std::invalid_argument("SampledGraph: endpoint outside box");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    offsets_.assign(n + 1, 0);
    for (const auto& e : edges_) {
        ++offsets_[static_cast<std::size_t>(e.first) + 1];
        ++offsets_[static_cast<std::size_t>(e.second) + 1];
    }
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
    adj_.resize(offsets_[n]);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
        adj_[cursor[static_cast<std::size_t>(e.first)]++] = e.second;
        adj_[cursor[static_cast<std::size_t>(e.second)]++] = e.first;
    }
}

bool SampledGraph::has_edge(Index u, Index v) const {
    if (u == v) return false;
    auto nb = neighbors(u);
    auto nc = neighbors(v);
    auto probe = nb.size() <= nc.size() ? nb : nc;
    Index target = nb.size() <= nc.size() ? v : u;
    return std::find(probe.begin(), probe.end(), target) != probe.end();
}

void write_graph(std::ostream& os, const SampledGraph& graph) {
    if (graph.params().kernel != KernelKind::polynomial)
        throw std::invalid_argument("write_graph: only polynomial-kernel graphs serialize");
    char header[160];
    std::snprintf(header, sizeof header, "%d %" PRId64 " %" PRIu64 " %.17g %.17g %.17g",
                  graph.params().d, static_cast<std::int64_t>(graph.box().side()), graph.seed(),
                  graph.params().alpha, graph.params().beta, graph.params().p);
    os << header << '\n';
    for (const auto& e : graph.edges()) os << e.first << ' ' << e.second << '\n';
}

SampledGraph read_graph(std::istream& is) {
    int d = 0;
    Index side = 0;
    std::uint64_t seed = 0;
    LrpParams params;
    if (!(is >> d >> side >> seed >> params.alpha >> params.beta >> params.p))
        throw std::runtime_error("graph: bad header");
    params.d = d;
    params.validate();
    LatticeBox box(d, side);
    std::vector<std::pair<Index, Index>> edges;
    Index u = 0, v = 0;
    while (is >> u >> v) edges.emplace_back(u, v);
    return SampledGraph(box, params, seed, std::move(edges));
}

void write_graph_file(const std::string& path, const SampledGraph& graph) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_graph(out, graph);
}

SampledGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_graph(in);
}

}  // namespace lrp
