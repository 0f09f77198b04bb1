#include "lrp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lrp {

ClassTable::ClassTable(const LatticeBox& box, const LrpParams& params) : box_(box), params_(params) {
    params_.validate();
    if (params_.d != box.dim()) throw std::invalid_argument("ClassTable: params.d != box.dim()");
    const int d = box.dim();
    const Index L = box.side();
    const Index radix = 2 * L - 1;

    std::vector<Coord> v(static_cast<std::size_t>(d), static_cast<Coord>(-(L - 1)));
    while (true) {
        // Canonical half-space: first nonzero coordinate positive.
        int first_nonzero = -1;
        for (int i = 0; i < d; ++i) {
            if (v[static_cast<std::size_t>(i)] != 0) {
                first_nonzero = i;
                break;
            }
        }
        if (first_nonzero >= 0 && v[static_cast<std::size_t>(first_nonzero)] > 0) {
            DisplacementClass cls;
            cls.shift = v;
            cls.pair_count = 1;
            double r2 = 0.0;
            std::uint64_t key = 0;
            for (int i = d - 1; i >= 0; --i) {
                Coord c = v[static_cast<std::size_t>(i)];
                cls.pair_count *= L - std::abs(c);
                r2 += static_cast<double>(c) * c;
                key = key * static_cast<std::uint64_t>(radix) + static_cast<std::uint64_t>(c + (L - 1));
            }
            cls.prob = connection_prob(std::sqrt(r2), params_);
            cls.key = key;
            total_pairs_ += cls.pair_count;
            classes_.push_back(std::move(cls));
        }
        int axis = 0;
        while (axis < d && v[static_cast<std::size_t>(axis)] == L - 1) {
            v[static_cast<std::size_t>(axis)] = static_cast<Coord>(-(L - 1));
            ++axis;
        }
        if (axis == d) break;
        ++v[static_cast<std::size_t>(axis)];
    }
}

std::pair<Index, Index> ClassTable::endpoints(const DisplacementClass& c, Index slot) const {
    const int d = box_.dim();
    const Index L = box_.side();
    Index u = 0, w = 0, scale = 1;
    for (int i = 0; i < d; ++i) {
        Coord sh = c.shift[static_cast<std::size_t>(i)];
        Index extent = L - std::abs(sh);
        Index off = (sh < 0 ? -sh : 0) + slot % extent;
        slot /= extent;
        u += off * scale;
        w += (off + sh) * scale;
        scale *= L;
    }
    return {u, w};
}

std::unordered_map<std::uint64_t, std::size_t> ClassTable::key_index() const {
    std::unordered_map<std::uint64_t, std::size_t> out;
    out.reserve(classes_.size());
    for (std::size_t i = 0; i < classes_.size(); ++i) out.emplace(classes_[i].key, i);
    return out;
}

SampledGraph sample_graph(const ClassTable& table, std::uint64_t seed) {
    std::vector<std::pair<Index, Index>> edges;
    for_each_sampled_edge(table, seed, [&](std::size_t, Index u, Index v) { edges.emplace_back(u, v); });
    return SampledGraph(table.box(), table.params(), seed, std::move(edges));
}

SampledGraph sample_graph(const LatticeBox& box, const LrpParams& params, std::uint64_t seed) {
    return sample_graph(ClassTable(box, params), seed);
}

double expected_edge_count(const LatticeBox& box, const LrpParams& params) {
    ClassTable table(box, params);
    double total = 0.0;
    for (const auto& cls : table.classes()) total += static_cast<double>(cls.pair_count) * cls.prob;
    return total;
}

SampledGraph reference_sample_graph(const LatticeBox& box, const LrpParams& params, std::uint64_t seed) {
    params.validate();
    if (params.d != box.dim()) throw std::invalid_argument("reference_sample_graph: params.d != box.dim()");
    const Index n = box.site_count();
    if (n > 10000) throw std::invalid_argument("reference_sample_graph: box too large (n <= 10^4)");
    const int d = box.dim();

    // Probability by squared distance, cached.
    std::unordered_map<Index, double> prob;
    std::vector<Coord> a(static_cast<std::size_t>(d)), b(static_cast<std::size_t>(d));
    std::vector<std::pair<Index, Index>> edges;
    for (Index i = 0; i < n; ++i) {
        box.coord_of(i, a);
        for (Index j = i + 1; j < n; ++j) {
            box.coord_of(j, b);
            Index r2 = 0;
            for (int k = 0; k < d; ++k) {
                Index diff = b[static_cast<std::size_t>(k)] - a[static_cast<std::size_t>(k)];
                r2 += diff * diff;
            }
            auto it = prob.find(r2);
            if (it == prob.end()) it = prob.emplace(r2, connection_prob(std::sqrt(static_cast<double>(r2)), params)).first;
            // One uniform per unordered pair, a deterministic function of
            // (seed, pair id): this is the coupling hook across p values.
            std::uint64_t u64 = mix_seed(seed, static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(j));
            double u = static_cast<double>(u64 >> 11) * 0x1.0p-53;
            if (u < it->second) edges.emplace_back(i, j);
        }
    }
    return SampledGraph(box, params, seed, std::move(edges));
}

double RenormalizedConfig::active_fraction() const {
    if (active.empty()) return 0.0;
    std::size_t on = 0;
    for (auto f : active) on += f;
    return static_cast<double>(on) / static_cast<double>(active.size());
}

Index RenormalizedConfig::min_occupancy() const {
    Index best = occupancy.empty() ? 0 : occupancy[0];
    for (Index o : occupancy) best = std::min(best, o);
    return best;
}

Index RenormalizedConfig::largest_cluster() const {
    const auto m = static_cast<std::size_t>(coarse_count);
    std::vector<Index> parent(m);
    for (std::size_t i = 0; i < m; ++i) parent[i] = static_cast<Index>(i);
    auto find = [&](Index x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto& e : open_edges) {
        Index a = find(e.first), b = find(e.second);
        if (a != b) parent[static_cast<std::size_t>(b)] = a;
    }
    std::vector<Index> count(m, 0);
    Index best = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (!active[i]) continue;
        Index r = find(static_cast<Index>(i));
        best = std::max(best, ++count[static_cast<std::size_t>(r)]);
    }
    return best;
}

Index RenormalizedConfig::adjacent_active_pairs() const {
    Index pairs = 0;
    const Index k = per_axis;
    std::vector<Index> radixes(static_cast<std::size_t>(dim), k);
    for (Index c = 0; c < coarse_count; ++c) {
        if (!active[static_cast<std::size_t>(c)]) continue;
        Index rest = c, scale = 1;
        for (int i = 0; i < dim; ++i) {
            Index digit = rest % k;
            rest /= k;
            if (digit + 1 < k) {
                Index nb = c + scale;
                if (active[static_cast<std::size_t>(nb)]) ++pairs;
            }
            scale *= k;
        }
    }
    return pairs;
}

RenormalizedConfig renormalize(const SampledGraph& graph) {
    const LatticeBox& box = graph.box();
    const LrpParams& params = graph.params();
    const int d = box.dim();
    const Index L = box.side();
    const double min_side = params.beta / (2.0 * std::sqrt(static_cast<double>(d)));
    if (min_side < 1.0) throw std::invalid_argument("renormalize: requires beta >= 2 sqrt(d)");

    const auto k = static_cast<Index>(std::ceil(static_cast<double>(L) / min_side));

    RenormalizedConfig out;
    out.dim = d;
    out.per_axis = k;
    out.coarse_count = 1;
    for (int i = 0; i < d; ++i) out.coarse_count *= k;

    // Coarse coordinate per axis: floor(offset * k / L), integer-exact cuts
    // of the side into k equal real intervals.
    const Index n = box.site_count();
    std::vector<Index> coarse(static_cast<std::size_t>(n));
    std::vector<Coord> c(static_cast<std::size_t>(d));
    for (Index idx = 0; idx < n; ++idx) {
        box.coord_of(idx, c);
        Index id = 0;
        for (int i = d - 1; i >= 0; --i) {
            Index off = c[static_cast<std::size_t>(i)] - box.lo();
            id = id * k + (off * k) / L;
        }
        coarse[static_cast<std::size_t>(idx)] = id;
    }

    out.occupancy.assign(static_cast<std::size_t>(out.coarse_count), 0);
    for (Index idx = 0; idx < n; ++idx) ++out.occupancy[static_cast<std::size_t>(coarse[static_cast<std::size_t>(idx)])];

    // Internal connectivity per coarse box via union-find restricted to
    // within-box edges.
    std::vector<Index> parent(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    auto find = [&](Index x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto& e : graph.edges()) {
        if (coarse[static_cast<std::size_t>(e.first)] != coarse[static_cast<std::size_t>(e.second)]) continue;
        Index a = find(e.first), b = find(e.second);
        if (a != b) parent[static_cast<std::size_t>(b)] = a;
    }
    std::vector<Index> roots(static_cast<std::size_t>(out.coarse_count), -1);
    std::vector<std::uint8_t> split(static_cast<std::size_t>(out.coarse_count), 0);
    for (Index idx = 0; idx < n; ++idx) {
        Index cb = coarse[static_cast<std::size_t>(idx)];
        Index r = find(idx);
        if (roots[static_cast<std::size_t>(cb)] < 0) {
            roots[static_cast<std::size_t>(cb)] = r;
        } else if (roots[static_cast<std::size_t>(cb)] != r) {
            split[static_cast<std::size_t>(cb)] = 1;
        }
    }
    out.active.assign(static_cast<std::size_t>(out.coarse_count), 0);
    for (Index cb = 0; cb < out.coarse_count; ++cb) {
        out.active[static_cast<std::size_t>(cb)] =
            (out.occupancy[static_cast<std::size_t>(cb)] > 0 && !split[static_cast<std::size_t>(cb)]) ? 1 : 0;
    }

    // Open edges between adjacent active pairs joined by any fine edge.
    auto axis_adjacent = [&](Index a, Index b) {
        Index diff_axes = 0;
        for (int i = 0; i < d; ++i) {
            Index da = a % k, db = b % k;
            a /= k;
            b /= k;
            Index gap = da > db ? da - db : db - da;
            if (gap == 1) ++diff_axes;
            else if (gap != 0) return false;
        }
        return diff_axes == 1;
    };
    std::vector<std::pair<Index, Index>> open;
    for (const auto& e : graph.edges()) {
        Index ca = coarse[static_cast<std::size_t>(e.first)];
        Index cb = coarse[static_cast<std::size_t>(e.second)];
        if (ca == cb) continue;
        if (!out.active[static_cast<std::size_t>(ca)] || !out.active[static_cast<std::size_t>(cb)]) continue;
        if (!axis_adjacent(ca, cb)) continue;
        open.emplace_back(std::min(ca, cb), std::max(ca, cb));
    }
    std::sort(open.begin(), open.end());
    open.erase(std::unique(open.begin(), open.end()), open.end());
    out.open_edges = std::move(open);
    return out;
}

}  // namespace lrp
