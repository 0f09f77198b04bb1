#include "lrp/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace lrp {

namespace {

using CoordVec = std::vector<Coord>;

// Dense scratch region spanning an axis-aligned coordinate window.
struct Region {
    CoordVec lo, hi;
    std::vector<std::size_t> stride;
    std::size_t cells = 0;

    Region(const CoordVec& lo_in, const CoordVec& hi_in) : lo(lo_in), hi(hi_in) {
        stride.resize(lo.size());
        cells = 1;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            stride[i] = cells;
            cells *= static_cast<std::size_t>(hi[i] - lo[i] + 1);
        }
    }

    bool contains(std::span<const Coord> c) const {
        for (std::size_t i = 0; i < lo.size(); ++i) {
            if (c[i] < lo[i] || c[i] > hi[i]) return false;
        }
        return true;
    }

    std::size_t cell(std::span<const Coord> c) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < lo.size(); ++i) idx += static_cast<std::size_t>(c[i] - lo[i]) * stride[i];
        return idx;
    }

    CoordVec coord(std::size_t idx) const {
        CoordVec c(lo.size());
        for (std::size_t i = 0; i < lo.size(); ++i) {
            std::size_t extent = static_cast<std::size_t>(hi[i] - lo[i] + 1);
            c[i] = static_cast<Coord>(lo[i] + static_cast<Coord>(idx % extent));
            idx /= extent;
        }
        return c;
    }

    // True if the cell touches the window rim on some axis.
    bool on_frame(std::span<const Coord> c) const {
        for (std::size_t i = 0; i < lo.size(); ++i) {
            if (c[i] == lo[i] || c[i] == hi[i]) return true;
        }
        return false;
    }
};

CoordVec bounding_lo(const SiteSet& s) {
    CoordVec lo(s.site(0).begin(), s.site(0).end());
    for (std::size_t i = 1; i < s.size(); ++i) {
        auto c = s.site(i);
        for (std::size_t k = 0; k < lo.size(); ++k) lo[k] = std::min(lo[k], c[k]);
    }
    return lo;
}

CoordVec bounding_hi(const SiteSet& s) {
    CoordVec hi(s.site(0).begin(), s.site(0).end());
    for (std::size_t i = 1; i < s.size(); ++i) {
        auto c = s.site(i);
        for (std::size_t k = 0; k < hi.size(); ++k) hi[k] = std::max(hi[k], c[k]);
    }
    return hi;
}

// Canonical sort key for blocks/holes: box index when available, otherwise
// the lexicographic minimal coordinate.
struct CanonicalLess {
    bool operator()(const SiteSet& a, const SiteSet& b) const {
        if (a.box()) return a.min_index() < b.min_index();
        auto ma = a.min_site(), mb = b.min_site();
        return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
    }
};

SiteSet make_like(const SiteSet& proto) {
    return proto.box() ? SiteSet(*proto.box()) : SiteSet(proto.dim());
}

}  // namespace

std::vector<SiteSet> block_decompose(const SiteSet& s) {
    std::vector<SiteSet> blocks;
    if (s.empty()) return blocks;
    const int d = s.dim();
    std::unordered_set<std::uint64_t> seen;
    CoordVec nbr(static_cast<std::size_t>(d));
    std::vector<CoordVec> stack;
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto start = s.site(i);
        if (!seen.insert(SiteSet::pack(start)).second) continue;
        SiteSet block = make_like(s);
        stack.assign(1, CoordVec(start.begin(), start.end()));
        while (!stack.empty()) {
            CoordVec cur = std::move(stack.back());
            stack.pop_back();
            block.insert(cur);
            for (int axis = 0; axis < d; ++axis) {
                for (int dir : {-1, +1}) {
                    nbr = cur;
                    nbr[static_cast<std::size_t>(axis)] += dir;
                    if (!s.contains(nbr)) continue;
                    if (seen.insert(SiteSet::pack(nbr)).second) stack.push_back(nbr);
                }
            }
        }
        blocks.push_back(std::move(block));
    }
    std::sort(blocks.begin(), blocks.end(), [](const SiteSet& a, const SiteSet& b) { return CanonicalLess{}(a, b); });
    return blocks;
}

bool is_block(const SiteSet& s) {
    if (s.empty()) return false;
    return block_decompose(s).size() == 1;
}

bool pairwise_1_disconnected(const std::vector<SiteSet>& blocks) {
    if (blocks.empty()) return true;
    const int d = blocks[0].dim();
    // Distance > 1 holds iff no site of one block coincides with or l1-touches
    // a site of another.
    std::unordered_set<std::uint64_t> all;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (!all.insert(SiteSet::pack(b.site(i))).second) return false;
        }
    }
    CoordVec nbr(static_cast<std::size_t>(d));
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const auto& b = blocks[bi];
        for (std::size_t i = 0; i < b.size(); ++i) {
            auto cur = b.site(i);
            for (int axis = 0; axis < d; ++axis) {
                for (int dir : {-1, +1}) {
                    nbr.assign(cur.begin(), cur.end());
                    nbr[static_cast<std::size_t>(axis)] += dir;
                    if (b.contains(nbr)) continue;
                    if (all.count(SiteSet::pack(nbr))) return false;  // touches another block
                }
            }
        }
    }
    return true;
}

int hole_type(std::size_t hole_size) {
    if (hole_size == 0) throw std::invalid_argument("hole_type: empty hole");
    int t = static_cast<int>(std::bit_width(hole_size - 1));
    return t < 1 ? 1 : t;
}

HoleReport closure_and_holes(const SiteSet& a, const LatticeBox& box) {
    if (!is_block(a)) throw std::invalid_argument("closure_and_holes: input is not a block");
    const int d = a.dim();

    CoordVec lo = bounding_lo(a), hi = bounding_hi(a);
    for (auto& c : lo) --c;
    for (auto& c : hi) ++c;
    Region region(lo, hi);

    constexpr std::uint8_t kFree = 0, kSet = 1, kOutside = 2;
    std::vector<std::uint8_t> status(region.cells, kFree);
    for (std::size_t i = 0; i < a.size(); ++i) status[region.cell(a.site(i))] = kSet;

    // Flood the complement from the frame; unreached complement cells are
    // surrounded by A.
    std::vector<std::size_t> stack;
    for (std::size_t idx = 0; idx < region.cells; ++idx) {
        if (status[idx] == kFree && region.on_frame(region.coord(idx))) {
            status[idx] = kOutside;
            stack.push_back(idx);
        }
    }
    CoordVec nbr(static_cast<std::size_t>(d));
    while (!stack.empty()) {
        std::size_t idx = stack.back();
        stack.pop_back();
        CoordVec cur = region.coord(idx);
        for (int axis = 0; axis < d; ++axis) {
            for (int dir : {-1, +1}) {
                nbr = cur;
                nbr[static_cast<std::size_t>(axis)] += dir;
                if (!region.contains(nbr)) continue;
                std::size_t nidx = region.cell(nbr);
                if (status[nidx] == kFree) {
                    status[nidx] = kOutside;
                    stack.push_back(nidx);
                }
            }
        }
    }

    HoleReport report{SiteSet(box), {}, {}};
    for (std::size_t i = 0; i < a.size(); ++i) report.closure.insert(a.site(i));

    SiteSet surrounded(box);
    for (std::size_t idx = 0; idx < region.cells; ++idx) {
        if (status[idx] == kFree) {
            CoordVec c = region.coord(idx);
            surrounded.insert(c);
            report.closure.insert(c);
        }
    }
    report.holes = block_decompose(surrounded);
    for (const auto& hole : report.holes) ++report.type_counts[hole_type(hole.size())];
    return report;
}

BoundaryReport boundaries(const SiteSet& a, const LatticeBox& box) {
    BoundaryReport report{SiteSet(box), SiteSet(box), SiteSet(box), SiteSet(a.dim())};
    const int d = a.dim();
    CoordVec nbr(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto cur = a.site(i);
        if (!box.contains(cur)) throw std::invalid_argument("boundaries: set leaves the box");
        bool int_free = false, int_box = false;
        for (int axis = 0; axis < d; ++axis) {
            for (int dir : {-1, +1}) {
                nbr.assign(cur.begin(), cur.end());
                nbr[static_cast<std::size_t>(axis)] += dir;
                if (a.contains(nbr)) continue;
                int_free = true;
                report.ext_free.insert(nbr);
                if (box.contains(nbr)) {
                    int_box = true;
                    report.ext_box.insert(nbr);
                }
            }
        }
        if (int_free) report.int_free.insert(cur);
        if (int_box) report.int_box.insert(cur);
    }
    return report;
}

SiteSet box_rim(const LatticeBox& box) {
    SiteSet rim(box);
    const int d = box.dim();
    CoordVec c(static_cast<std::size_t>(d));
    for (Index idx = 0; idx < box.site_count(); ++idx) {
        box.coord_of(idx, c);
        for (Coord x : c) {
            if (x == box.lo() || x == box.hi()) {
                rim.insert(c);
                break;
            }
        }
    }
    return rim;
}

namespace {

// Exact test of m >= a^((d-1)/d), i.e. m^d >= a^(d-1), in integers.
bool power_at_least(std::size_t m, std::size_t a, int d) {
    __int128 lhs = 1, rhs = 1;
    for (int i = 0; i < d; ++i) lhs *= static_cast<__int128>(m);
    for (int i = 0; i < d - 1; ++i) rhs *= static_cast<__int128>(a);
    return lhs >= rhs;
}

}  // namespace

IsoperimetryReport isoperimetry_report(const SiteSet& a, const LatticeBox& box) {
    if (a.empty()) throw std::invalid_argument("isoperimetry_report: empty set");
    BoundaryReport b = boundaries(a, box);
    IsoperimetryReport r;
    r.set_size = a.size();
    r.int_box_size = b.int_box.size();
    r.ext_box_size = b.ext_box.size();
    r.int_free_size = b.int_free.size();
    r.ext_free_size = b.ext_free.size();
    r.star_int_ok = power_at_least(r.int_free_size, r.set_size, box.dim());
    r.star_ext_ok = power_at_least(r.ext_free_size, r.set_size, box.dim());
    r.ratio_int = r.int_free_size ? static_cast<double>(r.int_box_size) / static_cast<double>(r.int_free_size) : 0.0;
    r.ratio_ext = r.ext_free_size ? static_cast<double>(r.ext_box_size) / static_cast<double>(r.ext_free_size) : 0.0;

    bool touches_rim = false;
    for (std::size_t i = 0; i < a.size() && !touches_rim; ++i) {
        for (Coord x : a.site(i)) {
            if (x == box.lo() || x == box.hi()) {
                touches_rim = true;
                break;
            }
        }
    }
    r.precondition_ok = (4 * static_cast<Index>(a.size()) <= 3 * box.site_count()) || !touches_rim;
    return r;
}

HoleTypeReport hole_typing(const HoleReport& report, Index site_count, int dim,
                           std::optional<double> beta) {
    HoleTypeReport out;
    out.type_counts = report.type_counts;
    for (const auto& [type, count] : out.type_counts) {
        out.thresholds[type] =
            std::ldexp(static_cast<double>(site_count), -type - 3) / (static_cast<double>(type) * type);
        // count >= 2^(-i-3) i^(-2) n  <=>  count * 2^(i+3) * i^2 >= n, exactly.
        __int128 lhs = static_cast<__int128>(count);
        for (int k = 0; k < type + 3; ++k) lhs *= 2;
        lhs *= static_cast<__int128>(type) * type;
        if (lhs >= static_cast<__int128>(site_count)) out.principal_types.push_back(type);
    }
    if (beta) {
        double raw = std::floor(*beta / std::sqrt(static_cast<double>(dim)));
        Index r2 = std::max<Index>(1, static_cast<Index>(raw));
        out.range_cells = r2;
        if (dim >= 2) {
            double t = static_cast<double>(dim) / (dim - 1) * std::log2(static_cast<double>(r2));
            out.min_large_type = 1 + static_cast<int>(std::ceil(t - 1e-9));
        }
    }
    return out;
}

ProjectionReport projections_and_fibers(const SiteSet& a, const LatticeBox& box) {
    const int d = a.dim();
    ProjectionReport r{std::vector<std::size_t>(static_cast<std::size_t>(d), 0), false, 0, SiteSet(box)};

    std::vector<std::unordered_set<std::uint64_t>> proj(static_cast<std::size_t>(d));
    CoordVec tmp(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto cur = a.site(i);
        if (!box.contains(cur)) throw std::invalid_argument("projections_and_fibers: set leaves the box");
        for (int axis = 0; axis < d; ++axis) {
            tmp.assign(cur.begin(), cur.end());
            tmp[static_cast<std::size_t>(axis)] = 0;
            proj[static_cast<std::size_t>(axis)].insert(SiteSet::pack(tmp));
        }
    }
    for (int axis = 0; axis < d; ++axis) r.projection_sizes[static_cast<std::size_t>(axis)] = proj[static_cast<std::size_t>(axis)].size();

    __int128 lhs = 1, rhs = 1;
    for (int i = 0; i < d - 1; ++i) lhs *= static_cast<__int128>(a.size());
    for (int axis = 0; axis < d; ++axis) rhs *= static_cast<__int128>(r.projection_sizes[static_cast<std::size_t>(axis)]);
    r.loomis_whitney_ok = lhs <= rhs;

    r.star_axis = 0;
    for (int axis = 1; axis < d; ++axis) {
        if (r.projection_sizes[static_cast<std::size_t>(axis)] > r.projection_sizes[static_cast<std::size_t>(r.star_axis)]) r.star_axis = axis;
    }

    if (!a.empty()) {
        BoundaryReport b = boundaries(a, box);
        std::unordered_set<std::uint64_t> blocked;
        for (std::size_t i = 0; i < b.int_box.size(); ++i) {
            tmp.assign(b.int_box.site(i).begin(), b.int_box.site(i).end());
            tmp[static_cast<std::size_t>(r.star_axis)] = 0;
            blocked.insert(SiteSet::pack(tmp));
        }
        // Re-scan A for the star-axis projections so fibers come out in a
        // deterministic insertion order.
        std::unordered_set<std::uint64_t> emitted;
        for (std::size_t i = 0; i < a.size(); ++i) {
            tmp.assign(a.site(i).begin(), a.site(i).end());
            tmp[static_cast<std::size_t>(r.star_axis)] = 0;
            std::uint64_t key = SiteSet::pack(tmp);
            if (blocked.count(key) || !emitted.insert(key).second) continue;
            r.fibers.insert(tmp);
        }
    }
    return r;
}

std::vector<SiteSet> star_components(const SiteSet& s) {
    std::vector<SiteSet> comps;
    if (s.empty()) return comps;
    const int d = s.dim();
    std::vector<CoordVec> moves;
    CoordVec delta(static_cast<std::size_t>(d), -1);
    while (true) {
        bool all_zero = std::all_of(delta.begin(), delta.end(), [](Coord c) { return c == 0; });
        if (!all_zero) moves.push_back(delta);
        int axis = 0;
        while (axis < d && delta[static_cast<std::size_t>(axis)] == 1) {
            delta[static_cast<std::size_t>(axis)] = -1;
            ++axis;
        }
        if (axis == d) break;
        ++delta[static_cast<std::size_t>(axis)];
    }

    std::unordered_set<std::uint64_t> seen;
    CoordVec nbr(static_cast<std::size_t>(d));
    std::vector<CoordVec> stack;
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto start = s.site(i);
        if (!seen.insert(SiteSet::pack(start)).second) continue;
        SiteSet comp = make_like(s);
        stack.assign(1, CoordVec(start.begin(), start.end()));
        while (!stack.empty()) {
            CoordVec cur = std::move(stack.back());
            stack.pop_back();
            comp.insert(cur);
            for (const auto& mv : moves) {
                for (std::size_t k = 0; k < nbr.size(); ++k) nbr[k] = static_cast<Coord>(cur[k] + mv[k]);
                if (!s.contains(nbr)) continue;
                if (seen.insert(SiteSet::pack(nbr)).second) stack.push_back(nbr);
            }
        }
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end(), [](const SiteSet& a, const SiteSet& b) { return CanonicalLess{}(a, b); });
    return comps;
}

}  // namespace lrp
