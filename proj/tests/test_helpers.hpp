#pragma once

#include <initializer_list>
#include <vector>

#include "lrp/lattice.hpp"
#include "lrp/rng.hpp"

namespace lrp::testing {

inline SiteSet make_set(const LatticeBox& box, std::initializer_list<std::vector<Coord>> sites) {
    SiteSet s(box);
    for (const auto& site : sites) s.insert(site);
    return s;
}

// Random connected set grown by uniform frontier insertion.
inline SiteSet random_connected_set(const LatticeBox& box, Xoshiro256pp& rng, std::size_t target) {
    SiteSet s(box);
    std::vector<std::vector<Coord>> frontier;
    std::vector<Coord> start(static_cast<std::size_t>(box.dim()));
    box.coord_of(static_cast<Index>(rng.below(static_cast<std::uint64_t>(box.site_count()))), start);
    s.insert(start);
    frontier.push_back(start);
    std::vector<Coord> nb(start.size());
    while (s.size() < target && !frontier.empty()) {
        std::size_t pick = static_cast<std::size_t>(rng.below(frontier.size()));
        std::vector<Coord> base = frontier[pick];
        // Collect unoccupied in-box neighbors of a random member.
        std::vector<std::vector<Coord>> options;
        for (int axis = 0; axis < box.dim(); ++axis) {
            for (int dir : {-1, +1}) {
                nb = base;
                nb[static_cast<std::size_t>(axis)] = static_cast<Coord>(nb[static_cast<std::size_t>(axis)] + dir);
                if (box.contains(nb) && !s.contains(nb)) options.push_back(nb);
            }
        }
        if (options.empty()) {
            frontier[pick] = frontier.back();
            frontier.pop_back();
            continue;
        }
        const auto& chosen = options[static_cast<std::size_t>(rng.below(options.size()))];
        s.insert(chosen);
        frontier.push_back(chosen);
    }
    return s;
}

}  // namespace lrp::testing
