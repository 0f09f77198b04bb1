#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lrp/lattice.hpp"

// Deterministic lattice-set geometry on Z^d: unique block decomposition,
// closures and holes, the four boundary sets, isoperimetric ratio checks,
// hole typing, and axis projections with fiber detection.
//
// Conventions (frozen project-wide): l1 adjacency defines "1-connected"
// (blocks), l-infinity adjacency defines "*-connected", l2 is reserved for
// connection probabilities.

namespace lrp {

// Maximal 1-connected pieces of S, canonically ordered by ascending minimal
// site index (lexicographic minimal coordinate when S has no declared box).
// Blocks of the result are pairwise at l1-distance > 1.
std::vector<SiteSet> block_decompose(const SiteSet& s);

bool is_block(const SiteSet& s);  // nonempty and 1-connected

// True if the blocks are pairwise at l1-distance > 1.
bool pairwise_1_disconnected(const std::vector<SiteSet>& blocks);

struct HoleReport {
    SiteSet closure;                        // A together with all surrounded sites
    std::vector<SiteSet> holes;             // 1-connected components of closure \ A
    std::map<int, std::size_t> type_counts; // hole type i -> number of holes of that type
};

// Hole type of a hole of the given size: the i >= 1 with size in
// (2^(i-1), 2^i]. Size 1 is folded into type 1 so that every hole carries a
// type (the half-open dyadic intervals with i >= 1 start at 2).
int hole_type(std::size_t hole_size);

// Closure/holes of a block A inside `box`, computed by flood fill on the
// complement from a margin-1 frame around the bounding box of A; a site is
// surrounded exactly when the flood cannot reach it. Requires A to be a
// nonempty block; holes are canonically ordered by minimal site index.
HoleReport closure_and_holes(const SiteSet& a, const LatticeBox& box);

struct BoundaryReport {
    SiteSet int_box;   // sites of A with an l1-neighbor in box \ A
    SiteSet ext_box;   // sites of box \ A at l1-distance 1 from A
    SiteSet int_free;  // sites of A with an l1-neighbor in Z^d \ A
    SiteSet ext_free;  // sites of Z^d \ A at l1-distance 1 from A (may leave the box)
};

// All four boundary sets of A with respect to the box and to Z^d.
// boundaries of the empty set are all empty.
BoundaryReport boundaries(const SiteSet& a, const LatticeBox& box);

// Free interior boundary of the box itself (sites with a coordinate on the
// box rim).
SiteSet box_rim(const LatticeBox& box);

struct IsoperimetryReport {
    std::size_t set_size = 0;
    std::size_t int_box_size = 0, ext_box_size = 0;
    std::size_t int_free_size = 0, ext_free_size = 0;
    bool star_int_ok = false;  // |int_free| >= |A|^((d-1)/d), exact integer test
    bool star_ext_ok = false;  // |ext_free| >= |A|^((d-1)/d)
    double ratio_int = 0.0;    // |int_box| / |int_free|
    double ratio_ext = 0.0;    // |ext_box| / |ext_free|
    bool precondition_ok = false;  // |A| <= 3n/4 or A disjoint from the box rim
};

IsoperimetryReport isoperimetry_report(const SiteSet& a, const LatticeBox& box);

struct HoleTypeReport {
    std::map<int, std::size_t> type_counts;
    std::map<int, double> thresholds;  // type i -> h_n(i) = 2^(-i-3) i^(-2) n
    std::vector<int> principal_types;  // types with count >= h_n(i), exact test
    std::optional<Index> range_cells;  // R_2 = floor(beta/sqrt(d)) or 1, when beta given
    std::optional<int> min_large_type; // i_star = 1 + ceil(d/(d-1) log2 R_2), d >= 2
};

HoleTypeReport hole_typing(const HoleReport& report, Index site_count, int dim,
                           std::optional<double> beta = std::nullopt);

struct ProjectionReport {
    std::vector<std::size_t> projection_sizes;  // |S_i| per axis
    bool loomis_whitney_ok = false;             // |A|^(d-1) <= prod |S_i|, exact test
    int star_axis = 0;                          // largest projection, smallest axis on ties
    SiteSet fibers;  // projections along star_axis hit by no site of int_box(A)
};

ProjectionReport projections_and_fibers(const SiteSet& a, const LatticeBox& box);

// Components of S under l-infinity adjacency (diagonals allowed).
std::vector<SiteSet> star_components(const SiteSet& s);

}  // namespace lrp
