#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "lrp/components.hpp"
#include "lrp/geometry.hpp"
#include "lrp/graph.hpp"
#include "lrp/lattice.hpp"

// Brute-force enumeration oracles. Everything here is exact and guarded;
// nothing is sampled.

namespace lrp {

// Exact counts of hole-free blocks containing the origin, bucketed by the
// size m of the free interior boundary.
struct AnimalCensus {
    int d = 2;
    int m_max = 0;
    std::map<int, std::uint64_t> per_m;
};

// Enumerates candidate interior-boundary sets (star-connected, by canonical
// one-cell growth, so each translation class appears exactly once), rebuilds
// the unique hole-free block each candidate bounds, validates it, and adds
// one count per translate containing the origin. d must be 2; m_max <= 14.
AnimalCensus enumerate_hole_free_animals(int d, int m_max, int threads = 1);

// Census cache: plain-text file keyed by (d, m_max).
void write_census_file(const std::string& path, const AnimalCensus& census);
bool read_census_file(const std::string& path, int d, int m_max, AnimalCensus& out);

// All forward-degree vectors of order b in lexicographic order. b <= 12.
std::vector<ForwardDegreeVector> enumerate_forward_degree_vectors(int b);

// Ballot-problem count of forward-degree vectors of order b.
std::uint64_t ballot_count(int b);

// Ordered pairs (x, y) with x in A, y not in A and l2-distance in (r, r+1].
std::uint64_t count_annulus_cross_pairs(const SiteSet& a, int r);

// Greedy interior/exterior boundary matching over a 1-disconnected block
// family: scan the union of box interior boundaries in index order and pair
// each site with its smallest-index unused neighbor on the union of box
// exterior boundaries. No site is used twice and the matching has at least
// sum |int_box(A_i)| / (2d) pairs.
struct MatchPair {
    Index interior;
    Index exterior;
};
std::vector<MatchPair> greedy_boundary_matching(const std::vector<SiteSet>& blocks, const LatticeBox& box);

// Exhaustive check that a second-largest component of size >= k forces one
// of the two isolation events; returns the first witness in subset order.
// Guarded to n <= 20 sites.
struct CoverVerdict {
    enum class Kind { not_applicable, witness_small_family, witness_large_block, violation };
    Kind kind = Kind::not_applicable;
    std::vector<SiteSet> witness;  // blocks of the witnessing candidate
};
CoverVerdict verify_isolation_cover(const SampledGraph& graph, Index k);

}  // namespace lrp
