#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace lrp {

using Index = std::int64_t;
using Coord = std::int32_t;

// Finite box of side L in dimension d. Integer coordinates per axis are
// exactly the integers in [-L/2, L/2), which works for odd and even L and
// always contains the all-zeros origin. Site indices are little-endian
// mixed-radix over per-axis offsets: axis 0 is the least significant digit,
// so index 0 is the minimal corner.
class LatticeBox {
public:
    LatticeBox(int dim, Index side);

    // Builds the box with n = L^d sites; n must be an exact d-th power.
    static LatticeBox from_site_count(int dim, Index site_count);

    int dim() const { return dim_; }
    Index side() const { return side_; }
    Index site_count() const { return n_; }

    // Per-axis inclusive coordinate bounds (the same on every axis).
    Coord lo() const { return lo_; }
    Coord hi() const { return static_cast<Coord>(lo_ + side_ - 1); }

    bool contains(std::span<const Coord> site) const;
    Index index_of(std::span<const Coord> site) const;
    void coord_of(Index index, std::span<Coord> out) const;
    std::vector<Coord> coord_of(Index index) const;

    Index origin_index() const;

    bool operator==(const LatticeBox& other) const {
        return dim_ == other.dim_ && side_ == other.side_;
    }

private:
    int dim_;
    Index side_;
    Index n_;
    Coord lo_;
};

// A finite set of lattice sites with O(1) membership and insertion-ordered
// iteration. Sites are stored as flat coordinates (stride = dim). Membership
// uses a packed 64-bit key (16 bits per axis), which caps the geometry
// toolkit at dim <= 4 and |coordinate| <= 32767; both are enforced.
//
// A SiteSet either lives inside a declared box (inserts outside it are
// rejected) or on the unbounded lattice (used for free exterior boundaries,
// which may leave the box).
class SiteSet {
public:
    explicit SiteSet(int dim);
    explicit SiteSet(const LatticeBox& box);

    int dim() const { return dim_; }
    const std::optional<LatticeBox>& box() const { return box_; }
    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    // Returns false (and leaves the set unchanged) on duplicates.
    bool insert(std::span<const Coord> site);
    bool contains(std::span<const Coord> site) const;

    std::span<const Coord> site(std::size_t i) const {
        return {flat_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }

    // Smallest member under the canonical order: box index when a box is
    // declared, lexicographic coordinates otherwise.
    std::vector<Coord> min_site() const;
    Index min_index() const;  // requires a declared box

    // Members as ascending box indices; requires a declared box.
    std::vector<Index> sorted_indices() const;

    static std::uint64_t pack(std::span<const Coord> site);

    bool operator==(const SiteSet& other) const;
    bool is_subset_of(const SiteSet& other) const;

private:
    int dim_;
    std::optional<LatticeBox> box_;
    std::size_t count_ = 0;
    std::vector<Coord> flat_;
    std::unordered_set<std::uint64_t> keys_;
};

// Plain-text site-set format: header "d L" (L = 0 for an unboxed set), then
// one site per line as space-separated integer coordinates.
void write_site_set(std::ostream& os, const SiteSet& set);
SiteSet read_site_set(std::istream& is);
SiteSet read_site_set_file(const std::string& path);
void write_site_set_file(const std::string& path, const SiteSet& set);

}  // namespace lrp
