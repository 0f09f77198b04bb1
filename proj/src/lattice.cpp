#include "lrp/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lrp {

LatticeBox::LatticeBox(int dim, Index side) : dim_(dim), side_(side) {
    if (dim < 1) throw std::invalid_argument("LatticeBox: dim must be >= 1");
    if (side < 1) throw std::invalid_argument("LatticeBox: side must be >= 1");
    Index n = 1;
    for (int i = 0; i < dim; ++i) {
        if (n > (Index{1} << 62) / side) throw std::invalid_argument("LatticeBox: L^d overflows");
        n *= side;
    }
    n_ = n;
    lo_ = static_cast<Coord>(-(side / 2));
}

LatticeBox LatticeBox::from_site_count(int dim, Index site_count) {
    if (dim < 1 || site_count < 1) throw std::invalid_argument("LatticeBox: bad site count");
    auto side = static_cast<Index>(std::llround(std::pow(static_cast<double>(site_count), 1.0 / dim)));
    for (Index s = std::max<Index>(1, side - 2); s <= side + 2; ++s) {
        Index n = 1;
        bool ok = true;
        for (int i = 0; i < dim && ok; ++i) {
            if (n > site_count / s + 1) ok = false;
            n *= s;
        }
        if (ok && n == site_count) return LatticeBox(dim, s);
    }
    throw std::invalid_argument("LatticeBox: site count is not an exact d-th power");
}

bool LatticeBox::contains(std::span<const Coord> site) const {
    if (static_cast<int>(site.size()) != dim_) return false;
    for (Coord c : site) {
        if (c < lo() || c > hi()) return false;
    }
    return true;
}

Index LatticeBox::index_of(std::span<const Coord> site) const {
    if (!contains(site)) throw std::out_of_range("LatticeBox::index_of: site outside box");
    Index idx = 0;
    for (int i = dim_ - 1; i >= 0; --i) idx = idx * side_ + (site[static_cast<std::size_t>(i)] - lo_);
    return idx;
}

void LatticeBox::coord_of(Index index, std::span<Coord> out) const {
    if (index < 0 || index >= n_) throw std::out_of_range("LatticeBox::coord_of: index out of range");
    if (static_cast<int>(out.size()) != dim_) throw std::invalid_argument("LatticeBox::coord_of: bad span size");
    for (int i = 0; i < dim_; ++i) {
        out[static_cast<std::size_t>(i)] = static_cast<Coord>(lo_ + index % side_);
        index /= side_;
    }
}

std::vector<Coord> LatticeBox::coord_of(Index index) const {
    std::vector<Coord> out(static_cast<std::size_t>(dim_));
    coord_of(index, out);
    return out;
}

Index LatticeBox::origin_index() const {
    std::vector<Coord> zeros(static_cast<std::size_t>(dim_), 0);
    return index_of(zeros);
}

namespace {
constexpr Coord kPackLimit = 32767;

void check_packable(std::span<const Coord> site) {
    if (site.size() > 4) throw std::invalid_argument("SiteSet: dim > 4 not supported");
    for (Coord c : site) {
        if (c < -kPackLimit || c > kPackLimit) throw std::invalid_argument("SiteSet: coordinate exceeds packing range");
    }
}
}  // namespace

std::uint64_t SiteSet::pack(std::span<const Coord> site) {
    check_packable(site);
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < site.size(); ++i) {
        key |= static_cast<std::uint64_t>(static_cast<std::uint16_t>(site[i] + 32768)) << (16 * i);
    }
    return key;
}

SiteSet::SiteSet(int dim) : dim_(dim) {
    if (dim < 1 || dim > 4) throw std::invalid_argument("SiteSet: dim must be in [1,4]");
}

SiteSet::SiteSet(const LatticeBox& box) : dim_(box.dim()), box_(box) {
    if (dim_ > 4) throw std::invalid_argument("SiteSet: dim must be in [1,4]");
}

bool SiteSet::insert(std::span<const Coord> site) {
    if (static_cast<int>(site.size()) != dim_) throw std::invalid_argument("SiteSet::insert: bad dimension");
    if (box_ && !box_->contains(site)) throw std::out_of_range("SiteSet::insert: site outside declared box");
    if (!keys_.insert(pack(site)).second) return false;
    flat_.insert(flat_.end(), site.begin(), site.end());
    ++count_;
    return true;
}

bool SiteSet::contains(std::span<const Coord> site) const {
    if (static_cast<int>(site.size()) != dim_) return false;
    if (site.size() > 4) return false;
    for (Coord c : site) {
        if (c < -kPackLimit || c > kPackLimit) return false;
    }
    return keys_.count(pack(site)) != 0;
}

std::vector<Coord> SiteSet::min_site() const {
    if (count_ == 0) throw std::logic_error("SiteSet::min_site: empty set");
    std::size_t best = 0;
    if (box_) {
        Index best_idx = box_->index_of(site(0));
        for (std::size_t i = 1; i < count_; ++i) {
            Index idx = box_->index_of(site(i));
            if (idx < best_idx) {
                best_idx = idx;
                best = i;
            }
        }
    } else {
        for (std::size_t i = 1; i < count_; ++i) {
            auto a = site(i), b = site(best);
            if (std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end())) best = i;
        }
    }
    auto s = site(best);
    return {s.begin(), s.end()};
}

Index SiteSet::min_index() const {
    if (!box_) throw std::logic_error("SiteSet::min_index: no declared box");
    return box_->index_of(min_site());
}

std::vector<Index> SiteSet::sorted_indices() const {
    if (!box_) throw std::logic_error("SiteSet::sorted_indices: no declared box");
    std::vector<Index> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < count_; ++i) out.push_back(box_->index_of(site(i)));
    std::sort(out.begin(), out.end());
    return out;
}

bool SiteSet::operator==(const SiteSet& other) const {
    return dim_ == other.dim_ && keys_ == other.keys_;
}

bool SiteSet::is_subset_of(const SiteSet& other) const {
    if (dim_ != other.dim_) return false;
    for (std::uint64_t k : keys_) {
        if (other.keys_.count(k) == 0) return false;
    }
    return true;
}

void write_site_set(std::ostream& os, const SiteSet& set) {
    os << set.dim() << ' ' << (set.box() ? set.box()->side() : 0) << '\n';
    for (std::size_t i = 0; i < set.size(); ++i) {
        auto s = set.site(i);
        for (std::size_t j = 0; j < s.size(); ++j) os << (j ? " " : "") << s[j];
        os << '\n';
    }
}

SiteSet read_site_set(std::istream& is) {
    int dim = 0;
    Index side = 0;
    if (!(is >> dim >> side)) throw std::runtime_error("site set: bad header");
    SiteSet set = side > 0 ? SiteSet(LatticeBox(dim, side)) : SiteSet(dim);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<Coord> site(static_cast<std::size_t>(dim));
        for (auto& c : site) {
            if (!(ls >> c)) throw std::runtime_error("site set: bad site line: " + line);
        }
        set.insert(site);
    }
    return set;
}

SiteSet read_site_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_site_set(in);
}

void write_site_set_file(const std::string& path, const SiteSet& set) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_site_set(out, set);
}

}  // namespace lrp
