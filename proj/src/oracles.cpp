#include "lrp/oracles.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lrp {

namespace {

// ---------------------------------------------------------------------------
// Hole-free animal census (d = 2).
//
// A hole-free block is uniquely reconstructible from its free interior
// boundary, which is star-connected. The enumerator therefore grows
// star-connected candidate sets S cell by cell (canonical growth: the
// minimal cell in row-major order is pinned at the origin and every
// candidate is produced exactly once), and for each S rebuilds
// A = S + enclosed cells, keeping it when
//   - every cell of S has a 4-neighbor outside A,
//   - A is 4-connected.
// The census weight of a valid class is |A|: the number of translates of A
// containing the origin.
//
// Boards are row bitmasks (uint32), 32-column stride; everything fits a
// 16-row window for m_max <= 14.
// ---------------------------------------------------------------------------

constexpr int kMaxM = 14;
constexpr int kRowStride = 32;
constexpr int kRows = 16;

struct CensusBoard {
    int m_max = 0;
    int col_off = 0;  // board column = lattice col + col_off

    // Candidate set S; row r of the lattice lives at index r + 1.
    std::array<std::uint32_t, kRows> s{};
    std::array<std::uint8_t, kRows * kRowStride> reached{};
    int min_col = 0, max_col = 0, max_row = 0;

    std::array<std::uint64_t, kMaxM + 1> counts{};

    int cell_id(int row, int col) const { return (row + 1) * kRowStride + (col + col_off); }

    bool allowed(int row, int col) const {
        if (row < 0 || row >= m_max) return false;
        if (col <= -m_max || col >= m_max) return false;
        return row > 0 || col >= 0;
    }

    void occupy(int row, int col) { s[static_cast<std::size_t>(row + 1)] |= 1u << (col + col_off); }
    void vacate(int row, int col) { s[static_cast<std::size_t>(row + 1)] &= ~(1u << (col + col_off)); }

    // Validates the current S and, if it bounds a hole-free block, returns
    // |A|; returns 0 otherwise.
    std::uint64_t weigh() const {
        const int lo = min_col - 1 + col_off;
        const int hi = max_col + 1 + col_off;
        const std::uint32_t colmask = ((hi - lo + 1) < 32 ? ((1u << (hi - lo + 1)) - 1) : ~0u) << lo;
        const int top = max_row + 2;  // region rows are array indices 0..top

        // A cell of S with all four lattice neighbors in S can never reach
        // the outside.
        for (int r = 1; r <= top - 1; ++r) {
            std::uint32_t row = s[static_cast<std::size_t>(r)];
            if (row & (row << 1) & (row >> 1) & s[static_cast<std::size_t>(r - 1)] & s[static_cast<std::size_t>(r + 1)]) return 0;
        }

        // Flood the complement from the region frame.
        std::array<std::uint32_t, kRows> out{};
        const std::uint32_t side = (1u << lo) | (1u << hi);
        out[0] = colmask;
        out[static_cast<std::size_t>(top)] = colmask;
        for (int r = 1; r < top; ++r) out[static_cast<std::size_t>(r)] = side;
        bool changed = true;
        while (changed) {
            changed = false;
            for (int r = 1; r < top; ++r) {
                std::uint32_t cur = out[static_cast<std::size_t>(r)];
                std::uint32_t grow = (out[static_cast<std::size_t>(r - 1)] | out[static_cast<std::size_t>(r + 1)] | (cur << 1) | (cur >> 1) | cur) &
                                     colmask & ~s[static_cast<std::size_t>(r)];
                if (grow & ~cur) {
                    out[static_cast<std::size_t>(r)] = cur | grow;
                    changed = true;
                }
            }
            for (int r = top - 1; r >= 1; --r) {
                std::uint32_t cur = out[static_cast<std::size_t>(r)];
                std::uint32_t grow = (out[static_cast<std::size_t>(r - 1)] | out[static_cast<std::size_t>(r + 1)] | (cur << 1) | (cur >> 1) | cur) &
                                     colmask & ~s[static_cast<std::size_t>(r)];
                if (grow & ~cur) {
                    out[static_cast<std::size_t>(r)] = cur | grow;
                    changed = true;
                }
            }
        }

        // Every boundary cell needs an escape neighbor.
        for (int r = 1; r < top; ++r) {
            std::uint32_t cur = out[static_cast<std::size_t>(r)];
            std::uint32_t reach = out[static_cast<std::size_t>(r - 1)] | out[static_cast<std::size_t>(r + 1)] | (cur << 1) | (cur >> 1);
            if (s[static_cast<std::size_t>(r)] & ~reach) return 0;
        }

        // A = region minus the outside; check 4-connectivity.
        std::array<std::uint32_t, kRows> a{};
        std::uint64_t total = 0;
        int first = -1;
        for (int r = 1; r < top; ++r) {
            a[static_cast<std::size_t>(r)] = colmask & ~out[static_cast<std::size_t>(r)];
            total += std::popcount(a[static_cast<std::size_t>(r)]);
            if (first < 0 && a[static_cast<std::size_t>(r)]) first = r;
        }
        std::array<std::uint32_t, kRows> conn{};
        conn[static_cast<std::size_t>(first)] = a[static_cast<std::size_t>(first)] & (~a[static_cast<std::size_t>(first)] + 1);
        changed = true;
        while (changed) {
            changed = false;
            for (int r = 1; r < top; ++r) {
                std::uint32_t cur = conn[static_cast<std::size_t>(r)];
                std::uint32_t grow = (conn[static_cast<std::size_t>(r - 1)] | conn[static_cast<std::size_t>(r + 1)] | (cur << 1) | (cur >> 1) | cur) &
                                     a[static_cast<std::size_t>(r)];
                if (grow & ~cur) {
                    conn[static_cast<std::size_t>(r)] = cur | grow;
                    changed = true;
                }
            }
            for (int r = top - 1; r >= 1; --r) {
                std::uint32_t cur = conn[static_cast<std::size_t>(r)];
                std::uint32_t grow = (conn[static_cast<std::size_t>(r - 1)] | conn[static_cast<std::size_t>(r + 1)] | (cur << 1) | (cur >> 1) | cur) &
                                     a[static_cast<std::size_t>(r)];
                if (grow & ~cur) {
                    conn[static_cast<std::size_t>(r)] = cur | grow;
                    changed = true;
                }
            }
        }
        std::uint64_t reached_count = 0;
        for (int r = 1; r < top; ++r) reached_count += std::popcount(conn[static_cast<std::size_t>(r)]);
        return reached_count == total ? total : 0;
    }
};

constexpr std::array<std::pair<int, int>, 8> kStarSteps{{{0, 1}, {1, -1}, {1, 0}, {1, 1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}}};

struct CensusJob {
    CensusBoard board;
    std::vector<std::uint16_t> untried;
    int depth = 0;
};

class CensusEnumerator {
public:
    CensusEnumerator(int m_max, int split_depth) : split_depth_(split_depth) {
        board_.m_max = m_max;
        board_.col_off = m_max;
    }

    CensusBoard& board() { return board_; }
    std::vector<CensusJob>& jobs() { return jobs_; }

    void run_from_root() {
        board_.occupy(0, 0);
        board_.reached[static_cast<std::size_t>(board_.cell_id(0, 0))] = 1;
        board_.min_col = board_.max_col = board_.max_row = 0;
        board_.counts[1] += board_.weigh();
        if (board_.m_max == 1) return;
        std::array<std::uint16_t, 8> first{};
        int count = 0;
        for (auto [dr, dc] : kStarSteps) {
            if (!board_.allowed(dr, dc)) continue;
            int id = board_.cell_id(dr, dc);
            board_.reached[static_cast<std::size_t>(id)] = 1;
            first[static_cast<std::size_t>(count++)] = static_cast<std::uint16_t>(id);
        }
        recurse(1, first.data(), count);
    }

    void run_job(const CensusJob& job) {
        board_.s = job.board.s;
        board_.reached = job.board.reached;
        board_.min_col = job.board.min_col;
        board_.max_col = job.board.max_col;
        board_.max_row = job.board.max_row;
        recurse(job.depth, job.untried.data(), static_cast<int>(job.untried.size()), /*collect=*/false);
    }

private:
    void recurse(int depth, const std::uint16_t* untried, int count, bool collect = true) {
        if (collect && split_depth_ > 0 && depth == split_depth_) {
            CensusJob job;
            job.board = board_;
            job.untried.assign(untried, untried + count);
            job.depth = depth;
            jobs_.push_back(std::move(job));
            return;
        }
        std::array<std::uint16_t, 160> next;
        std::array<std::uint16_t, 8> added;
        for (int i = 0; i < count; ++i) {
            const int id = untried[i];
            const int row = id / kRowStride - 1;
            const int col = id % kRowStride - board_.col_off;

            const int saved_min = board_.min_col, saved_max = board_.max_col, saved_row = board_.max_row;
            board_.occupy(row, col);
            board_.min_col = std::min(board_.min_col, col);
            board_.max_col = std::max(board_.max_col, col);
            board_.max_row = std::max(board_.max_row, row);

            board_.counts[static_cast<std::size_t>(depth + 1)] += board_.weigh();

            if (depth + 1 < board_.m_max) {
                int ncount = count - i - 1;
                if (ncount > 0) std::memcpy(next.data(), untried + i + 1, static_cast<std::size_t>(ncount) * sizeof(std::uint16_t));
                int added_count = 0;
                for (auto [dr, dc] : kStarSteps) {
                    int nr = row + dr, nc = col + dc;
                    if (!board_.allowed(nr, nc)) continue;
                    int nid = board_.cell_id(nr, nc);
                    if (board_.reached[static_cast<std::size_t>(nid)]) continue;
                    board_.reached[static_cast<std::size_t>(nid)] = 1;
                    added[static_cast<std::size_t>(added_count++)] = static_cast<std::uint16_t>(nid);
                    next[static_cast<std::size_t>(ncount++)] = static_cast<std::uint16_t>(nid);
                }
                recurse(depth + 1, next.data(), ncount, collect);
                for (int k = 0; k < added_count; ++k) board_.reached[added[static_cast<std::size_t>(k)]] = 0;
            }

            board_.vacate(row, col);
            board_.min_col = saved_min;
            board_.max_col = saved_max;
            board_.max_row = saved_row;
        }
    }

    CensusBoard board_;
    int split_depth_;
    std::vector<CensusJob> jobs_;
};

}  // namespace

AnimalCensus enumerate_hole_free_animals(int d, int m_max, int threads) {
    if (d != 2) throw std::invalid_argument("enumerate_hole_free_animals: only d = 2 is supported");
    if (m_max < 1 || m_max > kMaxM) throw std::invalid_argument("enumerate_hole_free_animals: m_max must be in [1,14]");
    if (threads < 1) threads = 1;

    const int split_depth = (threads > 1 && m_max > 5) ? 4 : 0;
    CensusEnumerator root(m_max, split_depth);
    root.run_from_root();

    AnimalCensus census;
    census.d = d;
    census.m_max = m_max;
    std::array<std::uint64_t, kMaxM + 1> totals = root.board().counts;

    auto& jobs = root.jobs();
    if (!jobs.empty()) {
        std::atomic<std::size_t> cursor{0};
        std::vector<std::array<std::uint64_t, kMaxM + 1>> partial(static_cast<std::size_t>(threads));
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                CensusEnumerator worker(m_max, 0);
                partial[static_cast<std::size_t>(t)].fill(0);
                while (true) {
                    std::size_t j = cursor.fetch_add(1);
                    if (j >= jobs.size()) break;
                    worker.board().counts.fill(0);
                    worker.run_job(jobs[j]);
                    for (int m = 0; m <= m_max; ++m) partial[static_cast<std::size_t>(t)][static_cast<std::size_t>(m)] += worker.board().counts[static_cast<std::size_t>(m)];
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& part : partial) {
            for (int m = 0; m <= m_max; ++m) totals[static_cast<std::size_t>(m)] += part[static_cast<std::size_t>(m)];
        }
    }

    for (int m = 1; m <= m_max; ++m) census.per_m[m] = totals[static_cast<std::size_t>(m)];
    return census;
}

void write_census_file(const std::string& path, const AnimalCensus& census) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "census d=" << census.d << " m_max=" << census.m_max << '\n';
    for (const auto& [m, count] : census.per_m) out << m << ' ' << count << '\n';
}

bool read_census_file(const std::string& path, int d, int m_max, AnimalCensus& out) {
    std::ifstream in(path);
    if (!in) return false;
    std::string tag;
    int fd = 0, fm = 0;
    in >> tag;
    if (tag != "census") return false;
    in >> tag;
    {
        std::istringstream ss(tag);
        std::string key;
        std::getline(ss, key, '=');
        if (key != "d" || !(ss >> fd)) return false;
    }
    in >> tag;
    {
        std::istringstream ss(tag);
        std::string key;
        std::getline(ss, key, '=');
        if (key != "m_max" || !(ss >> fm)) return false;
    }
    if (fd != d || fm != m_max) return false;
    out = AnimalCensus{};
    out.d = fd;
    out.m_max = fm;
    int m = 0;
    std::uint64_t count = 0;
    while (in >> m >> count) out.per_m[m] = count;
    return !out.per_m.empty();
}

namespace {

void enumerate_fdv_rec(int b, int pos, int used, std::vector<int>& cur, std::vector<ForwardDegreeVector>& out) {
    if (pos == b) {
        out.push_back(ForwardDegreeVector{cur});
        return;
    }
    for (int f = 0; used + f <= b - 1; ++f) {
        // Partial-sum dominance: after the first pos+1 entries the running
        // sum must reach pos+1 (binding for every position before the last).
        if (pos < b - 1 && used + f < pos + 1) continue;
        cur[static_cast<std::size_t>(pos)] = f;
        enumerate_fdv_rec(b, pos + 1, used + f, cur, out);
    }
    cur[static_cast<std::size_t>(pos)] = 0;
}

}  // namespace

std::vector<ForwardDegreeVector> enumerate_forward_degree_vectors(int b) {
    if (b < 1 || b > 12) throw std::invalid_argument("enumerate_forward_degree_vectors: b must be in [1,12]");
    std::vector<ForwardDegreeVector> out;
    std::vector<int> cur(static_cast<std::size_t>(b), 0);
    enumerate_fdv_rec(b, 0, 0, cur, out);
    return out;
}

std::uint64_t ballot_count(int b) {
    if (b < 1) throw std::invalid_argument("ballot_count: b must be >= 1");
    // Catalan number C_{b-1} = binom(2(b-1), b-1) / b.
    const int k = b - 1;
    __uint128_t num = 1, den = 1;
    for (int i = 1; i <= k; ++i) {
        num *= static_cast<unsigned>(k + i);
        den *= static_cast<unsigned>(i);
    }
    return static_cast<std::uint64_t>(num / den / static_cast<unsigned>(b));
}

std::uint64_t count_annulus_cross_pairs(const SiteSet& a, int r) {
    if (r < 0) throw std::invalid_argument("count_annulus_cross_pairs: r must be >= 0");
    const int d = a.dim();
    const long long lo2 = static_cast<long long>(r) * r;
    const long long hi2 = static_cast<long long>(r + 1) * (r + 1);
    std::uint64_t count = 0;
    std::vector<Coord> y(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto x = a.site(i);
        // Walk the l-infinity ball of radius r+1 around x.
        std::vector<Coord> delta(static_cast<std::size_t>(d), static_cast<Coord>(-(r + 1)));
        while (true) {
            long long dist2 = 0;
            for (int k = 0; k < d; ++k) dist2 += static_cast<long long>(delta[static_cast<std::size_t>(k)]) * delta[static_cast<std::size_t>(k)];
            if (dist2 > lo2 && dist2 <= hi2) {
                for (int k = 0; k < d; ++k) y[static_cast<std::size_t>(k)] = static_cast<Coord>(x[static_cast<std::size_t>(k)] + delta[static_cast<std::size_t>(k)]);
                if (!a.contains(y)) ++count;
            }
            int axis = 0;
            while (axis < d && delta[static_cast<std::size_t>(axis)] == r + 1) {
                delta[static_cast<std::size_t>(axis)] = static_cast<Coord>(-(r + 1));
                ++axis;
            }
            if (axis == d) break;
            ++delta[static_cast<std::size_t>(axis)];
        }
    }
    return count;
}

std::vector<MatchPair> greedy_boundary_matching(const std::vector<SiteSet>& blocks, const LatticeBox& box) {
    if (blocks.empty()) return {};
    if (!pairwise_1_disconnected(blocks)) throw std::invalid_argument("greedy_boundary_matching: blocks touch");

    std::vector<Index> interior;
    std::unordered_set<std::uint64_t> exterior_keys;
    for (const auto& b : blocks) {
        BoundaryReport br = boundaries(b, box);
        for (Index idx : br.int_box.sorted_indices()) interior.push_back(idx);
        for (std::size_t i = 0; i < br.ext_box.size(); ++i) exterior_keys.insert(SiteSet::pack(br.ext_box.site(i)));
    }
    std::sort(interior.begin(), interior.end());

    const int d = box.dim();
    std::unordered_set<Index> used;
    std::vector<MatchPair> out;
    std::vector<Coord> c(static_cast<std::size_t>(d)), nb(static_cast<std::size_t>(d));
    for (Index x : interior) {
        box.coord_of(x, c);
        Index best = -1;
        for (int axis = 0; axis < d; ++axis) {
            for (int dir : {-1, +1}) {
                nb = c;
                nb[static_cast<std::size_t>(axis)] = static_cast<Coord>(nb[static_cast<std::size_t>(axis)] + dir);
                if (!box.contains(nb)) continue;
                if (!exterior_keys.count(SiteSet::pack(nb))) continue;
                Index idx = box.index_of(nb);
                if (used.count(idx)) continue;
                if (best < 0 || idx < best) best = idx;
            }
        }
        if (best >= 0) {
            used.insert(best);
            out.push_back(MatchPair{x, best});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustive isolation-event cover (bitmask scan over subsets; n <= 20).
// ---------------------------------------------------------------------------

namespace {

struct MaskScan {
    const LatticeBox& box;
    Index n;
    std::vector<std::uint32_t> nbr;       // in-box l1 neighbors
    std::vector<std::uint32_t> adj;       // graph adjacency
    std::vector<std::uint8_t> interior_cell;  // all 2d lattice neighbors lie in the box
    std::uint32_t rim = 0;
    std::uint32_t all = 0;

    explicit MaskScan(const SampledGraph& graph)
        : box(graph.box()), n(box.site_count()), nbr(static_cast<std::size_t>(n), 0),
          adj(static_cast<std::size_t>(n), 0), interior_cell(static_cast<std::size_t>(n), 0) {
        const int d = box.dim();
        all = n == 32 ? ~0u : ((1u << n) - 1);
        std::vector<Coord> c(static_cast<std::size_t>(d)), nb(static_cast<std::size_t>(d));
        for (Index i = 0; i < n; ++i) {
            box.coord_of(i, c);
            int inside = 0;
            for (int axis = 0; axis < d; ++axis) {
                for (int dir : {-1, +1}) {
                    nb = c;
                    nb[static_cast<std::size_t>(axis)] = static_cast<Coord>(nb[static_cast<std::size_t>(axis)] + dir);
                    if (!box.contains(nb)) continue;
                    ++inside;
                    nbr[static_cast<std::size_t>(i)] |= 1u << box.index_of(nb);
                }
            }
            interior_cell[static_cast<std::size_t>(i)] = inside == 2 * d;
            if (inside < 2 * d) rim |= 1u << i;
        }
        for (const auto& e : graph.edges()) {
            adj[static_cast<std::size_t>(e.first)] |= 1u << e.second;
            adj[static_cast<std::size_t>(e.second)] |= 1u << e.first;
        }
    }

    std::uint32_t dilate(std::uint32_t mask) const {
        std::uint32_t out = 0;
        std::uint32_t m = mask;
        while (m) {
            int i = std::countr_zero(m);
            m &= m - 1;
            out |= nbr[static_cast<std::size_t>(i)];
        }
        return out;
    }

    std::uint32_t flood(std::uint32_t seed, std::uint32_t domain) const {
        std::uint32_t cur = seed & domain;
        while (true) {
            std::uint32_t grown = (cur | dilate(cur)) & domain;
            if (grown == cur) return cur;
            cur = grown;
        }
    }

    // Blocks of a subset, as masks, ascending by least set bit.
    std::vector<std::uint32_t> decompose(std::uint32_t mask) const {
        std::vector<std::uint32_t> blocks;
        std::uint32_t rest = mask;
        while (rest) {
            std::uint32_t seed = rest & (~rest + 1);
            std::uint32_t blk = flood(seed, mask);
            blocks.push_back(blk);
            rest &= ~blk;
        }
        return blocks;
    }

    std::uint32_t closure(std::uint32_t block) const {
        std::uint32_t free = all & ~block;
        std::uint32_t escaped = flood(rim & free, free);
        return block | (free & ~escaped);
    }

    // Free interior boundary: cells of the block with some Z^d neighbor
    // (possibly outside the box) not in the block.
    std::uint32_t int_free(std::uint32_t block) const {
        std::uint32_t out = 0;
        std::uint32_t m = block;
        while (m) {
            int i = std::countr_zero(m);
            m &= m - 1;
            if (!interior_cell[static_cast<std::size_t>(i)] || (nbr[static_cast<std::size_t>(i)] & ~block)) out |= 1u << i;
        }
        return out;
    }

    bool graph_disjoint(std::uint32_t from, std::uint32_t avoid) const {
        std::uint32_t m = from;
        while (m) {
            int i = std::countr_zero(m);
            m &= m - 1;
            if (adj[static_cast<std::size_t>(i)] & avoid) return false;
        }
        return true;
    }

    bool blocks_graph_connected(const std::vector<std::uint32_t>& blocks) const {
        if (blocks.size() <= 1) return blocks.size() == 1;
        std::vector<std::uint32_t> remaining(blocks.begin() + 1, blocks.end());
        std::uint32_t comp = blocks[0];
        bool grew = true;
        while (grew && !remaining.empty()) {
            grew = false;
            for (std::size_t i = 0; i < remaining.size(); ++i) {
                bool touch = false;
                std::uint32_t m = comp;
                while (m && !touch) {
                    int v = std::countr_zero(m);
                    m &= m - 1;
                    if (adj[static_cast<std::size_t>(v)] & remaining[i]) touch = true;
                }
                if (touch) {
                    comp |= remaining[i];
                    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(i));
                    grew = true;
                    --i;
                }
            }
        }
        return remaining.empty();
    }

    SiteSet to_site_set(std::uint32_t mask) const {
        SiteSet s(box);
        std::vector<Coord> c(static_cast<std::size_t>(box.dim()));
        std::uint32_t m = mask;
        while (m) {
            int i = std::countr_zero(m);
            m &= m - 1;
            box.coord_of(i, c);
            s.insert(c);
        }
        return s;
    }
};

}  // namespace

CoverVerdict verify_isolation_cover(const SampledGraph& graph, Index k) {
    const Index n = graph.box().site_count();
    if (n > 20) throw std::invalid_argument("verify_isolation_cover: box too large (n <= 20)");
    if (k < 1) throw std::invalid_argument("verify_isolation_cover: k must be >= 1");

    CoverVerdict verdict;
    ComponentSummary summary = summarize(graph);
    if (summary.c2_size < k) {
        verdict.kind = CoverVerdict::Kind::not_applicable;
        return verdict;
    }

    MaskScan scan(graph);
    const std::uint32_t limit = scan.all;
    for (std::uint32_t mask = 1; mask != 0 && mask <= limit; ++mask) {
        auto blocks = scan.decompose(mask);

        // Large-block isolation: a single block with big closure, at most
        // half the sites, and no graph edge to its box exterior boundary.
        if (blocks.size() == 1) {
            std::uint32_t cl = scan.closure(mask);
            if (4 * static_cast<Index>(std::popcount(cl)) > 3 * n && 2 * static_cast<Index>(std::popcount(mask)) <= n) {
                std::uint32_t ext = scan.dilate(mask) & ~mask;
                if (scan.graph_disjoint(mask, ext)) {
                    verdict.kind = CoverVerdict::Kind::witness_large_block;
                    verdict.witness.push_back(scan.to_site_set(mask));
                    return verdict;
                }
            }
        }

        // Small-family isolation: every block hole-free with closure at most
        // 3n/4, union at least k, block graph connected, no edge from the
        // union's free interior boundary out of the union.
        if (static_cast<Index>(std::popcount(mask)) < k) continue;
        bool small_ok = true;
        std::uint32_t interiors = 0;
        for (std::uint32_t blk : blocks) {
            std::uint32_t cl = scan.closure(blk);
            if (cl != blk || 4 * static_cast<Index>(std::popcount(cl)) > 3 * n) {
                small_ok = false;
                break;
            }
            interiors |= scan.int_free(blk);
        }
        if (!small_ok) continue;
        if (!scan.graph_disjoint(interiors, limit & ~mask)) continue;
        if (!scan.blocks_graph_connected(blocks)) continue;
        verdict.kind = CoverVerdict::Kind::witness_small_family;
        for (std::uint32_t blk : blocks) verdict.witness.push_back(scan.to_site_set(blk));
        return verdict;
    }
    verdict.kind = CoverVerdict::Kind::violation;
    return verdict;
}

}  // namespace lrp
