#include <doctest.h>

#include <algorithm>

#include "lrp/geometry.hpp"
#include "test_helpers.hpp"

using namespace lrp;
using lrp::testing::make_set;
using lrp::testing::random_connected_set;

namespace {

SiteSet solid_square(const LatticeBox& box, Coord r) {
    SiteSet s(box);
    for (Coord x = -r; x <= r; ++x) {
        for (Coord y = -r; y <= r; ++y) s.insert(std::vector<Coord>{x, y});
    }
    return s;
}

SiteSet ring3(const LatticeBox& box) {
    SiteSet s(box);
    for (Coord x = -1; x <= 1; ++x) {
        for (Coord y = -1; y <= 1; ++y) {
            if (x != 0 || y != 0) s.insert(std::vector<Coord>{x, y});
        }
    }
    return s;
}

}  // namespace

TEST_CASE("block decomposition splits by l1 adjacency") {
    LatticeBox box(2, 12);
    auto blocks = block_decompose(make_set(box, {{0, 0}, {0, 1}, {5, 5}}));
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].size() == 2);
    CHECK(blocks[1].size() == 1);
    CHECK(blocks[1].contains(std::vector<Coord>{5, 5}));

    auto diag = block_decompose(make_set(box, {{0, 0}, {1, 1}}));
    CHECK(diag.size() == 2);

    auto full = block_decompose(solid_square(box, 1));
    CHECK(full.size() == 1);

    CHECK(block_decompose(SiteSet(box)).empty());
}

TEST_CASE("block decomposition is a partition at l1-distance > 1") {
    LatticeBox box(2, 12);
    Xoshiro256pp rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        SiteSet s(box);
        std::vector<Coord> c(2);
        for (int i = 0; i < 30; ++i) {
            box.coord_of(static_cast<Index>(rng.below(static_cast<std::uint64_t>(box.site_count()))), c);
            s.insert(c);
        }
        auto blocks = block_decompose(s);
        std::size_t total = 0;
        for (const auto& b : blocks) {
            CHECK(is_block(b));
            total += b.size();
        }
        CHECK(total == s.size());
        CHECK(pairwise_1_disconnected(blocks));
    }
}

TEST_CASE("closure of a ring swallows the middle") {
    LatticeBox box(2, 9);
    auto report = closure_and_holes(ring3(box), box);
    CHECK(report.closure.size() == 9);
    REQUIRE(report.holes.size() == 1);
    CHECK(report.holes[0].size() == 1);
    CHECK(report.holes[0].contains(std::vector<Coord>{0, 0}));
    CHECK(report.type_counts.at(1) == 1);
}

TEST_CASE("solid blocks and open shapes have no holes") {
    LatticeBox box(2, 9);
    auto solid = closure_and_holes(solid_square(box, 1), box);
    CHECK(solid.closure.size() == 9);
    CHECK(solid.holes.empty());

    // U-shape: 3x3 minus center minus one edge midpoint; the middle escapes.
    SiteSet u(box);
    for (Coord x = -1; x <= 1; ++x) {
        for (Coord y = -1; y <= 1; ++y) {
            if ((x == 0 && y == 0) || (x == 0 && y == 1)) continue;
            u.insert(std::vector<Coord>{x, y});
        }
    }
    auto open = closure_and_holes(u, box);
    CHECK(open.holes.empty());
    CHECK(open.closure.size() == u.size());

    CHECK_THROWS_AS(closure_and_holes(make_set(box, {{0, 0}, {3, 3}}), box), std::invalid_argument);
}

TEST_CASE("boundary sets match hand counts") {
    LatticeBox seven(2, 7);
    auto b = boundaries(solid_square(seven, 1), seven);
    CHECK(b.int_free.size() == 8);
    CHECK(b.ext_free.size() == 12);
    CHECK(b.int_box == b.int_free);
    CHECK(b.ext_box.size() == b.ext_free.size());

    LatticeBox five(2, 5);
    SiteSet whole(five);
    std::vector<Coord> c(2);
    for (Index i = 0; i < five.site_count(); ++i) {
        five.coord_of(i, c);
        whole.insert(c);
    }
    auto wb = boundaries(whole, five);
    CHECK(wb.ext_box.empty());
    CHECK(wb.int_box.empty());
    CHECK(wb.ext_free.size() == static_cast<std::size_t>(4 * five.side()));

    auto corner = boundaries(make_set(five, {{-2, -2}}), five);
    CHECK(corner.ext_box.size() == 2);
    CHECK(corner.ext_free.size() == 4);

    auto empty = boundaries(SiteSet(five), five);
    CHECK(empty.int_box.empty());
    CHECK(empty.ext_box.empty());
    CHECK(empty.int_free.empty());
    CHECK(empty.ext_free.empty());
}

TEST_CASE("boundary containment invariants on random sets") {
    LatticeBox box(2, 12);
    Xoshiro256pp rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        SiteSet a = random_connected_set(box, rng, 1 + rng.below(60));
        auto b = boundaries(a, box);
        CHECK(b.ext_box.is_subset_of(b.ext_free));
        CHECK(b.int_box.is_subset_of(b.int_free));
        CHECK(b.int_free.is_subset_of(a));
        for (std::size_t i = 0; i < b.ext_free.size(); ++i) CHECK_FALSE(a.contains(b.ext_free.site(i)));
    }
}

TEST_CASE("isoperimetry report on reference shapes") {
    LatticeBox nine(2, 9);
    auto r = isoperimetry_report(solid_square(nine, 1), nine);
    CHECK(r.int_free_size == 8);
    CHECK(r.star_int_ok);
    CHECK(r.star_ext_ok);
    CHECK(r.precondition_ok);

    auto single = isoperimetry_report(make_set(nine, {{0, 0}}), nine);
    CHECK(single.int_free_size == 1);
    CHECK(single.star_int_ok);  // equality case: 1 >= 1
}

TEST_CASE("hole typing thresholds and range constants") {
    CHECK(hole_type(1) == 1);
    CHECK(hole_type(2) == 1);
    CHECK(hole_type(3) == 2);
    CHECK(hole_type(4) == 2);
    CHECK(hole_type(5) == 3);

    LatticeBox box(2, 9);
    auto report = closure_and_holes(ring3(box), box);
    auto typing = hole_typing(report, 1024, 2, 4.0);
    CHECK(typing.thresholds.count(1) == 1);
    CHECK(typing.range_cells.value() == 2);       // floor(4 / sqrt 2) = 2
    CHECK(typing.min_large_type.value() == 3);    // 1 + ceil(2 log2 2)

    // h_n(2) = 2^-5 * (1/4) * 1024 = 8.
    HoleReport fake{SiteSet(box), {}, {{2, 9}}};
    auto t = hole_typing(fake, 1024, 2);
    CHECK(t.thresholds.at(2) == doctest::Approx(8.0));
    CHECK(std::find(t.principal_types.begin(), t.principal_types.end(), 2) != t.principal_types.end());

    HoleReport below{SiteSet(box), {}, {{2, 7}}};
    auto t2 = hole_typing(below, 1024, 2);
    CHECK(t2.principal_types.empty());
}

TEST_CASE("projections, Loomis-Whitney and fibers") {
    LatticeBox three(2, 3);
    SiteSet full(three);
    std::vector<Coord> c(2);
    for (Index i = 0; i < three.site_count(); ++i) {
        three.coord_of(i, c);
        full.insert(c);
    }
    auto r = projections_and_fibers(full, three);
    CHECK(r.projection_sizes == std::vector<std::size_t>{3, 3});
    CHECK(r.loomis_whitney_ok);
    CHECK(r.fibers.size() == 3);  // every column crosses the box

    LatticeBox twelve(2, 12);
    auto tromino = projections_and_fibers(make_set(twelve, {{0, 0}, {1, 0}, {0, 1}}), twelve);
    CHECK(tromino.loomis_whitney_ok);  // 3 <= 2*2
    CHECK(tromino.projection_sizes == std::vector<std::size_t>{2, 2});

    LatticeBox seven(2, 7);
    auto centered = projections_and_fibers(solid_square(seven, 1), seven);
    CHECK(centered.fibers.empty());
}

TEST_CASE("closure idempotence, hole hole-freeness and boundary identity") {
    LatticeBox box(2, 12);
    Xoshiro256pp rng(99);
    int holes_seen = 0;
    for (int trial = 0; trial < 400; ++trial) {
        SiteSet a = random_connected_set(box, rng, 2 + rng.below(80));
        auto report = closure_and_holes(a, box);

        auto again = closure_and_holes(report.closure, box);
        CHECK(again.closure == report.closure);
        CHECK(again.holes.empty());

        auto ab = boundaries(a, box);
        for (const auto& hole : report.holes) {
            ++holes_seen;
            auto hr = closure_and_holes(hole, box);
            CHECK(hr.holes.empty());
            CHECK(hr.closure == hole);
            // Every hole boundary identity: int_box = int_free, inside ext_box(A).
            auto hb = boundaries(hole, box);
            CHECK(hb.int_box == hb.int_free);
            CHECK(hb.int_free.is_subset_of(ab.ext_box));
        }
    }
    CHECK(holes_seen > 0);
}

TEST_CASE("closure containment dichotomy for 1-disconnected pairs") {
    LatticeBox box(2, 12);

    // Constructed case: a singleton inside the ring's hole.
    auto ring = ring3(box);
    auto inner = make_set(box, {{0, 0}});
    auto ring_closure = closure_and_holes(ring, box).closure;
    auto inner_closure = closure_and_holes(inner, box).closure;
    CHECK(inner_closure.is_subset_of(ring_closure));

    Xoshiro256pp rng(1234);
    int disjoint_cases = 0, nested_cases = 0;
    for (int trial = 0; trial < 500; ++trial) {
        SiteSet a = random_connected_set(box, rng, 2 + rng.below(50));
        SiteSet b = random_connected_set(box, rng, 2 + rng.below(20));
        std::vector<SiteSet> pair{a, b};
        if (!pairwise_1_disconnected(pair)) continue;
        auto ca = closure_and_holes(a, box).closure;
        auto cb = closure_and_holes(b, box).closure;

        bool intersect = false;
        for (std::size_t i = 0; i < cb.size() && !intersect; ++i) intersect = ca.contains(cb.site(i));
        if (!intersect) {
            for (std::size_t i = 0; i < ca.size() && !intersect; ++i) intersect = cb.contains(ca.site(i));
        }
        if (intersect) {
            bool nested = ca.is_subset_of(cb) || cb.is_subset_of(ca);
            CHECK(nested);
            ++nested_cases;
        } else {
            CHECK(pairwise_1_disconnected(std::vector<SiteSet>{ca, cb}));
            ++disjoint_cases;
        }
    }
    CHECK(disjoint_cases > 0);
}

TEST_CASE("free boundaries of closures are star-connected and shrink") {
    LatticeBox box(2, 12);
    Xoshiro256pp rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        SiteSet a = random_connected_set(box, rng, 2 + rng.below(70));
        auto closure = closure_and_holes(a, box).closure;
        auto ba = boundaries(a, box);
        auto bc = boundaries(closure, box);
        CHECK(bc.int_free.is_subset_of(ba.int_free));
        CHECK(star_components(bc.int_free).size() == 1);
        // ext_free may leave the box; star connectivity still applies.
        CHECK(star_components(bc.ext_free).size() == 1);
    }
}

TEST_CASE("star isoperimetry holds unconditionally on random connected sets") {
    LatticeBox box(2, 12);
    Xoshiro256pp rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        SiteSet a = random_connected_set(box, rng, 1 + rng.below(100));
        auto r = isoperimetry_report(a, box);
        CHECK(r.star_int_ok);
        CHECK(r.star_ext_ok);
        auto pr = projections_and_fibers(a, box);
        CHECK(pr.loomis_whitney_ok);
    }
}
