#include <doctest.h>

#include <sstream>

#include "lrp/lattice.hpp"

using namespace lrp;

TEST_CASE("box coordinate range covers [-L/2, L/2) for odd and even sides") {
    LatticeBox even(2, 4);
    CHECK(even.lo() == -2);
    CHECK(even.hi() == 1);
    CHECK(even.site_count() == 16);

    LatticeBox odd(2, 5);
    CHECK(odd.lo() == -2);
    CHECK(odd.hi() == 2);
    CHECK(odd.site_count() == 25);

    LatticeBox unit(3, 1);
    CHECK(unit.lo() == 0);
    CHECK(unit.hi() == 0);
    CHECK(unit.origin_index() == 0);
}

TEST_CASE("index and coordinate maps are mutually inverse bijections") {
    for (Index side : {1, 2, 3, 6, 7}) {
        for (int d : {1, 2, 3}) {
            LatticeBox box(d, side);
            std::vector<Coord> c(static_cast<std::size_t>(d));
            for (Index i = 0; i < box.site_count(); ++i) {
                box.coord_of(i, c);
                CHECK(box.contains(c));
                CHECK(box.index_of(c) == i);
            }
        }
    }
}

TEST_CASE("origin site exists for every side length") {
    for (Index side : {1, 2, 3, 4, 9, 10}) {
        LatticeBox box(2, side);
        std::vector<Coord> zero{0, 0};
        CHECK(box.contains(zero));
        CHECK(box.coord_of(box.origin_index()) == zero);
    }
}

TEST_CASE("from_site_count accepts exact powers only") {
    CHECK(LatticeBox::from_site_count(2, 49).side() == 7);
    CHECK(LatticeBox::from_site_count(3, 27).side() == 3);
    CHECK(LatticeBox::from_site_count(2, 1 << 20).side() == 1024);
    CHECK_THROWS_AS(LatticeBox::from_site_count(2, 50), std::invalid_argument);
}

TEST_CASE("site set membership, duplicates and box guard") {
    LatticeBox box(2, 5);
    SiteSet s(box);
    CHECK(s.insert(std::vector<Coord>{0, 0}));
    CHECK_FALSE(s.insert(std::vector<Coord>{0, 0}));
    CHECK(s.insert(std::vector<Coord>{1, -2}));
    CHECK(s.size() == 2);
    CHECK(s.contains(std::vector<Coord>{1, -2}));
    CHECK_FALSE(s.contains(std::vector<Coord>{2, 2}));
    CHECK_THROWS_AS(s.insert(std::vector<Coord>{3, 0}), std::out_of_range);

    SiteSet free_set(2);
    CHECK(free_set.insert(std::vector<Coord>{100, -100}));
    CHECK(free_set.contains(std::vector<Coord>{100, -100}));
}

TEST_CASE("site set round-trips through the plain-text format") {
    LatticeBox box(2, 6);
    SiteSet s(box);
    s.insert(std::vector<Coord>{0, 0});
    s.insert(std::vector<Coord>{-3, 2});
    s.insert(std::vector<Coord>{1, 1});

    std::stringstream ss;
    write_site_set(ss, s);
    SiteSet back = read_site_set(ss);
    CHECK(back == s);
    CHECK(back.box().has_value());
    CHECK(back.box()->side() == 6);
}
