#include "polyknot/diagram.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace polyknot;

namespace {

std::vector<Index> sorted(std::vector<Index> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// rational rotation built from the triples (3,4,5) about z and (5,12,13) about x
Point3 rotate(const Point3& p) {
    Rational c1(3, 5), s1(4, 5), c2(5, 13), s2(12, 13);
    Point3 r{c1 * p.x - s1 * p.y, s1 * p.x + c1 * p.y, p.z};
    return {r.x, c2 * r.y - s2 * r.z, s2 * r.y + c2 * r.z};
}

PolygonalLink rotate(const PolygonalLink& link) {
    auto comps = link.components();
    for (auto& c : comps) {
        for (auto& p : c) p = rotate(p);
    }
    return PolygonalLink(comps);
}

}  // namespace

TEST_CASE("trefoil crossing data") {
    PolygonalLink tre = fixture("trefoil9.link");
    GoodDiagram d = build_good_diagram(tre, up());
    REQUIRE(d.k() == 3);
    const Index expect[3][4] = {{3, 4, 8, 9}, {6, 7, 2, 3}, {9, 1, 5, 6}};
    for (std::size_t l = 1; l <= 3; ++l) {
        const auto& c = d.crossing(l);
        CHECK(c.i == expect[l - 1][0]);
        CHECK(c.j == expect[l - 1][1]);
        CHECK(c.v == expect[l - 1][2]);
        CHECK(c.w == expect[l - 1][3]);
        CHECK(c.sign == +1);
        // sign straight from the 3D points: ((q_j - q_i) x (q_w - q_v)) . n
        Rational s = dot(cross(tre.point(c.j) - tre.point(c.i), tre.point(c.w) - tre.point(c.v)), up().vec());
        CHECK(sign_of(s) == c.sign);
    }
    CHECK(dot(cross(tre.point(4) - tre.point(3), tre.point(9) - tre.point(8)), up().vec()) == Rational(11, 2));
    CHECK(d.k_plus() == 3);
    CHECK(d.k_minus() == 0);

    IndexSets s = index_sets(d);
    CHECK(sorted(s.I) == std::vector<Index>{3, 6, 9});
    CHECK(sorted(s.V) == std::vector<Index>{2, 5, 8});
    CHECK(sorted(s.K) == std::vector<Index>{1, 4, 7});
}

TEST_CASE("crossing sign convention") {
    Point2 a{1, 1}, b{-1, -1}, c{-1, 1}, e{1, -1};
    CHECK(crossing_sign(a, b, c, e) == +1);
    CHECK(crossing_sign(c, e, a, b) == -1);
    CHECK(crossing_sign(c, e, a, b) == -crossing_sign(a, b, c, e));
}

TEST_CASE("crossing data is invariant under a rational rotation") {
    for (const char* name : {"trefoil9.link", "whitehead12.link"}) {
        PolygonalLink link = fixture(name);
        GoodDiagram d = build_good_diagram(link, up());
        PolygonalLink turned = rotate(link);
        Direction dir(rotate(up().vec()));
        GoodDiagram e = build_good_diagram(turned, dir);
        REQUIRE(e.k() == d.k());
        for (std::size_t l = 1; l <= d.k(); ++l) {
            CHECK(e.crossing(l).i == d.crossing(l).i);
            CHECK(e.crossing(l).v == d.crossing(l).v);
            CHECK(e.crossing(l).sign == d.crossing(l).sign);
        }
    }
}

TEST_CASE("walk order and index sets") {
    GoodDiagram sq = build_good_diagram(fixture("square.link"), up());
    CHECK(sq.k() == 0);
    CHECK(sq.k_plus() == 0);
    IndexSets s = index_sets(sq);
    CHECK(s.I.empty());
    CHECK(s.V.empty());
    CHECK(s.K == std::vector<Index>{1, 2, 3, 4});

    GoodDiagram wh = build_good_diagram(fixture("whitehead12.link"), up());
    REQUIRE(wh.k() == 5);
    for (std::size_t l = 2; l <= wh.k(); ++l) CHECK(wh.crossing(l - 1).i <= wh.crossing(l).i);
    IndexSets w = index_sets(wh);
    CHECK(w.I.size() + w.V.size() + w.K.size() == wh.n());
    CHECK(wh.successor_permutation() == Permutation::parse("(1,2,3,4,5,6,7,8)(9,10,11,12)"));
}

TEST_CASE("diagram construction rejects bad input") {
    GoodDiagram d = build_good_diagram(fixture("trefoil9.link"), up());
    auto crossings = d.crossings();
    crossings[0].sign = -1;
    CHECK_THROWS_AS(GoodDiagram(d.vertices(), d.boundaries(), crossings), DiagramError);
    crossings = d.crossings();
    std::swap(crossings[0], crossings[1]);
    CHECK_THROWS_AS(GoodDiagram(d.vertices(), d.boundaries(), crossings), DiagramError);
    CHECK_THROWS_AS(build_good_diagram(fixture("square.link"), Direction::parse("1,0,0")), DiagramError);
}

TEST_CASE("segment intersection") {
    CHECK(segment_crossing({0, 0}, {2, 2}, {0, 2}, {2, 0}) == Point2{1, 1});
    CHECK_FALSE(segment_crossing({0, 0}, {1, 0}, {0, 1}, {1, 1}));
    CHECK_FALSE(segment_crossing({0, 0}, {2, 0}, {2, 0}, {3, 1}));
}
