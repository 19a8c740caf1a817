#include "polyknot/diagram.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace polyknot;

namespace {

PolygonalLink square() { return parse_link("component 0,0,0 1,0,0 1,1,0 0,1,0\n"); }

// triangle in z=0 whose first edge is crossed twice by a square at z=1
PolygonalLink doubly_crossed() {
    return parse_link("component 0,0,0 10,0,0 5,-5,0\ncomponent 2,-1,1 2,1,1 8,1,1 8,-1,1\n");
}

std::size_t crossings_along(const PolygonalLink& link, const Direction& d) {
    return projected_crossings(link, make_chart(d)).size();
}

}  // namespace

TEST_CASE("link validation") {
    CHECK(validate_link(square()).empty());
    CHECK(validate_link(fixture("trefoil9.link")).empty());
    CHECK(validate_link(fixture("whitehead12.link")).empty());

    auto dup = validate_link(parse_link("component 0,0,0 1,0,0 0,0,0 0,1,0\n"));
    REQUIRE_FALSE(dup.empty());
    CHECK(dup.front().message == "duplicate point at indices (1,3)");

    auto repeated = validate_link(parse_link("component 0,0,0 0,0,0 1,0,0 0,1,0\n"));
    REQUIRE_FALSE(repeated.empty());
    CHECK(repeated.front().message == "duplicate point at indices (1,2)");

    auto small = validate_link(parse_link("component 0,0,0 1,0,0\n"));
    REQUIRE_FALSE(small.empty());
    CHECK(small.front().message.find("component needs ≥ 3 vertices") == 0);

    auto col = validate_link(parse_link("component 0,0,0 1,0,0 2,0,0 1,1,0\n"));
    REQUIRE_FALSE(col.empty());
    CHECK(col.front().kind == IssueKind::CollinearTriple);

    // second component touches an edge of the first
    auto hit = validate_link(parse_link("component 0,0,0 2,0,0 2,2,0 0,2,0\ncomponent 1,0,0 1,-1,3 3,-2,3\n"));
    REQUIRE_FALSE(hit.empty());
}

TEST_CASE("regular projections") {
    CHECK(is_regular_direction(square(), up()).regular);
    auto side = is_regular_direction(square(), Direction::parse("1,0,0"));
    CHECK_FALSE(side.regular);
    REQUIRE(side.witness);
    CHECK_FALSE(side.witness->describe().empty());

    auto tre = is_regular_direction(fixture("trefoil9.link"), up());
    CHECK(tre.regular);
    CHECK(tre.double_points == 3);

    // an edge projecting onto a vertex of another edge
    auto through = parse_link("component 0,0,0 2,0,0 1,1,0\ncomponent 1,0,1 1,-1,2 3,-1,1\n");
    CHECK_FALSE(is_regular_direction(through, up()).regular);
}

TEST_CASE("direction search") {
    Direction d = find_regular_direction(square(), 1);
    CHECK(is_regular_direction(square(), d).regular);

    PolygonalLink tre = fixture("trefoil9.link");
    Direction d7 = find_regular_direction(tre, 7);
    CHECK(build_good_diagram(refine_to_good(tre, d7), d7).k() == 3);

    PolygonalLink two = fixture("two_squares.link");
    Direction d2 = find_regular_direction(two, 0);
    CHECK(crossings_along(two, d2) == 0);

    CHECK(find_regular_direction(tre, 7).to_string() == d7.to_string());
}

TEST_CASE("refinement to a good diagram") {
    PolygonalLink tre = fixture("trefoil9.link");
    CHECK(refine_to_good(tre, up()) == tre);

    PolygonalLink bad = doubly_crossed();
    CHECK(overloaded_edge(bad, up()) == 1);
    PolygonalLink good = refine_to_good(bad, up());
    CHECK(good.size() == bad.size() + 1);
    CHECK_FALSE(overloaded_edge(good, up()));
    CHECK(validate_link(good).empty());
    GoodDiagram d = build_good_diagram(good, up());
    CHECK(d.k() == 2);
    CHECK(d.crossing(1).v == 1);
    CHECK(d.crossing(2).v == 2);
}

TEST_CASE("vertex insertion and removal") {
    PolygonalLink sq = square();
    PolygonalLink penta = deform_add_vertex(sq, 1, Point3{Rational(1, 2), Rational(-1), Rational(0)});
    CHECK(penta.size() == 5);
    CHECK(validate_link(penta).empty());
    CHECK(deform_remove_vertex(penta, 2) == sq);

    // a vertical segment through (3/2,1) pierces the triangle at vertex 3
    auto pierced = parse_link(
        "component 0,0,0 1,0,0 2,1,0 1,2,0 0,2,0\n"
        "component 3/2,1,-1 3/2,1,1 5,5,1\n");
    REQUIRE(validate_link(pierced).empty());
    CHECK_THROWS_AS(deform_remove_vertex(pierced, 3), TriangleObstruction);
}
