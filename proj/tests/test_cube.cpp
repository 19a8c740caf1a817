#include "polyknot/cube.hpp"
#include "polyknot/verify.hpp"
#include "support.hpp"

#include <doctest.h>

#include <map>

using namespace polyknot;

namespace {

Permutation P(const char* s, std::size_t n) { return Permutation::parse(s, n); }

const GoodDiagram& trefoil() {
    static const GoodDiagram d = build_good_diagram(fixture("trefoil9.link"), up());
    return d;
}

const GoodDiagram& whitehead() {
    static const GoodDiagram d = build_good_diagram(fixture("whitehead12.link"), up());
    return d;
}

SmoothingState resolve(const GoodDiagram& d, const std::vector<int>& choices) {
    SmoothingState s = initial_state(d);
    for (std::size_t l = 1; l <= choices.size(); ++l) s = smooth_crossing_trace(d, s, l, choices[l - 1]);
    return s;
}

}  // namespace

TEST_CASE("initial smoothing state") {
    CHECK(initial_state(trefoil()).sigma == P("(1,2,3,4,5,6,7,8,9)", 9));
    CHECK(initial_state(trefoil()).word_string() == "222");
    CHECK(initial_state(whitehead()).sigma == P("(1,2,3,4,5,6,7,8)(9,10,11,12)", 12));
    GoodDiagram sq = build_good_diagram(fixture("square.link"), up());
    CHECK(initial_state(sq).word.empty());
    CHECK(initial_state(sq).sigma == P("(1,2,3,4)", 4));
}

TEST_CASE("tracing single resolutions") {
    const GoodDiagram& d = trefoil();
    SmoothingState s = initial_state(d);
    CHECK(smooth_crossing_trace(d, s, 1, 0).sigma == P("(1,2,3,9)(4,5,6,7,8)", 9));
    CHECK(resolve(d, {0, 0, 0}).sigma == P("(1,2,7,8,4,5)(6,3,9)", 9));
    CHECK(resolve(d, {1, 1, 0}).sigma == P("(1,5,4,9,6,2)(3,8,7)", 9));
    CHECK(resolve(d, {1, 1, 0}).word_string() == "110");
}

TEST_CASE("theorem formulas on worked states") {
    const GoodDiagram& d = trefoil();
    SmoothingState s = initial_state(d);
    auto one = smooth_crossing_theorem(d, s, 1, 1);
    CHECK(one.state.sigma == P("(1,2,3,8,7,6,5,4,9)", 9));
    CHECK(one.state.sigma == conjugate(s.sigma, P("(4,8)(5,7)", 9)));
    auto zero = smooth_crossing_theorem(d, s, 1, 0);
    CHECK(zero.state.sigma == compose(P("(4,9)", 9), s.sigma));

    SmoothingState mid{{1, 1, 2}, P("(1,2,6,5,4,9)(3,8,7)", 9)};
    auto step = smooth_crossing_theorem(d, mid, 3, 0);
    CHECK(step.state.sigma == P("(1,5,4,9,6,2)(3,8,7)", 9));
    CHECK(step.state.sigma == conjugate(mid.sigma, P("(1,6)", 9)));
    CHECK(step.state.word_string() == "110");
}

TEST_CASE("trefoil cube of permutations") {
    Cube cube = build_cube(trefoil(), {1, 2, 3});
    REQUIRE(cube.vertices.size() == 8);
    const std::map<std::string, const char*> printed{
        {"000", "(1,2,7,8,4,5)(6,3,9)"}, {"001", "(1,6,3,9,5,4,8,7,2)"},
        {"010", "(1,5,4,8,7,3,9,6,2)"},   {"011", "(1,6,2)(9,5,4,8,7,3)"},
        {"100", "(1,5,4,9,6,3,8,7,2)"},   {"101", "(1,2,7,8,3,6)(4,9,5)"},
        {"110", "(1,5,4,9,6,2)(3,8,7)"},  {"111", "(1,6,2)(3,8,7)(9,5,4)"},
    };
    for (const auto& [word, text] : printed) {
        INFO(word);
        CHECK(equal_up_to_reversal(cube.vertex(word).sigma, P(text, 9)));
    }
    CHECK(cube.vertex("000").sigma == P("(1,2,7,8,4,5)(6,3,9)", 9));
    CHECK(cube.vertex("110").sigma == P("(1,5,4,9,6,2)(3,8,7)", 9));

    const std::map<std::string, std::size_t> circles{{"000", 2}, {"100", 1}, {"010", 1}, {"001", 1},
                                                     {"110", 2}, {"101", 2}, {"011", 2}, {"111", 3}};
    for (const auto& [word, c] : circles) CHECK(cube.vertex(word).circles == c);
    CHECK(cube.edges.size() == 12);

    std::vector<std::size_t> sizes;
    for (const auto& f : cube.vertex("111").groups) sizes.push_back(f.order());
    CHECK(sizes == std::vector<std::size_t>{3, 3, 3});
}

TEST_CASE("every resolution order gives the same cycle partitions") {
    for (const GoodDiagram* d : {&trefoil(), &whitehead()}) {
        Cube ref = build_cube(*d);
        for (const auto& order : resolution_orders(d->k(), 10, 4)) {
            Cube c = build_cube(*d, order);
            for (std::size_t v = 0; v < c.vertices.size(); ++v) {
                CHECK(cycle_partition(c.vertices[v].sigma) == cycle_partition(ref.vertices[v].sigma));
            }
        }
    }
}

TEST_CASE("parallel and serial cube construction agree") {
    Cube a = build_cube(whitehead(), {3, 1, 5, 2, 4});
    Cube b = build_cube_serial(whitehead(), {3, 1, 5, 2, 4});
    REQUIRE(a.vertices.size() == b.vertices.size());
    for (std::size_t v = 0; v < a.vertices.size(); ++v) CHECK(a.vertices[v].sigma == b.vertices[v].sigma);
    CHECK(a.stats.steps == b.stats.steps);
    CHECK(a.stats.cases == b.stats.cases);
}

TEST_CASE("whitehead vertex group") {
    Cube cube = build_cube(whitehead());
    const CubeVertex& v = cube.vertex("11011");
    CHECK(equal_up_to_reversal(v.sigma, P("(1,9,3,8,10,5,6,12,2)(4,11,7)", 12)));
    std::vector<std::size_t> sizes;
    for (const auto& f : v.groups) sizes.push_back(f.order());
    CHECK(sizes == std::vector<std::size_t>{9, 3});

    CHECK(vertex_group(P("(1,2,3,4)", 4)).size() == 1);
    CHECK(vertex_group(P("(1,2,3,4)", 4)).front().order() == 4);
    CHECK(vertex_group(P("(1,2)(3,4,5)", 5)).front().order() == 2);
}

TEST_CASE("generator relations along cube edges") {
    Cube cube = build_cube(trefoil());
    for (const auto& e : cube.edges) {
        INFO(e.star_word);
        auto r = edge_relations(cube, e);
        CHECK(r.consistent());
        bool merge = cube.vertices[e.head].circles + 1 == cube.vertices[e.tail].circles;
        CHECK((r.kind == EdgeKind::Merge) == merge);
        if (e.star_word == "*00") {
            CHECK(r.kind == EdgeKind::Merge);
            bool xi_holds = false;
            for (const auto& c : r.checks) xi_holds |= c.name == "xi-merge" && c.status == RelationStatus::Holds;
            CHECK(xi_holds);
        }
        if (e.star_word == "1*1") CHECK(r.kind == EdgeKind::Split);
    }
    Cube wh = build_cube(whitehead());
    for (const auto& e : wh.edges) CHECK(edge_relations(wh, e).consistent());
}

TEST_CASE("direct relation between the two resolutions") {
    PairSummary t = resolution_pair_sweep(trefoil());
    CHECK(t.failures == 0);
    CHECK(t.evaluated > 0);
    CHECK(resolution_pair_sweep(whitehead()).failures == 0);
}
