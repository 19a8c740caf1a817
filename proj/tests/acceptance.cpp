// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include "polyknot/io.hpp"
#include "polyknot/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace polyknot;

namespace {

const Direction kUp = Direction::parse("0,0,1");

PolygonalLink fixture(const std::string& name) { return read_link_file(std::string(POLYKNOT_FIXTURES) + "/" + name); }

struct Outcome {
    bool passed;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double limit_s;
    std::function<Outcome()> run;
};

// Random valid polygonal link with 1-2 components and lattice coordinates.
std::optional<PolygonalLink> random_link(std::mt19937_64& rng, std::size_t max_vertices) {
    std::uniform_int_distribution<int> xy(-8, 8), z(-3, 3), comps(1, 2), size(3, 8);
    std::vector<std::vector<Point3>> out;
    std::size_t total = 0;
    for (int c = comps(rng); c > 0; --c) {
        std::vector<Point3> pts;
        for (int s = size(rng); s > 0; --s) pts.push_back({Rational(xy(rng)), Rational(xy(rng)), Rational(z(rng))});
        total += pts.size();
        out.push_back(std::move(pts));
    }
    if (total > max_vertices) return std::nullopt;
    PolygonalLink link(out);
    if (!validate_link(link).empty()) return std::nullopt;
    return link;
}

struct Sample {
    PolygonalLink link;
    Direction dir;
    GoodDiagram diagram;
};

// Random links whose good diagram has n <= max_n and k <= max_k.
std::vector<Sample> random_corpus(std::uint64_t seed, std::size_t count, std::size_t max_n, std::size_t max_k) {
    std::mt19937_64 rng(seed);
    std::vector<Sample> out;
    while (out.size() < count) {
        auto link = random_link(rng, max_n);
        if (!link) continue;
        try {
            Direction dir = find_regular_direction(*link, rng());
            if (projected_crossings(*link, make_chart(dir)).size() > max_k) continue;
            PreparedLink p = prepare(*link, dir, 0);
            if (p.diagram.n() > max_n || p.diagram.k() > max_k) continue;
            out.push_back({p.link, p.dir, p.diagram});
        } catch (const GeometryError&) {
            continue;
        }
    }
    return out;
}

const std::vector<Sample>& corpus() {
    static const std::vector<Sample> c = random_corpus(2024, 100, 16, 6);
    return c;
}

std::vector<GoodDiagram> fixture_diagrams() {
    std::vector<GoodDiagram> out;
    for (const char* f : {"square.link", "two_squares.link", "trefoil9.link", "whitehead12.link", "kink5.link",
                          "finger.link", "riii.link", "riii_after.link"}) {
        out.push_back(build_good_diagram(fixture(f), kUp));
    }
    return out;
}

Outcome trefoil_crossings() {
    GoodDiagram d = build_good_diagram(fixture("trefoil9.link"), kUp);
    std::string table = crossing_table_tsv(d);
    bool ok = table == "1\t3\t4\t8\t9\t+1\n2\t6\t7\t2\t3\t+1\n3\t9\t1\t5\t6\t+1\n";
    return {ok, ok ? "(3,4,8,9) (6,7,2,3) (9,1,5,6), all +1" : table};
}

Outcome trefoil_cube() {
    Cube cube = build_cube(build_good_diagram(fixture("trefoil9.link"), kUp), {1, 2, 3});
    const std::map<std::string, const char*> printed{
        {"000", "(1,2,7,8,4,5)(6,3,9)"}, {"001", "(1,6,3,9,5,4,8,7,2)"},
        {"010", "(1,5,4,8,7,3,9,6,2)"},   {"011", "(1,6,2)(9,5,4,8,7,3)"},
        {"100", "(1,5,4,9,6,3,8,7,2)"},   {"101", "(1,2,7,8,3,6)(4,9,5)"},
        {"110", "(1,5,4,9,6,2)(3,8,7)"},  {"111", "(1,6,2)(3,8,7)(9,5,4)"},
    };
    std::size_t matched = 0;
    for (const auto& [word, text] : printed) {
        Permutation want = Permutation::parse(text, 9);
        if (cycle_partition(cube.vertex(word).sigma) == cycle_partition(want) &&
            equal_up_to_reversal(cube.vertex(word).sigma, want)) {
            ++matched;
        }
    }
    bool verbatim = cube.vertex("000").sigma == Permutation::parse("(1,2,7,8,4,5)(6,3,9)", 9) &&
                    cube.vertex("110").sigma == Permutation::parse("(1,5,4,9,6,2)(3,8,7)", 9);
    return {matched == 8 && verbatim,
            std::to_string(matched) + "/8 vertices match; 000 and 110 verbatim: " + (verbatim ? "yes" : "no")};
}

Outcome whitehead_vertex() {
    Cube cube = build_cube(build_good_diagram(fixture("whitehead12.link"), kUp));
    const CubeVertex& v = cube.vertex("11011");
    bool cycles = equal_up_to_reversal(v.sigma, Permutation::parse("(1,9,3,8,10,5,6,12,2)(4,11,7)", 12));
    std::vector<std::size_t> orders;
    for (const auto& f : v.groups) orders.push_back(f.order());
    bool group = orders == std::vector<std::size_t>{9, 3};
    return {cycles && group, "sigma_11011 = " + v.sigma.to_string() + ", group D_9 x D_3: " + (group ? "yes" : "no")};
}

Outcome theorem_oracle() {
    std::vector<GoodDiagram> diagrams = fixture_diagrams();
    for (const auto& s : corpus()) diagrams.push_back(s.diagram);
    std::size_t steps = 0, cubes = 0, mismatches = 0;
    std::map<std::size_t, std::size_t> by_k;
    std::string first;
    for (std::size_t t = 0; t < diagrams.size(); ++t) {
        ++by_k[diagrams[t].k()];
        for (const auto& order : resolution_orders(diagrams[t].k(), 10, t)) {
            try {
                steps += build_cube(diagrams[t], order).stats.steps;
                ++cubes;
            } catch (const TheoremMismatch& e) {
                if (mismatches++ == 0) first = e.what();
            }
        }
    }
    std::ostringstream detail;
    detail << diagrams.size() << " diagrams, " << cubes << " cubes, " << steps << " steps, " << mismatches
           << " mismatches; k histogram";
    for (auto [k, c] : by_k) detail << ' ' << k << ':' << c;
    if (!first.empty()) detail << "; first: " << first;
    return {mismatches == 0 && by_k.count(5) && by_k.count(6), detail.str()};
}

Outcome khovanov_pipeline() {
    std::vector<GoodDiagram> diagrams = fixture_diagrams();
    for (const auto& s : corpus()) diagrams.push_back(s.diagram);
    std::size_t bad_d2 = 0, bad_euler = 0;
    for (const auto& d : diagrams) {
        Cube cube = build_cube(d);
        KhovanovComplex cx = build_complex(cube);
        if (!d_squared_zero(cx)) {
            ++bad_d2;
            continue;
        }
        if (euler_characteristic(homology(cx)) != jones_state_sum(cube)) ++bad_euler;
    }
    Cube tre = build_cube(build_good_diagram(fixture("trefoil9.link"), kUp));
    HomologyTable h = homology(build_complex(tre));
    HomologyTable want{{{0, 1}, 1}, {{0, 3}, 1}, {{2, 5}, 1}, {{3, 9}, 1}};
    LaurentPoly j = jones_state_sum(tre);
    bool trefoil = h == want && j.to_string() == "1*q^1 + 1*q^3 + 1*q^5 - 1*q^9";
    return {bad_d2 == 0 && bad_euler == 0 && trefoil,
            std::to_string(diagrams.size()) + " complexes, d^2 != 0: " + std::to_string(bad_d2) +
                ", Euler mismatches: " + std::to_string(bad_euler) + ", trefoil table and J exact: " +
                (trefoil ? "yes" : "no")};
}

Outcome move_invariance_fixtures() {
    bool ok = true;
    std::ostringstream detail;
    std::map<std::string, std::size_t> seen;
    for (const char* name : {"trefoil9.link", "square.link"}) {
        MoveTally t = move_invariance(fixture(name), kUp, 25, 6);
        bool good = t.trials == 25 && t.homology_equal == t.trials && t.round_trips == t.trials &&
                    t.transforms_equal == t.transforms_checked && t.first_failure.empty();
        ok &= good;
        detail << name << ": " << t.homology_equal << "/" << t.trials << " homology equal, "
               << t.transforms_equal << "/" << t.transforms_checked << " cube transforms; ";
        if (!good) detail << t.first_failure << "; ";
        for (auto [c, n] : t.cases) seen[c] += n;
    }
    // every vertex removal on the kink, in both orientations
    PolygonalLink kink = fixture("kink5.link");
    auto comps = kink.components();
    std::reverse(comps[0].begin(), comps[0].end());
    for (const PolygonalLink& k : {kink, PolygonalLink(comps)}) {
        Cube before = build_cube(build_good_diagram(k, kUp));
        for (Index p = 1; p <= static_cast<Index>(k.size()); ++p) {
            TriangleMove mv = classify_triangle_move(k, kUp, p);
            Cube after = build_cube(build_good_diagram(deform_remove_vertex(k, p), kUp));
            std::string why;
            bool same = matches_rebuilt(transform_cube(before, mv), after, &why) &&
                        homology(build_complex(before)) == homology(build_complex(after));
            if (!same) detail << "kink " << mv.log_line() << ": " << why << "; ";
            ok &= same;
            ++seen[move_case_name(mv.tag)];
        }
    }
    // the two-crossing finger move
    PolygonalLink finger = fixture("finger.link");
    TriangleMove cc = classify_triangle_move(finger, kUp, 7);
    auto kh = [](const PolygonalLink& l) { return homology(build_complex(build_cube(build_good_diagram(l, kUp)))); };
    bool cc_ok = cc.tag == MoveCase::CC && kh(finger) == kh(deform_remove_vertex(finger, 7));
    ok &= cc_ok;
    ++seen["CC"];
    detail << "cases";
    for (auto [c, n] : seen) detail << ' ' << c << ':' << n;
    return {ok, detail.str()};
}

Outcome refinement() {
    std::mt19937_64 rng(77);
    std::size_t done = 0, bad = 0, inserted = 0;
    while (done < 100) {
        auto link = random_link(rng, 16);
        if (!link) continue;
        ++done;
        try {
            Direction d = find_regular_direction(*link, rng());
            PolygonalLink good = refine_to_good(*link, d);
            inserted += good.size() - link->size();
            if (overloaded_edge(good, d) || !validate_link(good).empty()) ++bad;
        } catch (const std::exception&) {
            ++bad;
        }
    }
    return {bad == 0, std::to_string(done) + " links, " + std::to_string(bad) + " failures, " +
                          std::to_string(inserted) + " vertices inserted"};
}

// Random closed polygon whose good diagram has exactly k crossings.
Sample stress_sample(std::size_t k) {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> xy(-10, 10), z(-4, 4), size(9, 14);
    for (;;) {
        std::vector<Point3> pts;
        for (int s = size(rng); s > 0; --s) pts.push_back({Rational(xy(rng)), Rational(xy(rng)), Rational(z(rng))});
        PolygonalLink link({pts});
        if (!validate_link(link).empty() || !is_regular_direction(link, kUp).regular) continue;
        if (projected_crossings(link, make_chart(kUp)).size() != k) continue;
        PolygonalLink good = refine_to_good(link, kUp);
        return {good, kUp, build_good_diagram(good, kUp)};
    }
}

Outcome stress() {
    Sample s = stress_sample(12);
    auto t0 = std::chrono::steady_clock::now();
    Cube cube = build_cube(s.diagram);
    KhovanovComplex cx = build_complex(cube);
    HomologyTable h = homology(cx);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::size_t dim = 0;
    for (const auto& c : cx.columns) dim += c.basis.size();
    bool euler = euler_characteristic(h) == jones_state_sum(cube);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", secs);
    return {s.diagram.k() == 12 && euler && secs < 600,
            "k=" + std::to_string(s.diagram.k()) + ", n=" + std::to_string(s.diagram.n()) + ", chain rank " +
                std::to_string(dim) + ", " + std::to_string(h.size()) + " nonzero groups, Euler identity " +
                (euler ? "holds" : "fails") + ", homology in " + buf + " s"};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "trefoil crossing data", 1, trefoil_crossings},
        {2, "trefoil cube of permutations", 1, trefoil_cube},
        {3, "whitehead vertex 11011 and its group", 1, whitehead_vertex},
        {4, "theorem formulas equal the traced smoothings", 60, theorem_oracle},
        {5, "khovanov pipeline: d^2 = 0, Euler identity, trefoil table", 10, khovanov_pipeline},
        {6, "homology and cubes invariant under deformations", 60, move_invariance_fixtures},
        {7, "good-diagram refinement", 120, refinement},
        {8, "k = 12 homology stress run", 600, stress},
    };
    bool all = true;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = o.passed && secs < c.limit_s;
        all &= pass;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2fs < %.0fs", secs, c.limit_s);
        std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.title << " [" << timing
                  << "] " << o.detail << std::endl;
    }
    return all ? 0 : 1;
}
