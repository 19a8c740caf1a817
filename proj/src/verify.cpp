#include "polyknot/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace polyknot {

bool VerifyReport::ok() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.passed; });
}

std::string VerifyReport::to_text() const {
    std::ostringstream out;
    for (const auto& p : properties) {
        out << (p.passed ? "PASS" : "FAIL") << '\t' << p.name << '\t' << p.detail << '\n';
    }
    out << (ok() ? "all properties hold" : "property failure") << '\n';
    return out.str();
}

std::string VerifyReport::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& p : properties) rows.push_back({{"name", p.name}, {"passed", p.passed}, {"detail", p.detail}});
    return nlohmann::json{{"ok", ok()}, {"properties", rows}}.dump(2) + "\n";
}

PreparedLink prepare(const PolygonalLink& link, std::optional<Direction> dir, std::uint64_t seed) {
    Direction d = dir ? *dir : find_regular_direction(link, seed);
    if (!is_regular_direction(link, d).regular) throw GeometryError("direction " + d.to_string() + " is not regular");
    PolygonalLink good = refine_to_good(link, d);
    GoodDiagram diagram = build_good_diagram(good, d);
    return {std::move(good), d, std::move(diagram)};
}

std::vector<std::vector<std::size_t>> resolution_orders(std::size_t k, std::size_t count, std::uint64_t seed) {
    std::vector<std::size_t> base(k);
    std::iota(base.begin(), base.end(), 1);
    std::vector<std::vector<std::size_t>> out;
    if (k <= 4) {
        do out.push_back(base);
        while (std::next_permutation(base.begin(), base.end()));
        return out;
    }
    out.push_back(base);
    std::mt19937_64 rng(seed);
    while (out.size() < count) {
        std::shuffle(base.begin(), base.end(), rng);
        out.push_back(base);
    }
    return out;
}

namespace {

Rational random_offset(std::mt19937_64& rng) {
    static const long dens[] = {1, 2, 4, 8};
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<int> den(0, 3);
    return Rational(num(rng), dens[den(rng)]);
}

bool good_along(const PolygonalLink& link, const Direction& dir) {
    if (!validate_link(link).empty()) return false;
    if (!is_regular_direction(link, dir).regular) return false;
    return !overloaded_edge(link, dir).has_value();
}

}  // namespace

std::optional<Deformation> random_deformation(const PolygonalLink& link, const Direction& dir, std::mt19937_64& rng,
                                              std::size_t attempts) {
    const Index n = static_cast<Index>(link.size());
    std::uniform_int_distribution<Index> vertex(1, n);
    std::bernoulli_distribution remove(0.3);
    for (std::size_t t = 0; t < attempts; ++t) {
        try {
            if (remove(rng)) {
                Index p = vertex(rng);
                if (link.components()[link.component_of(p)].size() < 4) continue;
                PolygonalLink after = deform_remove_vertex(link, p);
                if (!good_along(after, dir)) continue;
                TriangleMove mv = classify_triangle_move(link, dir, p);
                return Deformation{link, std::move(after), mv, false};
            }
            Index e = vertex(rng);
            const Point3& a = link.point(e);
            const Point3& b = link.point(link.successor(e));
            Point3 apex = Rational(1, 2) * (a + b) + Point3{random_offset(rng), random_offset(rng), random_offset(rng)};
            PolygonalLink grown = deform_add_vertex(link, e, apex);
            if (!good_along(grown, dir)) continue;
            TriangleMove mv = classify_triangle_move(grown, dir, e + 1);
            return Deformation{std::move(grown), link, mv, true};
        } catch (const std::exception&) {
            continue;
        }
    }
    return std::nullopt;
}

MoveTally move_invariance(const PolygonalLink& link, const Direction& dir, std::size_t trials, std::uint64_t seed) {
    MoveTally tally;
    std::mt19937_64 rng(seed);
    const GoodDiagram base_diagram = build_good_diagram(link, dir);
    const Cube base_cube = build_cube(base_diagram);
    const HomologyTable base = homology(build_complex(base_cube));
    auto note = [&](const std::string& s) {
        if (tally.first_failure.empty()) tally.first_failure = s;
    };
    for (std::size_t t = 0; t < trials; ++t) {
        auto def = random_deformation(link, dir, rng);
        if (!def) {
            note("trial " + std::to_string(t) + ": no admissible deformation found");
            continue;
        }
        ++tally.trials;
        ++tally.cases[move_case_name(def->move.tag)];
        const PolygonalLink& other = def->added ? def->before : def->after;
        const Cube before_cube = def->added ? build_cube(build_good_diagram(def->before, dir)) : base_cube;
        const Cube after_cube = def->added ? base_cube : build_cube(build_good_diagram(def->after, dir));
        const Cube& other_cube = def->added ? before_cube : after_cube;
        if (homology(build_complex(other_cube)) == base) {
            ++tally.homology_equal;
        } else {
            note("trial " + std::to_string(t) + ": homology changed under " + def->move.log_line());
        }
        if (def->added) {
            if (deform_remove_vertex(other, def->move.p) == link) {
                ++tally.round_trips;
            } else {
                note("trial " + std::to_string(t) + ": removing the inserted vertex did not restore the link");
            }
        } else {
            ++tally.round_trips;
        }
        const MoveCase c = def->move.tag;
        if (c == MoveCase::C1 || c == MoveCase::C2 || c == MoveCase::C3 || c == MoveCase::C4 || c == MoveCase::C5) {
            ++tally.transforms_checked;
            std::string why;
            try {
                if (matches_rebuilt(transform_cube(before_cube, def->move), after_cube, &why)) {
                    ++tally.transforms_equal;
                } else {
                    note("trial " + std::to_string(t) + ": transformed cube differs (" + why + ") under " +
                         def->move.log_line());
                }
            } catch (const std::exception& ex) {
                note("trial " + std::to_string(t) + ": " + ex.what() + " under " + def->move.log_line());
            }
        }
    }
    return tally;
}

VerifyReport run_verify(const PolygonalLink& input, const VerifyOptions& opts) {
    VerifyReport rep;
    auto add = [&](std::string name, bool ok, std::string detail) {
        rep.properties.push_back({std::move(name), ok, std::move(detail)});
    };
    auto issues = validate_link(input);
    add("link-valid", issues.empty(), issues.empty() ? "" : issues.front().message);
    if (!issues.empty()) return rep;

    std::optional<PreparedLink> prep;
    try {
        prep = prepare(input, opts.dir, opts.seed);
        add("good-diagram", true,
            "dir " + prep->dir.to_string() + ", n=" + std::to_string(prep->diagram.n()) +
                ", k=" + std::to_string(prep->diagram.k()));
    } catch (const std::exception& ex) {
        add("good-diagram", false, ex.what());
        return rep;
    }
    const GoodDiagram& d = prep->diagram;
    const std::size_t k = d.k();

    // theorem against trace, every order, plus path independence
    std::optional<Cube> canonical;
    {
        bool ok = true;
        std::string detail;
        std::size_t steps = 0;
        bool paths_ok = true;
        std::string path_detail;
        try {
            for (const auto& order : resolution_orders(k, 10, opts.seed)) {
                Cube c = build_cube(d, order);
                steps += c.stats.steps;
                if (!canonical) {
                    canonical = std::move(c);
                    continue;
                }
                for (std::size_t v = 0; v < c.vertices.size() && paths_ok; ++v) {
                    if (cycle_partition(c.vertices[v].sigma) != cycle_partition(canonical->vertices[v].sigma)) {
                        paths_ok = false;
                        path_detail = "vertex " + c.vertices[v].word + " differs between orders";
                    }
                }
            }
            detail = k == 0 ? "vacuous: no crossings" : std::to_string(steps) + " steps agree";
        } catch (const TheoremMismatch& ex) {
            ok = false;
            detail = ex.what();
        }
        add("theorem-vs-trace", ok, detail);
        if (!ok) return rep;
        add("path-independence", paths_ok, paths_ok ? (k == 0 ? "vacuous: no crossings" : "") : path_detail);
    }
    const Cube& cube = *canonical;

    {
        PairSummary s = resolution_pair_sweep(d);
        add("resolution-pair-relations", s.failures == 0,
            s.failures ? s.first_failure : std::to_string(s.evaluated) + " evaluated");
    }
    {
        // both readings of the exponent in the backward-backward distinct-cycle case
        std::size_t seen = 0, omega = 0, eps = 0;
        std::function<void(const SmoothingState&, std::size_t)> walk = [&](const SmoothingState& s, std::size_t depth) {
            if (depth == k) return;
            std::size_t l = cube.order[depth];
            for (int ch = 0; ch < 2; ++ch) {
                auto a = smooth_crossing_theorem(d, s, l, ch, ExponentReading::Omega);
                auto tr = smooth_crossing_trace(d, s, l, ch);
                if (a.tag == TheoremCase::BackBackDistinctCycles) {
                    ++seen;
                    omega += a.state.sigma == tr.sigma;
                    eps += smooth_crossing_theorem(d, s, l, ch, ExponentReading::EpsilonPower).state.sigma == tr.sigma;
                }
                walk(tr, depth + 1);
            }
        };
        if (k <= 12) walk(initial_state(d), 0);
        add("exponent-reading", omega == seen,
            std::to_string(seen) + " distinct-cycle steps; omega reading matches " + std::to_string(omega) +
                ", epsilon-power reading matches " + std::to_string(eps));
    }
    {
        std::size_t bad = 0;
        std::string first;
        for (const auto& e : cube.edges) {
            auto r = edge_relations(cube, e);
            if (!r.consistent()) {
                if (bad++ == 0) first = "edge " + e.star_word + " (" + r.subcase + ")";
            }
        }
        add("edge-relations", bad == 0, bad ? first : std::to_string(cube.edges.size()) + " edges");
    }

    KhovanovComplex cx = build_complex(cube, opts.variant);
    bool d2 = d_squared_zero(cx);
    add("d-squared-zero", d2, "");
    std::string face = first_commuting_face(cube);
    add("faces-anticommute", opts.variant != Frobenius::Standard || face.empty(), face);
    if (!d2) {
        add("euler-identity", false, "not established: homology undefined since d^2 != 0");
        return rep;
    }

    HomologyTable h = homology(cx);
    LaurentPoly J = jones_state_sum(cube);
    LaurentPoly chi = euler_characteristic(h);
    bool euler = chi == J && chain_euler_characteristic(cx) == J;
    add("euler-identity", euler, "J=" + J.to_string() + (euler ? "" : ", chi=" + chi.to_string()));
    add("parallel-agreement", homology_serial(cx) == h && [&] {
        Cube s = build_cube_serial(d);
        for (std::size_t v = 0; v < s.vertices.size(); ++v) {
            if (!(s.vertices[v].sigma == cube.vertices[v].sigma)) return false;
        }
        return true;
    }(), "");

    if (opts.trials > 0) {
        MoveTally t = move_invariance(prep->link, prep->dir, opts.trials, opts.seed);
        std::string cases;
        for (const auto& [c, count] : t.cases) cases += (cases.empty() ? "" : ",") + c + ":" + std::to_string(count);
        bool ok = t.first_failure.empty() && t.homology_equal == t.trials && t.transforms_equal == t.transforms_checked;
        add("move-invariance", ok,
            ok ? std::to_string(t.trials) + " moves [" + cases + "], " + std::to_string(t.transforms_checked) +
                     " cube transforms"
               : t.first_failure);
    }
    return rep;
}

}  // namespace polyknot
