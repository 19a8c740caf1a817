#include "polyknot/moves.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace polyknot {

const char* move_case_name(MoveCase c) {
    static const char* names[] = {"C1", "C2", "C3", "C4", "C5", "CA", "CB", "CC", "RIII"};
    return names[static_cast<int>(c)];
}

std::string TriangleMove::log_line() const {
    std::ostringstream out;
    out << move_case_name(tag) << ' ' << l << ' ' << p << ' ' << m;
    for (const auto& x : {a, b, c}) {
        if (x) out << ' ' << *x;
    }
    return out.str();
}

Index renumber_after_removal(Index x, Index p) { return x > p ? x - 1 : x; }

namespace {

Index restore_before_removal(Index x, Index p) { return x >= p ? x + 1 : x; }

// other edge (by start index) crossing the edge that starts at e, if any
std::optional<Index> crossing_partner(const GoodDiagram& d, Index e) {
    for (const auto& c : d.crossings()) {
        if (c.i == e) return c.v;
        if (c.v == e) return c.i;
    }
    return std::nullopt;
}

bool strictly_inside(const Point2& a, const Point2& b, const Point2& c, const Point2& x) {
    int s1 = sgn(cross(b - a, x - a)), s2 = sgn(cross(c - b, x - b)), s3 = sgn(cross(a - c, x - c));
    return s1 != 0 && s1 == s2 && s2 == s3;
}

}  // namespace

TriangleMove classify_triangle_move(const PolygonalLink& link, const Direction& dir, Index p) {
    if (p < 1 || p > static_cast<Index>(link.size())) throw std::out_of_range("vertex index out of range");
    GoodDiagram before = build_good_diagram(link, dir);
    PolygonalLink after_link = deform_remove_vertex(link, p);
    GoodDiagram after;
    try {
        after = build_good_diagram(after_link, dir);
    } catch (const DiagramError& ex) {
        throw MoveError(std::string("deformed diagram is not good, refine first: ") + ex.what());
    }
    TriangleMove mv{link.predecessor(p), p, link.successor(p), MoveCase::C1, {}, {}, {}};
    const Index l = mv.l, m = mv.m;

    std::vector<Index> inside;
    for (Index x = 1; x <= static_cast<Index>(before.n()); ++x) {
        if (x == l || x == p || x == m) continue;
        if (strictly_inside(before.vertex(l), before.vertex(p), before.vertex(m), before.vertex(x))) inside.push_back(x);
    }
    auto x_lp = crossing_partner(before, l);
    auto x_pm = crossing_partner(before, p);
    std::optional<Index> x_lm;
    if (auto e = crossing_partner(after, renumber_after_removal(l, p))) x_lm = restore_before_removal(*e, p);

    auto incident = [&](Index edge, Index x) { return edge == x || link.successor(edge) == x; };
    auto other_end = [&](Index edge, Index x) { return edge == x ? link.successor(edge) : edge; };
    auto unsupported = [&](const std::string& why) {
        return MoveError("unsupported triangle configuration at vertex " + std::to_string(p) + ": " + why);
    };

    if (inside.empty()) {
        if (!x_lp && !x_pm && !x_lm) return mv;
        if (x_lp && !x_pm && !x_lm) {
            if (*x_lp != m) throw unsupported("crossing on (l,p) with an edge not at m");
            mv.tag = MoveCase::C2;
            mv.a = link.successor(m);
            return mv;
        }
        if (!x_lp && x_pm && !x_lm) {
            if (link.successor(*x_pm) != l) throw unsupported("crossing on (p,m) with an edge not at l");
            mv.tag = MoveCase::C3;
            mv.a = *x_pm;
            return mv;
        }
        if (x_lp && !x_pm && x_lm && *x_lp == *x_lm) {
            mv.tag = MoveCase::C4;
            mv.a = *x_lp;
            mv.b = link.successor(*x_lp);
            return mv;
        }
        if (!x_lp && x_pm && x_lm && *x_pm == *x_lm) {
            mv.tag = MoveCase::C5;
            mv.a = *x_pm;
            mv.b = link.successor(*x_pm);
            return mv;
        }
        throw unsupported("crossing pattern on the triangle sides matches no case");
    }
    if (inside.size() == 1) {
        const Index a = inside.front();
        mv.a = a;
        const bool lp_a = x_lp && incident(*x_lp, a);
        const bool pm_a = x_pm && incident(*x_pm, a);
        const bool lm_a = x_lm && incident(*x_lm, a);
        if (!x_lm && (lp_a != pm_a) && (!x_lp || lp_a) && (!x_pm || pm_a)) {
            mv.tag = MoveCase::CA;
            mv.b = other_end(lp_a ? *x_lp : *x_pm, a);
            return mv;
        }
        if (lm_a && (lp_a != pm_a) && (!x_lp || lp_a) && (!x_pm || pm_a)) {
            mv.tag = MoveCase::CB;
            mv.b = other_end(lp_a ? *x_lp : *x_pm, a);
            mv.c = other_end(*x_lm, a);
            return mv;
        }
        if (!x_lm && lp_a && pm_a) {
            mv.tag = MoveCase::CC;
            mv.b = other_end(*x_lp, a);
            mv.c = other_end(*x_pm, a);
            return mv;
        }
        throw unsupported("one vertex inside the triangle, crossing pattern matches no case");
    }
    throw unsupported(std::to_string(inside.size()) + " vertices inside the triangle");
}

namespace {

Permutation cycle_perm(const Permutation& s, Index x) { return DihedralFactor{s.cycle_of(x)}.rotation(s.size()); }

Permutation oriented(const Permutation& s, Index from, Index to, const char* what) {
    if (s(from) == to) return s;
    if (s(to) == from) return reverse_cycle(s, from);
    throw MoveError(std::string("smoothing does not have the expected edge for ") + what);
}

}  // namespace

Permutation deformed_generator(const TriangleMove& mv, const Permutation& sigma) {
    const std::size_t n = sigma.size();
    auto T = [n](Index x, Index y) { return Permutation::transposition(n, x, y); };
    const Index l = mv.l, p = mv.p, m = mv.m;
    switch (mv.tag) {
        case MoveCase::C1: {
            Permutation lam = cycle_perm(sigma, l);
            if (lam(l) == p) return compose(lam, T(l, p));
            if (lam(m) == p) return compose(lam, T(m, p));
            throw MoveError("C1: p is not between l and m in the smoothing");
        }
        case MoveCase::C2:
        case MoveCase::C3: {
            // C3 is C2 with l and m exchanged
            const Index x = mv.tag == MoveCase::C2 ? l : m;
            const Index y = mv.tag == MoveCase::C2 ? m : l;
            const Index a = *mv.a;
            if (!sigma.same_cycle(x, y)) {
                Permutation s = oriented(sigma, x, a, "the merged circle");
                Permutation both = compose(cycle_perm(s, x), cycle_perm(s, y));
                Permutation r = compose(T(a, p), compose(both, T(x, p)));
                return cycle_perm(r, x);
            }
            Permutation s = oriented(sigma, x, y, "the kink circle");
            return compose(conjugate(cycle_perm(s, x), T(y, p)), T(x, p));
        }
        case MoveCase::C4:
        case MoveCase::C5: {
            const Index x = mv.tag == MoveCase::C4 ? m : l;
            if (sigma(p) == x) return compose(T(x, p), sigma);
            if (sigma(x) == p) return compose(sigma, T(x, p));
            throw MoveError("p is not adjacent to its intact neighbour in the smoothing");
        }
        default:
            throw MoveError(std::string("case ") + move_case_name(mv.tag) +
                            " has no closed formula; apply the move and recompute the cube");
    }
}

std::optional<CrossingRecord> transport_crossing(const TriangleMove& mv, const CrossingRecord& c) {
    const Index l = mv.l, p = mv.p, m = mv.m;
    if (mv.tag == MoveCase::C2 && (c.i == l || c.v == l)) return std::nullopt;
    if (mv.tag == MoveCase::C3 && (c.i == p || c.v == p)) return std::nullopt;
    CrossingRecord out = c;
    for (Index* x : {&out.i, &out.j, &out.v, &out.w}) {
        if (*x == p) {
            if (mv.tag == MoveCase::C4) {
                *x = m;
            } else if (mv.tag == MoveCase::C5) {
                *x = l;
            } else {
                throw MoveError("crossing uses the removed vertex");
            }
        }
        *x = renumber_after_removal(*x, p);
    }
    return out;
}

namespace {

Permutation drop_vertex(const Permutation& s, Index p) {
    if (s(p) != p) throw MoveError("removed vertex is not fixed");
    std::vector<Index> im;
    for (Index x = 1; x <= static_cast<Index>(s.size()); ++x) {
        if (x != p) im.push_back(renumber_after_removal(s(x), p));
    }
    return Permutation(std::move(im));
}

}  // namespace

TransformedCube transform_cube(const Cube& cube, const TriangleMove& mv) {
    const GoodDiagram& d = cube.diagram;
    const std::size_t k = d.k();
    const Index l = mv.l, p = mv.p, m = mv.m;
    const std::size_t n = d.n();
    auto T = [n](Index x, Index y) { return Permutation::transposition(n, x, y); };
    auto recompute = [](const std::string& why) {
        return MoveError("recompute cube from deformed diagram: " + why);
    };

    if (mv.tag != MoveCase::C1 && mv.tag != MoveCase::C2 && mv.tag != MoveCase::C3 && mv.tag != MoveCase::C4 &&
        mv.tag != MoveCase::C5) {
        throw recompute(std::string("case ") + move_case_name(mv.tag) + " has no closed transformation");
    }

    TransformedCube out;
    out.n = n - 1;
    std::vector<std::pair<CrossingRecord, std::size_t>> moved;
    std::size_t lost = 0;
    for (std::size_t t = 1; t <= k; ++t) {
        auto c = transport_crossing(mv, d.crossing(t));
        if (c) {
            moved.emplace_back(*c, t);
        } else {
            lost = t;
        }
    }
    std::stable_sort(moved.begin(), moved.end(), [](const auto& a, const auto& b) { return a.first.i < b.first.i; });
    for (auto& [c, t] : moved) {
        out.crossings.push_back(c);
        out.source_crossing.push_back(t);
    }
    const std::size_t k2 = moved.size();

    // sigma of the deformed vertex, given the original vertex index
    std::function<Permutation(const Permutation&)> update;
    int keep_letter = -1;
    switch (mv.tag) {
        case MoveCase::C1:
            update = [&](const Permutation& s) {
                Permutation o = s;
                if (!(o(l) == p && o(p) == m)) {
                    if (o(m) == p && o(p) == l) {
                        o = reverse_cycle(o, l);
                    } else {
                        throw recompute("a smoothing does not pass l, p, m in sequence");
                    }
                }
                return compose(o, T(l, p));
            };
            out.provenance.push_back("clause 1: sigma <l,p> at every vertex, l=" + std::to_string(l) +
                                     " p=" + std::to_string(p));
            break;
        case MoveCase::C4:
        case MoveCase::C5:
            update = [&](const Permutation& s) { return deformed_generator(mv, s); };
            out.provenance.push_back(std::string("per-vertex left or right multiplication by <") +
                                     (mv.tag == MoveCase::C4 ? "m" : "l") + ",p>");
            break;
        case MoveCase::C2:
        case MoveCase::C3: {
            const Index x = mv.tag == MoveCase::C2 ? l : m;
            const Index y = mv.tag == MoveCase::C2 ? m : l;
            const std::uint32_t bit = 1u << (k - lost);
            auto bigon = [&](const Permutation& s) { return s(y) == p && s(p) == y; };
            for (int rho = 0; rho < 2 && keep_letter < 0; ++rho) {
                bool all = true;
                for (std::uint32_t v = 0; v < cube.vertices.size() && all; ++v) {
                    if (((v & bit) != 0) == (rho == 1)) all = bigon(cube.vertices[v].sigma);
                }
                if (all) keep_letter = 1 - rho;
            }
            if (keep_letter < 0) throw recompute("no half-cube carries the bigon");
            update = [&, x, y](const Permutation& s) {
                Permutation o = s;
                if (!(o(x) == y && o(y) == p)) {
                    if (o(p) == y && o(y) == x) {
                        o = reverse_cycle(o, x);
                    } else {
                        throw recompute("a smoothing off the bigon half does not pass the kink in sequence");
                    }
                }
                return compose(o, T(y, p));
            };
            out.provenance.push_back("clause 2: crossing " + std::to_string(lost) + " removed, letter " +
                                     std::to_string(keep_letter) + " kept, sigma <" + std::to_string(y) + "," +
                                     std::to_string(p) + "> on that half");
            break;
        }
        default:
            throw recompute(std::string("case ") + move_case_name(mv.tag));
    }

    out.words.resize(std::size_t{1} << k2);
    out.sigmas.resize(out.words.size());
    for (std::uint32_t v2 = 0; v2 < out.words.size(); ++v2) {
        std::uint32_t v = 0;
        for (std::size_t t = 1; t <= k2; ++t) {
            if (v2 >> (k2 - t) & 1u) v |= 1u << (k - out.source_crossing[t - 1]);
        }
        if (keep_letter == 1) v |= 1u << (k - lost);
        out.words[v2] = word_from_index(v2, k2);
        out.sigmas[v2] = drop_vertex(update(cube.vertices[v].sigma), p);
    }
    return out;
}

bool matches_rebuilt(const TransformedCube& tc, const Cube& rebuilt, std::string* why) {
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    const auto& rc = rebuilt.diagram.crossings();
    if (rc.size() != tc.crossings.size()) return fail("crossing counts differ");
    for (std::size_t t = 0; t < rc.size(); ++t) {
        const auto& a = rc[t];
        const auto& b = tc.crossings[t];
        if (a.i != b.i || a.j != b.j || a.v != b.v || a.w != b.w || a.sign != b.sign) {
            return fail("crossing " + std::to_string(t + 1) + " differs");
        }
    }
    for (std::size_t v = 0; v < tc.sigmas.size(); ++v) {
        if (cycle_partition(tc.sigmas[v]) != cycle_partition(rebuilt.vertices[v].sigma)) {
            return fail("vertex " + tc.words[v] + ": " + tc.sigmas[v].to_string() + " vs " +
                        rebuilt.vertices[v].sigma.to_string());
        }
    }
    return true;
}

std::array<IndexQuadruple, 3> riii_relabel(const std::array<IndexQuadruple, 3>& t) {
    const auto& [c1, c2, c3] = t;
    if (c1.j != c2.i || c1.v != c3.j || c2.w != c3.v) {
        throw MoveError("crossing triple does not match the Reidemeister III pattern");
    }
    return {IndexQuadruple{c1.i, c1.j, c3.v, c3.w}, IndexQuadruple{c2.i, c2.j, c3.i, c3.j},
            IndexQuadruple{c1.v, c1.w, c2.v, c2.w}};
}

std::array<IndexQuadruple, 3> riii_unrelabel(const std::array<IndexQuadruple, 3>& t) {
    const auto& [r1, r2, r3] = t;
    if (r1.j != r2.i || r1.v != r3.w || r2.w != r3.i) {
        throw MoveError("crossing triple does not match the relabelled Reidemeister III pattern");
    }
    return {IndexQuadruple{r1.i, r1.j, r3.i, r3.j}, IndexQuadruple{r2.i, r2.j, r3.v, r3.w},
            IndexQuadruple{r2.v, r2.w, r1.v, r1.w}};
}

PolygonalLink move_vertex(const PolygonalLink& link, Index x, const Point3& target) {
    PolygonalLink grown = deform_add_vertex(link, x, target);
    return deform_remove_vertex(grown, x);
}

}  // namespace polyknot
