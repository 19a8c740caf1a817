#include "polyknot/cube.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace polyknot {

std::string SmoothingState::word_string() const {
    std::string s;
    for (auto c : word) s += static_cast<char>('0' + c);
    return s;
}

std::size_t SmoothingState::ones() const { return static_cast<std::size_t>(std::count(word.begin(), word.end(), 1)); }

SmoothingState initial_state(const GoodDiagram& diagram) {
    return {std::vector<std::uint8_t>(diagram.k(), 2), diagram.successor_permutation()};
}

std::array<std::pair<Index, Index>, 2> joined_pairs(const CrossingRecord& c, int choice) {
    if ((c.sign > 0) == (choice == 1)) return {{{c.i, c.v}, {c.j, c.w}}};
    return {{{c.i, c.w}, {c.j, c.v}}};
}

std::vector<std::pair<std::size_t, std::array<std::pair<Index, Index>, 2>>> resolved_edges(
    const GoodDiagram& diagram, const SmoothingState& state) {
    std::vector<std::pair<std::size_t, std::array<std::pair<Index, Index>, 2>>> out;
    for (std::size_t l = 1; l <= state.word.size(); ++l) {
        if (state.word[l - 1] != 2) out.emplace_back(l, joined_pairs(diagram.crossing(l), state.word[l - 1]));
    }
    return out;
}

namespace {

void require_unresolved(const SmoothingState& state, std::size_t l, int choice) {
    if (l < 1 || l > state.word.size()) throw std::out_of_range("crossing index out of range");
    if (state.word[l - 1] != 2) throw std::invalid_argument("crossing " + std::to_string(l) + " is already resolved");
    if (choice != 0 && choice != 1) throw std::invalid_argument("smoothing choice must be 0 or 1");
}

void drop_one(std::vector<Index>& list, Index x) {
    auto it = std::find(list.begin(), list.end(), x);
    if (it == list.end()) throw std::logic_error("smoothing graph lost an edge");
    list.erase(it);
}

}  // namespace

SmoothingState smooth_crossing_trace(const GoodDiagram& diagram, const SmoothingState& state, std::size_t l,
                                     int choice) {
    require_unresolved(state, l, choice);
    const auto& c = diagram.crossing(l);
    const Permutation& sigma = state.sigma;
    const std::size_t n = sigma.size();
    const Permutation sigma_inv = inverse(sigma);

    std::vector<std::vector<Index>> adj(n + 1);
    for (Index x = 1; x <= static_cast<Index>(n); ++x) adj[x] = {sigma(x), sigma_inv(x)};
    auto unlink = [&](Index a, Index b) {
        drop_one(adj[a], b);
        drop_one(adj[b], a);
    };
    unlink(c.i, c.j);
    unlink(c.v, c.w);
    std::vector<Index> partner(n + 1, 0);
    for (auto [a, b] : joined_pairs(c, choice)) {
        adj[a].push_back(b);
        adj[b].push_back(a);
        partner[a] = b;
        partner[b] = a;
    }

    std::vector<Index> next(n + 1, 0);
    auto walk = [&](Index start, Index second) {
        next[start] = second;
        Index prev = start, cur = second;
        while (cur != start) {
            std::vector<Index> rest = adj[cur];
            drop_one(rest, prev);
            next[cur] = rest.front();
            prev = cur;
            cur = rest.front();
        }
    };
    auto other_than_partner = [&](Index x) {
        std::vector<Index> rest = adj[x];
        drop_one(rest, partner[x]);
        return rest.front();
    };

    if (sigma(c.i) == c.j) {
        walk(c.i, partner[c.i]);
    } else {
        walk(c.i, other_than_partner(c.i));
    }
    if (next[c.v] == 0) {
        if (sigma(c.v) == c.w) {
            walk(c.v, partner[c.v]);
        } else {
            walk(c.v, other_than_partner(c.v));
        }
    }
    auto special = [&](Index x) { return x == c.i || x == c.j || x == c.v || x == c.w; };
    for (Index x = 1; x <= static_cast<Index>(n); ++x) {
        if (next[x] != 0) continue;
        std::vector<Index> comp{x};
        std::vector<bool> seen(n + 1, false);
        seen[x] = true;
        for (std::size_t t = 0; t < comp.size(); ++t) {
            for (Index y : adj[comp[t]]) {
                if (!seen[y]) {
                    seen[y] = true;
                    comp.push_back(y);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        auto it = std::find_if(comp.begin(), comp.end(), [&](Index y) { return !special(y); });
        if (it != comp.end()) {
            walk(*it, sigma(*it));
        } else {
            walk(comp.front(), adj[comp.front()].front());
        }
    }

    SmoothingState out{state.word, Permutation(std::vector<Index>(next.begin() + 1, next.end()))};
    out.word[l - 1] = static_cast<std::uint8_t>(choice);
    return out;
}

const char* theorem_case_name(TheoremCase c) {
    static const char* names[] = {"ff-compose", "ff-same-cycle", "ff-distinct-cycles",
                                  "fb-compose", "fb-same-cycle", "fb-distinct-cycles",
                                  "bf-compose", "bf-same-cycle", "bf-distinct-cycles",
                                  "bb-compose", "bb-same-cycle", "bb-distinct-cycles"};
    return names[static_cast<int>(c)];
}

TheoremStep smooth_crossing_theorem(const GoodDiagram& diagram, const SmoothingState& state, std::size_t l,
                                    int choice, ExponentReading reading) {
    require_unresolved(state, l, choice);
    const auto& c = diagram.crossing(l);
    const Permutation& s = state.sigma;
    const std::size_t n = s.size();
    auto T = [n](Index x, Index y) { return Permutation::transposition(n, x, y); };
    // v^eps is choice 0 for a positive crossing, 1 for a negative one
    const int pos_choice = c.sign > 0 ? 0 : 1;
    const int neg_choice = 1 - pos_choice;
    const bool same = s.same_cycle(c.i, c.v);

    auto done = [&](Permutation p, TheoremCase tag) {
        TheoremStep step{{state.word, std::move(p)}, tag};
        step.state.word[l - 1] = static_cast<std::uint8_t>(choice);
        return step;
    };

    if (s(c.i) == c.j && s(c.v) == c.w) {
        Permutation a = compose(T(c.j, c.w), s);
        if (choice == pos_choice) return done(a, TheoremCase::FwdFwdCompose);
        if (same) return done(conjugate(s, reflection_xi(a, c.j, c.v)), TheoremCase::FwdFwdSameCycle);
        return done(conjugate(a, reflection_xi(s, c.v, c.w)), TheoremCase::FwdFwdDistinctCycles);
    }
    if (s(c.i) == c.j && s(c.w) == c.v) {
        Permutation a = compose(T(c.j, c.v), s);
        if (choice == neg_choice) return done(a, TheoremCase::FwdBackCompose);
        if (same) return done(conjugate(s, reflection_xi(a, c.j, c.w)), TheoremCase::FwdBackSameCycle);
        return done(conjugate(a, reflection_xi(s, c.v, c.w)), TheoremCase::FwdBackDistinctCycles);
    }
    if (s(c.j) == c.i && s(c.v) == c.w) {
        Permutation a = compose(s, T(c.j, c.v));
        if (choice == neg_choice) return done(a, TheoremCase::BackFwdCompose);
        if (same) return done(conjugate(s, reflection_xi(a, c.j, c.w)), TheoremCase::BackFwdSameCycle);
        return done(conjugate(a, reflection_xi(s, c.v, c.w)), TheoremCase::BackFwdDistinctCycles);
    }
    if (s(c.j) == c.i && s(c.w) == c.v) {
        Permutation a = compose(s, T(c.j, c.w));
        if (choice == pos_choice) return done(a, TheoremCase::BackBackCompose);
        if (same) return done(conjugate(s, reflection_xi(a, c.j, c.v)), TheoremCase::BackBackSameCycle);
        const Permutation base = (reading == ExponentReading::EpsilonPower && c.sign < 0) ? inverse(s) : s;
        return done(conjugate(compose(base, T(c.j, c.w)), reflection_xi(s, c.v, c.w)),
                    TheoremCase::BackBackDistinctCycles);
    }
    throw std::logic_error("crossing " + std::to_string(l) + ": original edges are not intact in state " +
                           state.word_string());
}

std::string word_from_index(std::uint32_t index, std::size_t k) {
    std::string s(k, '0');
    for (std::size_t l = 1; l <= k; ++l) {
        if (index >> (k - l) & 1u) s[l - 1] = '1';
    }
    return s;
}

std::uint32_t Cube::vertex_index(const std::string& word) const {
    if (word.size() != k()) throw std::invalid_argument("word length must equal the crossing count");
    std::uint32_t idx = 0;
    for (char ch : word) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("cube words use letters 0 and 1");
        idx = (idx << 1) | static_cast<std::uint32_t>(ch - '0');
    }
    return idx;
}

const CubeVertex& Cube::vertex(const std::string& word) const { return vertices.at(vertex_index(word)); }

std::vector<DihedralFactor> vertex_group(const Permutation& sigma) {
    std::vector<DihedralFactor> out;
    for (auto& c : cycle_decomposition(sigma)) out.push_back(DihedralFactor{std::move(c)});
    return out;
}

std::vector<DihedralFactor> vertex_group(const SmoothingState& state) {
    if (std::find(state.word.begin(), state.word.end(), 2) != state.word.end()) {
        throw std::invalid_argument("vertex_group needs a full smoothing");
    }
    return vertex_group(state.sigma);
}

namespace {

struct Walker {
    const GoodDiagram& diagram;
    const std::vector<std::size_t>& order;
    std::vector<Permutation>& leaves;
    CubeStats stats;

    SmoothingState resolve(const SmoothingState& s, std::size_t l, int choice) {
        TheoremStep th = smooth_crossing_theorem(diagram, s, l, choice);
        SmoothingState tr = smooth_crossing_trace(diagram, s, l, choice);
        if (!(th.state.sigma == tr.sigma)) {
            throw TheoremMismatch("state " + s.word_string() + " sigma " + s.sigma.to_string() + ", crossing " +
                                  std::to_string(l) + ", choice " + std::to_string(choice) + ", case " +
                                  theorem_case_name(th.tag) + ": theorem gives " + th.state.sigma.to_string() +
                                  ", trace gives " + tr.sigma.to_string());
        }
        ++stats.cases[static_cast<std::size_t>(th.tag)];
        ++stats.steps;
        return tr;
    }

    void descend(const SmoothingState& s, std::size_t depth, std::uint32_t mask) {
        const std::size_t k = diagram.k();
        if (depth == k) {
            leaves[mask] = s.sigma;
            return;
        }
        std::size_t l = order[depth];
        for (int choice = 0; choice < 2; ++choice) {
            descend(resolve(s, l, choice), depth + 1, mask | (static_cast<std::uint32_t>(choice) << (k - l)));
        }
    }
};

std::vector<std::size_t> normalize_order(const GoodDiagram& diagram, std::vector<std::size_t> order) {
    const std::size_t k = diagram.k();
    if (k > 24) throw std::invalid_argument("too many crossings for a full cube");
    if (order.empty()) {
        order.resize(k);
        std::iota(order.begin(), order.end(), 1);
    }
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t t = 0; t < sorted.size(); ++t) {
        if (sorted.size() != k || sorted[t] != t + 1) {
            throw std::invalid_argument("resolution order must be a permutation of 1..k");
        }
    }
    return order;
}

Cube assemble(const GoodDiagram& diagram, std::vector<std::size_t> order, std::vector<Permutation> leaves,
              CubeStats stats) {
    Cube cube{diagram, std::move(order), {}, {}, stats};
    const std::size_t k = diagram.k();
    const std::uint32_t count = 1u << k;
    cube.vertices.resize(count);
    for (std::uint32_t v = 0; v < count; ++v) {
        auto& cv = cube.vertices[v];
        cv.word = word_from_index(v, k);
        cv.sigma = std::move(leaves[v]);
        cv.circles = cv.sigma.cycle_count();
        cv.groups = vertex_group(cv.sigma);
    }
    for (std::uint32_t v = 0; v < count; ++v) {
        for (std::size_t l = 1; l <= k; ++l) {
            std::uint32_t bit = 1u << (k - l);
            if (v & bit) continue;
            CubeEdge e{v, v | bit, l, cube.vertices[v].word, EdgeKind::Merge, 1};
            e.star_word[l - 1] = '*';
            std::size_t ct = cube.vertices[v].circles, ch = cube.vertices[v | bit].circles;
            if (ch + 1 == ct) {
                e.kind = EdgeKind::Merge;
            } else if (ch == ct + 1) {
                e.kind = EdgeKind::Split;
            } else {
                throw std::logic_error("cube edge " + e.star_word + " changes the circle count by other than 1");
            }
            e.sign = (std::popcount(v >> (k - l + 1)) % 2) ? -1 : 1;
            cube.edges.push_back(std::move(e));
        }
    }
    return cube;
}

}  // namespace

Cube build_cube_serial(const GoodDiagram& diagram, std::vector<std::size_t> order) {
    order = normalize_order(diagram, std::move(order));
    std::vector<Permutation> leaves(std::size_t{1} << diagram.k());
    Walker w{diagram, order, leaves, {}};
    w.descend(initial_state(diagram), 0, 0);
    return assemble(diagram, std::move(order), std::move(leaves), w.stats);
}

Cube build_cube(const GoodDiagram& diagram, std::vector<std::size_t> order) {
    order = normalize_order(diagram, std::move(order));
    const std::size_t k = diagram.k();
    std::vector<Permutation> leaves(std::size_t{1} << k);

    // Split the choice tree at a fixed depth; each subtree owns its states.
    std::size_t depth = 0;
    const std::size_t want = static_cast<std::size_t>(4 * omp_get_max_threads());
    while (depth < k && (std::size_t{1} << depth) < want) ++depth;

    Walker root{diagram, order, leaves, {}};
    std::vector<std::pair<SmoothingState, std::uint32_t>> frontier{{initial_state(diagram), 0}};
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<std::pair<SmoothingState, std::uint32_t>> deeper;
        std::size_t l = order[d];
        for (const auto& [s, mask] : frontier) {
            for (int choice = 0; choice < 2; ++choice) {
                deeper.emplace_back(root.resolve(s, l, choice), mask | (static_cast<std::uint32_t>(choice) << (k - l)));
            }
        }
        frontier = std::move(deeper);
    }

    std::vector<CubeStats> part(frontier.size());
    std::string error;
    bool mismatch = false;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t t = 0; t < frontier.size(); ++t) {
        Walker w{diagram, order, leaves, {}};
        try {
            w.descend(frontier[t].first, depth, frontier[t].second);
        } catch (const std::exception& ex) {
#pragma omp critical
            {
                if (error.empty()) {
                    error = ex.what();
                    mismatch = dynamic_cast<const TheoremMismatch*>(&ex) != nullptr;
                }
            }
        }
        part[t] = w.stats;
    }
    if (!error.empty()) {
        if (mismatch) throw TheoremMismatch(error);
        throw std::runtime_error(error);
    }
    CubeStats stats = root.stats;
    for (const auto& p : part) {
        for (std::size_t c = 0; c < kTheoremCaseCount; ++c) stats.cases[c] += p.cases[c];
        stats.steps += p.steps;
    }
    return assemble(diagram, std::move(order), std::move(leaves), stats);
}

const char* relation_status_name(RelationStatus s) {
    switch (s) {
        case RelationStatus::Holds: return "holds";
        case RelationStatus::Fails: return "fails";
        case RelationStatus::Undefined: return "undefined";
    }
    return "";
}

bool RelationReport::consistent() const {
    if ((kind == EdgeKind::Merge) != tail_ij_distinct) return false;
    return std::none_of(checks.begin(), checks.end(),
                        [](const RelationCheck& c) { return c.status == RelationStatus::Fails; });
}

namespace {

using MaybePerm = std::optional<Permutation>;

MaybePerm lambda_of(const Permutation& s, Index x, Index y) {
    if (!s.same_cycle(x, y)) return std::nullopt;
    return DihedralFactor{s.cycle_of(x)}.rotation(s.size());
}

MaybePerm xi_of(const Permutation& s, Index x, Index y) {
    if (x == y || !s.same_cycle(x, y)) return std::nullopt;
    return reflection_xi(s, x, y);
}

MaybePerm mul(const MaybePerm& a, const MaybePerm& b) {
    if (!a || !b) return std::nullopt;
    return compose(*a, *b);
}

MaybePerm conj(const MaybePerm& a, const MaybePerm& g) {
    if (!a || !g) return std::nullopt;
    return conjugate(*a, *g);
}

RelationCheck relation(std::string name, const MaybePerm& lhs, const MaybePerm& rhs) {
    RelationCheck c{std::move(name), RelationStatus::Undefined, lhs ? lhs->to_string() : "-",
                    rhs ? rhs->to_string() : "-"};
    if (lhs && rhs) c.status = (*lhs == *rhs) ? RelationStatus::Holds : RelationStatus::Fails;
    return c;
}

}  // namespace

RelationReport edge_relations(const Cube& cube, const CubeEdge& edge) {
    const GoodDiagram& d = cube.diagram;
    const std::size_t l = edge.position;
    const auto& c = d.crossing(l);
    const std::string& tail = cube.vertices.at(edge.tail).word;

    // resolve every other crossing first, crossing l last
    SmoothingState s = initial_state(d);
    for (std::size_t m : cube.order) {
        if (m != l) s = smooth_crossing_trace(d, s, m, tail[m - 1] - '0');
    }
    if (s.sigma(c.i) != c.j) s.sigma = reverse_cycle(s.sigma, c.i);
    const Index a = s.sigma(c.v) == c.w ? c.v : c.w;
    const Index b = a == c.v ? c.w : c.v;
    const Permutation sv = smooth_crossing_trace(d, s, l, 0).sigma;
    const Permutation sv1 = smooth_crossing_trace(d, s, l, 1).sigma;
    const std::size_t n = sv.size();
    const MaybePerm tjb = Permutation::transposition(n, c.j, b);
    const Index i = c.i, j = c.j, v = c.v, w = c.w;
    const int eps = c.sign;

    RelationReport rep{edge.kind, eps, a, b, !sv.same_cycle(i, j), {}, {}};
    rep.subcase = std::string("eps=") + (eps > 0 ? "+1" : "-1") + ", a=" + (a == v ? "v" : "w");
    if (edge.kind == EdgeKind::Merge) {
        if ((eps > 0 && a == v) || (eps < 0 && a == w)) {
            rep.checks.push_back(relation("lambda-merge", lambda_of(sv1, i, j),
                                          conj(mul(tjb, mul(lambda_of(sv, j, a), lambda_of(sv, i, b))),
                                               xi_of(sv, j, a))));
        }
        if (eps > 0) {
            rep.checks.push_back(relation("xi-merge", xi_of(sv1, i, w), mul(xi_of(sv, i, w), xi_of(sv, j, v))));
        } else {
            rep.checks.push_back(relation("xi-merge", xi_of(sv1, i, v), mul(xi_of(sv, i, v), xi_of(sv, j, w))));
        }
    } else {
        if ((eps > 0 && a == w) || (eps < 0 && a == v)) {
            rep.checks.push_back(relation("lambda-split", mul(lambda_of(sv1, i, b), lambda_of(sv1, j, a)),
                                          mul(tjb, conj(lambda_of(sv, i, j), xi_of(sv1, j, a)))));
        }
        if (eps > 0) {
            rep.checks.push_back(relation("xi-split", mul(xi_of(sv1, i, v), xi_of(sv1, j, w)), xi_of(sv, i, v)));
        } else {
            rep.checks.push_back(relation("xi-split", mul(xi_of(sv1, i, w), xi_of(sv1, j, v)), xi_of(sv, i, w)));
        }
    }
    return rep;
}

PairCheck check_resolution_pair(const GoodDiagram& diagram, const SmoothingState& state, std::size_t l) {
    const auto& c = diagram.crossing(l);
    const Permutation& s = state.sigma;
    const std::size_t n = s.size();
    auto T = [n](Index x, Index y) { return Permutation::transposition(n, x, y); };
    const Permutation sp = smooth_crossing_trace(diagram, state, l, 0).sigma;
    const Permutation sm = smooth_crossing_trace(diagram, state, l, 1).sigma;
    const Index i = c.i, j = c.j, v = c.v, w = c.w;
    const int eps = c.sign;
    if (!s.same_cycle(i, v)) {
        return {"distinct-cycles", conjugate(sp, reflection_xi(s, v, w)) == sm};
    }
    const Index a = s(v) == w ? v : w;
    const Index b = a == v ? w : v;
    if (s(i) == j) {
        if ((a == w && eps > 0) || (a == v && eps < 0)) {
            return {"same-cycle-forward-a", compose(T(j, b), conjugate(sp, reflection_xi(sm, j, a))) == sm};
        }
        return {"same-cycle-forward-b", conjugate(compose(T(j, b), sp), reflection_xi(sp, j, a)) == sm};
    }
    if ((a == v && eps < 0) || (a == w && eps > 0)) {
        return {"same-cycle-backward-a", conjugate(compose(sp, T(j, a)), reflection_xi(sp, j, b)) == sm};
    }
    return {"same-cycle-backward-b", compose(conjugate(sp, reflection_xi(sm, j, b)), T(j, a)) == sm};
}

PairSummary resolution_pair_sweep(const GoodDiagram& diagram) {
    PairSummary sum;
    const std::size_t k = diagram.k();
    // every resolution path for small k, the canonical path otherwise
    const bool all_paths = k <= 5;
    std::function<void(const SmoothingState&)> visit = [&](const SmoothingState& s) {
        std::size_t first_open = k + 1;
        for (std::size_t l = 1; l <= k; ++l) {
            if (s.word[l - 1] != 2) continue;
            first_open = std::min(first_open, l);
            PairCheck chk = check_resolution_pair(diagram, s, l);
            ++sum.evaluated;
            if (!chk.holds) {
                if (sum.failures++ == 0) {
                    sum.first_failure = "state " + s.word_string() + " " + s.sigma.to_string() + ", crossing " +
                                        std::to_string(l) + ", clause " + chk.clause;
                }
            }
        }
        for (std::size_t l = 1; l <= k; ++l) {
            if (s.word[l - 1] != 2) continue;
            if (!all_paths && l != first_open) continue;
            for (int choice = 0; choice < 2; ++choice) visit(smooth_crossing_trace(diagram, s, l, choice));
        }
    };
    visit(initial_state(diagram));
    return sum;
}

}  // namespace polyknot
