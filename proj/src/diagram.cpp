#include "polyknot/diagram.hpp"

#include <algorithm>
#include <map>

namespace polyknot {

namespace {

std::size_t comp_index(const std::vector<Index>& boundaries, Index i) {
    auto it = std::lower_bound(boundaries.begin() + 1, boundaries.end(), i);
    return static_cast<std::size_t>(it - boundaries.begin() - 1);
}

Index succ_in(const std::vector<Index>& boundaries, Index i) {
    std::size_t c = comp_index(boundaries, i);
    return i == boundaries[c + 1] ? boundaries[c] + 1 : i + 1;
}

}  // namespace

GoodDiagram::GoodDiagram(std::vector<Point2> vertices, std::vector<Index> boundaries,
                         std::vector<CrossingRecord> crossings)
    : vertices_(std::move(vertices)), boundaries_(std::move(boundaries)), crossings_(std::move(crossings)) {
    if (boundaries_.empty() || boundaries_.front() != 0 || boundaries_.back() != static_cast<Index>(n())) {
        throw DiagramError("component boundaries must run from 0 to n");
    }
    for (std::size_t c = 1; c < boundaries_.size(); ++c) {
        if (boundaries_[c] - boundaries_[c - 1] < 3) throw DiagramError("component with fewer than 3 vertices");
    }
    std::vector<int> uses(n() + 1, 0);
    for (std::size_t l = 0; l < crossings_.size(); ++l) {
        const auto& c = crossings_[l];
        for (Index x : {c.i, c.j, c.v, c.w}) {
            if (x < 1 || x > static_cast<Index>(n())) throw DiagramError("crossing index out of range");
        }
        if (successor(c.i) != c.j || successor(c.v) != c.w) {
            throw DiagramError("crossing " + std::to_string(l + 1) + " does not sit on two edges");
        }
        if (++uses[c.i] > 1 || ++uses[c.v] > 1) {
            throw DiagramError("not a good diagram: edge starting at " + std::to_string(uses[c.i] > 1 ? c.i : c.v) +
                               " carries more than one crossing");
        }
        if (crossing_sign(c, *this) != c.sign) {
            throw DiagramError("crossing " + std::to_string(l + 1) + " has the wrong sign");
        }
        if (l > 0 && crossings_[l - 1].i > c.i) throw DiagramError("crossings are not in walk order");
    }
}

std::size_t GoodDiagram::k_plus() const {
    return static_cast<std::size_t>(
        std::count_if(crossings_.begin(), crossings_.end(), [](const CrossingRecord& c) { return c.sign > 0; }));
}

std::size_t GoodDiagram::component_of(Index i) const { return comp_index(boundaries_, i); }

Index GoodDiagram::successor(Index i) const { return succ_in(boundaries_, i); }

Index GoodDiagram::predecessor(Index i) const {
    std::size_t c = component_of(i);
    return i == boundaries_[c] + 1 ? boundaries_[c + 1] : i - 1;
}

Permutation GoodDiagram::successor_permutation() const {
    std::vector<Index> im(n());
    for (Index i = 1; i <= static_cast<Index>(n()); ++i) im[i - 1] = successor(i);
    return Permutation(std::move(im));
}

int crossing_sign(const Point2& qi, const Point2& qj, const Point2& qv, const Point2& qw) {
    int s = sgn(cross(qj - qi, qw - qv));
    if (s == 0) throw DiagramError("degenerate crossing: edges are parallel");
    return s;
}

int crossing_sign(const CrossingRecord& c, const GoodDiagram& d) {
    return crossing_sign(d.vertex(c.i), d.vertex(c.j), d.vertex(c.v), d.vertex(c.w));
}

std::vector<CrossingRecord> enumerate_crossings(const std::vector<CrossingRecord>& crossings,
                                                const std::vector<Index>& boundaries) {
    std::multimap<Index, std::size_t> by_over;
    for (std::size_t t = 0; t < crossings.size(); ++t) by_over.emplace(crossings[t].i, t);
    std::vector<CrossingRecord> out;
    for (std::size_t c = 0; c + 1 < boundaries.size(); ++c) {
        for (Index x = boundaries[c] + 1; x <= boundaries[c + 1]; ++x) {
            auto [lo, hi] = by_over.equal_range(x);
            for (auto it = lo; it != hi; ++it) out.push_back(crossings[it->second]);
        }
    }
    if (out.size() != crossings.size()) throw DiagramError("crossing walk left crossings unnumbered");
    return out;
}

std::optional<Point2> segment_crossing(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    Point2 r = b - a, s = d - c;
    Rational den = cross(r, s);
    if (den == 0) return std::nullopt;
    Point2 w = c - a;
    Rational t = cross(w, s) / den, u = cross(w, r) / den;
    if (t > 0 && t < 1 && u > 0 && u < 1) return a + t * r;
    return std::nullopt;
}

GoodDiagram build_good_diagram(const PolygonalLink& link, const Direction& dir) {
    auto reg = is_regular_direction(link, dir);
    if (!reg.regular) throw DiagramError("projection is not regular: " + reg.witness->describe());
    Chart chart = make_chart(dir);
    std::vector<Point2> q;
    for (Index i = 1; i <= static_cast<Index>(link.size()); ++i) q.push_back(chart.project(link.point(i)));
    std::vector<CrossingRecord> raw;
    std::map<Index, int> uses;
    for (const auto& x : projected_crossings(link, chart)) {
        for (Index e : {x.e1, x.e2}) {
            if (++uses[e] > 1) {
                throw DiagramError("not a good diagram: edge (" + std::to_string(e) + "," +
                                   std::to_string(link.successor(e)) + ") carries more than one crossing");
            }
        }
        auto at = [&](Index e, const Rational& t) {
            return link.point(e) + t * (link.point(link.successor(e)) - link.point(e));
        };
        Rational h1 = chart.height(at(x.e1, x.t1)), h2 = chart.height(at(x.e2, x.t2));
        if (h1 == h2) throw DiagramError("edges meet in space at a double point");
        Index over = h1 > h2 ? x.e1 : x.e2, under = h1 > h2 ? x.e2 : x.e1;
        CrossingRecord c{over, link.successor(over), under, link.successor(under), 0, x.point};
        c.sign = crossing_sign(q[c.i - 1], q[c.j - 1], q[c.v - 1], q[c.w - 1]);
        raw.push_back(c);
    }
    auto ordered = enumerate_crossings(raw, link.boundaries());
    return GoodDiagram(std::move(q), link.boundaries(), std::move(ordered));
}

IndexSets index_sets(const GoodDiagram& d) {
    IndexSets s;
    std::vector<int> role(d.n() + 1, 0);
    for (const auto& c : d.crossings()) {
        s.I.push_back(c.i);
        s.V.push_back(c.v);
        if (role[c.i] || role[c.v]) throw DiagramError("malformed diagram: index sets I and V overlap");
        role[c.i] = 1;
        role[c.v] = 2;
    }
    for (Index x = 1; x <= static_cast<Index>(d.n()); ++x) {
        if (!role[x]) s.K.push_back(x);
    }
    return s;
}

}  // namespace polyknot
