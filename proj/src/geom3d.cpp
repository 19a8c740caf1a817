#include "polyknot/geom3d.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <sstream>

namespace polyknot {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto bad = [&](const std::string& why) {
        throw std::invalid_argument("malformed rational '" + s + "': " + why);
    };
    if (s.empty()) bad("empty");
    std::size_t slash = s.find('/');
    auto check_int = [&](const std::string& part, bool allow_sign) {
        std::size_t start = 0;
        if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) start = 1;
        if (start == part.size()) bad("missing digits");
        for (std::size_t t = start; t < part.size(); ++t) {
            if (!std::isdigit(static_cast<unsigned char>(part[t]))) bad("unexpected character");
        }
    };
    std::string num = s.substr(0, slash);
    check_int(num, true);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    Rational q;
    if (slash == std::string::npos) {
        q = Rational(mpz_class(num));
    } else {
        std::string den = s.substr(slash + 1);
        check_int(den, false);
        mpz_class d(den);
        if (d == 0) bad("zero denominator");
        q = Rational(mpz_class(num), d);
        q.canonicalize();
    }
    return q;
}

std::string format_rational(const Rational& q) { return q.get_str(); }

Point3 operator+(const Point3& a, const Point3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Point3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Point3 operator*(const Rational& s, const Point3& a) { return {s * a.x, s * a.y, s * a.z}; }
Rational dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Point3 cross(const Point3& a, const Point3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
bool is_zero(const Point3& a) { return a.x == 0 && a.y == 0 && a.z == 0; }

Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
Point2 operator*(const Rational& s, const Point2& a) { return {s * a.x, s * a.y}; }
Rational cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }

std::string to_string(const Point3& p) {
    return "(" + p.x.get_str() + "," + p.y.get_str() + "," + p.z.get_str() + ")";
}
std::string to_string(const Point2& p) { return "(" + p.x.get_str() + "," + p.y.get_str() + ")"; }

PolygonalLink::PolygonalLink(std::vector<std::vector<Point3>> components) : components_(std::move(components)) {
    for (std::size_t c = 0; c < components_.size(); ++c) {
        for (const auto& p : components_[c]) {
            points_.push_back(p);
            comp_of_.push_back(c);
        }
        boundaries_.push_back(static_cast<Index>(points_.size()));
    }
}

Index PolygonalLink::successor(Index i) const {
    std::size_t c = component_of(i);
    return i == last_index(c) ? first_index(c) : i + 1;
}

Index PolygonalLink::predecessor(Index i) const {
    std::size_t c = component_of(i);
    return i == first_index(c) ? last_index(c) : i - 1;
}

Permutation PolygonalLink::successor_permutation() const {
    std::vector<Index> im(size());
    for (Index i = 1; i <= static_cast<Index>(size()); ++i) im[i - 1] = successor(i);
    return Permutation(std::move(im));
}

namespace {

std::string idx_list(const std::vector<Index>& v) {
    std::string s = "(";
    for (std::size_t t = 0; t < v.size(); ++t) s += (t ? "," : "") + std::to_string(v[t]);
    return s + ")";
}

// Closed segments PQ and RS in space.
bool segments_meet(const Point3& p, const Point3& q, const Point3& r, const Point3& s) {
    Point3 d1 = q - p, d2 = s - r, w = r - p;
    if (is_zero(d1) && is_zero(d2)) return is_zero(w);
    if (is_zero(d1)) return segments_meet(r, s, p, q);
    Point3 n = cross(d1, d2);
    if (!is_zero(n)) {
        if (dot(w, n) != 0) return false;
        Rational nn = dot(n, n);
        Rational t = dot(cross(w, d2), n) / nn;
        Rational u = dot(cross(w, d1), n) / nn;
        return t >= 0 && t <= 1 && u >= 0 && u <= 1;
    }
    if (!is_zero(cross(w, d1))) return false;
    Rational len = dot(d1, d1);
    Rational t0 = dot(w, d1) / len, t1 = dot(s - p, d1) / len;
    if (t0 > t1) std::swap(t0, t1);
    return t1 >= 0 && t0 <= 1;
}

// Point x coplanar with triangle abc (normal nrm) lies in the closed triangle.
bool in_triangle(const Point3& a, const Point3& b, const Point3& c, const Point3& nrm, const Point3& x) {
    return dot(cross(b - a, x - a), nrm) >= 0 && dot(cross(c - b, x - b), nrm) >= 0 &&
           dot(cross(a - c, x - c), nrm) >= 0;
}

bool segment_meets_triangle(const Point3& a, const Point3& b, const Point3& c, const Point3& p, const Point3& q) {
    Point3 nrm = cross(b - a, c - a);
    Rational dp = dot(nrm, p - a), dq = dot(nrm, q - a);
    if ((dp > 0 && dq > 0) || (dp < 0 && dq < 0)) return false;
    if (dp == 0 && dq == 0) {
        return in_triangle(a, b, c, nrm, p) || in_triangle(a, b, c, nrm, q) || segments_meet(a, b, p, q) ||
               segments_meet(b, c, p, q) || segments_meet(c, a, p, q);
    }
    Point3 x = p + (dp / (dp - dq)) * (q - p);
    return in_triangle(a, b, c, nrm, x);
}

// Edge from `corner` in direction d, sharing only that corner with triangle (corner, u-end, w-end).
bool adjacent_edge_enters(const Point3& u, const Point3& w, const Point3& d) {
    Point3 nrm = cross(u, w);
    if (dot(nrm, d) != 0) return false;
    return dot(cross(d, w), nrm) >= 0 && dot(cross(u, d), nrm) >= 0;
}

bool on_segment2(const Point2& a, const Point2& b, const Point2& p) {
    if (cross(b - a, p - a) != 0) return false;
    Point2 pa = p - a, pb = p - b;
    return pa.x * pb.x + pa.y * pb.y <= 0;
}

}  // namespace

ValidationReport validate_link(const PolygonalLink& link) {
    ValidationReport report;
    const Index n = static_cast<Index>(link.size());
    std::vector<bool> small(link.component_count(), false);
    for (std::size_t c = 0; c < link.component_count(); ++c) {
        std::size_t sz = link.components()[c].size();
        if (sz < 3) {
            small[c] = true;
            report.push_back({IssueKind::ComponentTooSmall,
                              {link.first_index(c)},
                              "component needs ≥ 3 vertices: component " + std::to_string(c + 1) + " has " +
                                  std::to_string(sz)});
        }
    }
    for (Index i = 1; i <= n; ++i) {
        for (Index j = i + 1; j <= n; ++j) {
            if (link.point(i) == link.point(j)) {
                report.push_back({IssueKind::DuplicatePoint, {i, j}, "duplicate point at indices " + idx_list({i, j})});
            }
        }
    }
    for (Index i = 1; i <= n; ++i) {
        if (small[link.component_of(i)]) continue;
        Index h = link.predecessor(i), k = link.successor(i);
        if (is_zero(cross(link.point(i) - link.point(h), link.point(k) - link.point(i)))) {
            report.push_back(
                {IssueKind::CollinearTriple, {h, i, k}, "collinear triple at indices " + idx_list({h, i, k})});
        }
    }
    for (Index e = 1; e <= n; ++e) {
        if (small[link.component_of(e)]) continue;
        Index e2 = link.successor(e);
        for (Index f = e + 1; f <= n; ++f) {
            if (small[link.component_of(f)]) continue;
            Index f2 = link.successor(f);
            if (e2 == f || f2 == e) continue;  // adjacent: only the shared endpoint, collinearity checked above
            if (segments_meet(link.point(e), link.point(e2), link.point(f), link.point(f2))) {
                report.push_back({IssueKind::EdgeIntersection,
                                  {e, e2, f, f2},
                                  "edges " + idx_list({e, e2}) + " and " + idx_list({f, f2}) + " intersect"});
            }
        }
    }
    return report;
}

Direction::Direction(Point3 v) : v_(std::move(v)) {
    if (is_zero(v_)) throw std::invalid_argument("projection direction must be nonzero");
}

Direction Direction::parse(const std::string& text) {
    std::vector<Rational> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(parse_rational(item));
    if (parts.size() != 3) throw std::invalid_argument("direction needs three components: '" + text + "'");
    return Direction(Point3{parts[0], parts[1], parts[2]});
}

std::string Direction::to_string() const { return v_.x.get_str() + "," + v_.y.get_str() + "," + v_.z.get_str(); }

namespace {
const Rational& coord(const Point3& p, int axis) { return axis == 0 ? p.x : axis == 1 ? p.y : p.z; }
}  // namespace

Point2 Chart::project(const Point3& p) const {
    // p - (p_c / d_c) dir, read off in axes (a, b)
    Rational s = coord(p, drop) / coord(dir, drop);
    return {coord(p, a) - s * coord(dir, a), coord(p, b) - s * coord(dir, b)};
}

Chart make_chart(const Direction& dir) {
    Chart ch;
    ch.dir = dir.vec();
    int best = 0;
    for (int c = 1; c < 3; ++c) {
        if (abs(coord(ch.dir, c)) > abs(coord(ch.dir, best))) best = c;
    }
    ch.drop = best;
    ch.a = (best + 1) % 3;
    ch.b = (best + 2) % 3;
    if (coord(ch.dir, best) < 0) std::swap(ch.a, ch.b);
    return ch;
}

std::string RegularityWitness::describe() const {
    switch (condition) {
        case RegularityCondition::CoincidentVertices:
            return "vertex images coincide at indices " + idx_list(indices);
        case RegularityCondition::VertexOnEdge:
            return "vertex " + std::to_string(indices[0]) + " projects onto edge " +
                   idx_list({indices[1], indices[2]}) + " (segment overlap or vertex on a double point)";
        case RegularityCondition::TriplePoint:
            return "edges starting at " + idx_list(indices) + " share a double point";
    }
    return "";
}

std::vector<ProjectedCrossing> projected_crossings(const PolygonalLink& link, const Chart& chart) {
    const Index n = static_cast<Index>(link.size());
    std::vector<Point2> q(n);
    for (Index i = 1; i <= n; ++i) q[i - 1] = chart.project(link.point(i));
    std::vector<ProjectedCrossing> out;
    for (Index e = 1; e <= n; ++e) {
        Index e2 = link.successor(e);
        Point2 r = q[e2 - 1] - q[e - 1];
        for (Index f = e + 1; f <= n; ++f) {
            Index f2 = link.successor(f);
            if (e2 == f || f2 == e) continue;
            Point2 s = q[f2 - 1] - q[f - 1];
            Rational den = cross(r, s);
            if (den == 0) continue;
            Point2 w = q[f - 1] - q[e - 1];
            Rational t = cross(w, s) / den;
            Rational u = cross(w, r) / den;
            if (t > 0 && t < 1 && u > 0 && u < 1) {
                out.push_back({e, f, q[e - 1] + t * r, t, u});
            }
        }
    }
    return out;
}

RegularityResult is_regular_direction(const PolygonalLink& link, const Direction& dir) {
    RegularityResult res;
    Chart chart = make_chart(dir);
    const Index n = static_cast<Index>(link.size());
    std::vector<Point2> q(n);
    for (Index i = 1; i <= n; ++i) q[i - 1] = chart.project(link.point(i));
    for (Index i = 1; i <= n; ++i) {
        for (Index j = i + 1; j <= n; ++j) {
            if (q[i - 1] == q[j - 1]) {
                res.witness = RegularityWitness{RegularityCondition::CoincidentVertices, {i, j}};
                return res;
            }
        }
    }
    for (Index x = 1; x <= n; ++x) {
        for (Index e = 1; e <= n; ++e) {
            Index e2 = link.successor(e);
            if (x == e || x == e2) continue;
            if (on_segment2(q[e - 1], q[e2 - 1], q[x - 1])) {
                res.witness = RegularityWitness{RegularityCondition::VertexOnEdge, {x, e, e2}};
                return res;
            }
        }
    }
    auto xs = projected_crossings(link, chart);
    std::vector<std::size_t> order(xs.size());
    for (std::size_t t = 0; t < order.size(); ++t) order[t] = t;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a].point < xs[b].point; });
    for (std::size_t t = 1; t < order.size(); ++t) {
        const auto& a = xs[order[t - 1]];
        const auto& b = xs[order[t]];
        if (a.point == b.point) {
            res.witness = RegularityWitness{RegularityCondition::TriplePoint, {a.e1, a.e2, b.e1, b.e2}};
            return res;
        }
    }
    res.regular = true;
    res.double_points = xs.size();
    return res;
}

Direction find_regular_direction(const PolygonalLink& link, std::uint64_t seed, std::size_t budget) {
    std::mt19937_64 rng(seed);
    long bound = 1;
    std::size_t at_bound = 0;
    std::optional<RegularityWitness> last;
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
        if (at_bound >= static_cast<std::size_t>((2 * bound + 1) * (2 * bound + 1) * (2 * bound + 1))) {
            bound *= 2;
            at_bound = 0;
        }
        ++at_bound;
        std::uniform_int_distribution<long> pick(-bound, bound);
        long x = pick(rng), y = pick(rng), z = pick(rng);
        if (x == 0 && y == 0 && z == 0) continue;
        Direction d(Point3{x, y, z});
        auto res = is_regular_direction(link, d);
        if (res.regular) return d;
        last = res.witness;
    }
    throw DirectionSearchError("no regular direction within " + std::to_string(budget) + " attempts" +
                                   (last ? "; last witness: " + last->describe() : ""),
                               last);
}

std::optional<Index> triangle_obstruction(const PolygonalLink& link, Index l, const Point3& apex) {
    const Index m = link.successor(l);
    const Point3& pl = link.point(l);
    const Point3& pm = link.point(m);
    if (is_zero(cross(pm - pl, apex - pl))) return l;
    for (Index e = 1; e <= static_cast<Index>(link.size()); ++e) {
        if (e == l) continue;
        Index e2 = link.successor(e);
        const Point3& a = link.point(e);
        const Point3& b = link.point(e2);
        bool at_l = (e2 == l), at_m = (e == m);
        if (at_l) {
            if (adjacent_edge_enters(pm - pl, apex - pl, a - pl)) return e;
            continue;
        }
        if (at_m) {
            if (adjacent_edge_enters(pl - pm, apex - pm, b - pm)) return e;
            continue;
        }
        if (segment_meets_triangle(pl, pm, apex, a, b)) return e;
    }
    return std::nullopt;
}

namespace {

void require_valid(const PolygonalLink& link, const std::string& what) {
    auto report = validate_link(link);
    if (!report.empty()) throw GeometryError(what + ": " + report.front().message);
}

}  // namespace

PolygonalLink deform_add_vertex(const PolygonalLink& link, Index after, const Point3& point) {
    if (after < 1 || after > static_cast<Index>(link.size())) throw std::out_of_range("vertex index out of range");
    if (auto e = triangle_obstruction(link, after, point)) {
        throw TriangleObstruction("triangle over edge (" + std::to_string(after) + "," +
                                      std::to_string(link.successor(after)) + ") is obstructed by edge (" +
                                      std::to_string(*e) + "," + std::to_string(link.successor(*e)) + ")",
                                  *e);
    }
    auto comps = link.components();
    std::size_t c = link.component_of(after);
    std::size_t local = static_cast<std::size_t>(after - link.first_index(c));
    comps[c].insert(comps[c].begin() + static_cast<long>(local + 1), point);
    PolygonalLink out(std::move(comps));
    require_valid(out, "vertex insertion produces an invalid link");
    return out;
}

PolygonalLink deform_add_vertex(const PolygonalLink& link, std::size_t component, std::size_t position,
                                const Point3& point) {
    if (component >= link.component_count()) throw std::out_of_range("component index out of range");
    std::size_t sz = link.components()[component].size();
    if (position > sz) throw std::out_of_range("position out of range");
    Index after = link.first_index(component) + static_cast<Index>((position + sz - 1) % sz);
    PolygonalLink out = deform_add_vertex(link, after, point);
    if (position == 0) {
        // keep the new point at local position 0
        auto comps = out.components();
        auto& cc = comps[component];
        std::rotate(cc.rbegin(), cc.rbegin() + 1, cc.rend());
        out = PolygonalLink(std::move(comps));
    }
    return out;
}

PolygonalLink deform_remove_vertex(const PolygonalLink& link, Index p) {
    if (p < 1 || p > static_cast<Index>(link.size())) throw std::out_of_range("vertex index out of range");
    std::size_t c = link.component_of(p);
    if (link.components()[c].size() < 4) throw GeometryError("cannot remove a vertex from a triangle component");
    Index l = link.predecessor(p);
    auto comps = link.components();
    comps[c].erase(comps[c].begin() + (p - link.first_index(c)));
    PolygonalLink out(std::move(comps));
    Index l_new = l < p ? l : l - 1;
    if (auto e = triangle_obstruction(out, l_new, link.point(p))) {
        Index orig = *e >= p ? *e + 1 : *e;
        throw TriangleObstruction("removing vertex " + std::to_string(p) + " is obstructed by edge (" +
                                      std::to_string(orig) + "," + std::to_string(link.successor(orig)) + ")",
                                  orig);
    }
    require_valid(out, "vertex removal produces an invalid link");
    return out;
}

std::optional<Index> overloaded_edge(const PolygonalLink& link, const Direction& dir) {
    std::map<Index, int> count;
    for (const auto& x : projected_crossings(link, make_chart(dir))) {
        ++count[x.e1];
        ++count[x.e2];
    }
    for (auto [e, c] : count) {
        if (c > 1) return e;
    }
    return std::nullopt;
}

namespace {

// Coarsest m / 2^k strictly inside (lo, hi); keeps inserted coordinates small.
Rational dyadic_between(const Rational& lo, const Rational& hi) {
    mpz_class scale = 1;
    for (;;) {
        mpz_class m(Rational(lo * scale));  // truncates; lo is a crossing parameter in [0, 1]
        Rational t(m + 1, scale);
        t.canonicalize();
        if (t > lo && t < hi) return t;
        scale *= 2;
    }
}

}  // namespace

PolygonalLink refine_to_good(const PolygonalLink& link, const Direction& dir) {
    if (!is_regular_direction(link, dir).regular) throw GeometryError("refine_to_good: direction is not regular");
    Chart chart = make_chart(dir);
    PolygonalLink cur = link;
    while (true) {
        auto xs = projected_crossings(cur, chart);
        std::map<Index, std::vector<Rational>> params;
        for (const auto& x : xs) {
            params[x.e1].push_back(x.t1);
            params[x.e2].push_back(x.t2);
        }
        auto it = std::find_if(params.begin(), params.end(), [](const auto& kv) { return kv.second.size() > 1; });
        if (it == params.end()) return cur;
        Index e = it->first;
        auto ts = it->second;
        std::sort(ts.begin(), ts.end());
        const Point3& a = cur.point(e);
        const Point3& b = cur.point(cur.successor(e));
        Point3 mid = a + dyadic_between(ts[0], ts[1]) * (b - a);
        Point3 y = cross(b - a, dir.vec());
        Rational h = 1;
        Rational span = std::max({abs(y.x), abs(y.y), abs(y.z)});
        while (h * span > Rational(1, 4)) h /= 2;
        bool placed = false;
        for (int halvings = 0; halvings < 256 && !placed; ++halvings, h /= 2) {
            Point3 x = mid + h * y;
            if (triangle_obstruction(cur, e, x)) continue;
            auto comps = cur.components();
            std::size_t c = cur.component_of(e);
            comps[c].insert(comps[c].begin() + (e - cur.first_index(c) + 1), x);
            PolygonalLink next(std::move(comps));
            if (!validate_link(next).empty()) continue;
            if (!is_regular_direction(next, dir).regular) continue;
            auto nxs = projected_crossings(next, chart);
            if (nxs.size() != xs.size()) continue;
            int first_piece = 0;
            for (const auto& nx : nxs) first_piece += (nx.e1 == e) + (nx.e2 == e);
            if (first_piece != 1) continue;
            cur = std::move(next);
            placed = true;
        }
        if (!placed) {
            throw GeometryError("refine_to_good: could not place a vertex on edge " + std::to_string(e));
        }
    }
}

}  // namespace polyknot
