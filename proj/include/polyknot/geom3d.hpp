#pragma once

#include "polyknot/perm.hpp"
#include "polyknot/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyknot {

struct Point3 {
    Rational x, y, z;
    bool operator==(const Point3& o) const { return x == o.x && y == o.y && z == o.z; }
};

struct Point2 {
    Rational x, y;
    bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
    bool operator<(const Point2& o) const { return x < o.x || (x == o.x && y < o.y); }
};

Point3 operator+(const Point3& a, const Point3& b);
Point3 operator-(const Point3& a, const Point3& b);
Point3 operator*(const Rational& s, const Point3& a);
Rational dot(const Point3& a, const Point3& b);
Point3 cross(const Point3& a, const Point3& b);
bool is_zero(const Point3& a);

Point2 operator+(const Point2& a, const Point2& b);
Point2 operator-(const Point2& a, const Point2& b);
Point2 operator*(const Rational& s, const Point2& a);
Rational cross(const Point2& a, const Point2& b);

std::string to_string(const Point3& p);
std::string to_string(const Point2& p);

class PolygonalLink {
public:
    PolygonalLink() = default;
    explicit PolygonalLink(std::vector<std::vector<Point3>> components);

    std::size_t size() const { return points_.size(); }
    std::size_t component_count() const { return components_.size(); }
    const std::vector<std::vector<Point3>>& components() const { return components_; }

    const Point3& point(Index i) const { return points_[static_cast<std::size_t>(i - 1)]; }
    Index successor(Index i) const;
    Index predecessor(Index i) const;
    std::size_t component_of(Index i) const { return comp_of_[static_cast<std::size_t>(i - 1)]; }
    Index first_index(std::size_t c) const { return boundaries_[c] + 1; }
    Index last_index(std::size_t c) const { return boundaries_[c + 1]; }
    // n_0 = 0 < n_1 < ... < n_r = n
    const std::vector<Index>& boundaries() const { return boundaries_; }
    Permutation successor_permutation() const;

    bool operator==(const PolygonalLink& o) const { return components_ == o.components_; }

private:
    std::vector<std::vector<Point3>> components_;
    std::vector<Point3> points_;
    std::vector<std::size_t> comp_of_;
    std::vector<Index> boundaries_{0};
};

enum class IssueKind { ComponentTooSmall, DuplicatePoint, CollinearTriple, EdgeIntersection };

struct ValidationIssue {
    IssueKind kind;
    std::vector<Index> indices;
    std::string message;
};

using ValidationReport = std::vector<ValidationIssue>;

ValidationReport validate_link(const PolygonalLink& link);

class Direction {
public:
    explicit Direction(Point3 v);
    static Direction parse(const std::string& text);  // "dx,dy,dz"
    const Point3& vec() const { return v_; }
    std::string to_string() const;

private:
    Point3 v_;
};

// Linear chart of the plane orthogonal to a direction. Drops the coordinate axis
// with the largest |dir| entry; orientation agrees with looking down from +dir.
struct Chart {
    Point3 dir;
    int a = 0, b = 1, drop = 2;

    Point2 project(const Point3& p) const;
    Rational height(const Point3& p) const { return dot(p, dir); }
};

Chart make_chart(const Direction& dir);

enum class RegularityCondition { CoincidentVertices, VertexOnEdge, TriplePoint };

struct RegularityWitness {
    RegularityCondition condition;
    std::vector<Index> indices;
    std::string describe() const;
};

struct RegularityResult {
    bool regular = false;
    std::optional<RegularityWitness> witness;
    std::size_t double_points = 0;
};

RegularityResult is_regular_direction(const PolygonalLink& link, const Direction& dir);

// Transverse double point of the projected edges starting at e1 < e2.
struct ProjectedCrossing {
    Index e1, e2;
    Point2 point;
    Rational t1, t2;  // parameters along each edge
};

std::vector<ProjectedCrossing> projected_crossings(const PolygonalLink& link, const Chart& chart);

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DirectionSearchError : public GeometryError {
public:
    DirectionSearchError(const std::string& what, std::optional<RegularityWitness> last)
        : GeometryError(what), last_witness(std::move(last)) {}
    std::optional<RegularityWitness> last_witness;
};

class TriangleObstruction : public GeometryError {
public:
    TriangleObstruction(const std::string& what, Index edge) : GeometryError(what), edge_start(edge) {}
    Index edge_start;
};

Direction find_regular_direction(const PolygonalLink& link, std::uint64_t seed, std::size_t budget = 10000);

PolygonalLink refine_to_good(const PolygonalLink& link, const Direction& dir);

// Start index of an edge whose image carries more than one crossing, if any.
std::optional<Index> overloaded_edge(const PolygonalLink& link, const Direction& dir);

// Edge (l, successor(l)) with apex: the closed triangle must meet the link only in that edge.
std::optional<Index> triangle_obstruction(const PolygonalLink& link, Index l, const Point3& apex);

// Inserts point between global vertex `after` and its successor.
PolygonalLink deform_add_vertex(const PolygonalLink& link, Index after, const Point3& point);
PolygonalLink deform_add_vertex(const PolygonalLink& link, std::size_t component, std::size_t position,
                                const Point3& point);
PolygonalLink deform_remove_vertex(const PolygonalLink& link, Index p);

}  // namespace polyknot
