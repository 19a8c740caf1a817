#pragma once

#include "polyknot/geom3d.hpp"

#include <vector>

namespace polyknot {

struct CrossingRecord {
    Index i, j;  // overcrossing edge
    Index v, w;  // undercrossing edge
    int sign;
    Point2 point;

    bool operator==(const CrossingRecord& o) const {
        return i == o.i && j == o.j && v == o.v && w == o.w && sign == o.sign && point == o.point;
    }
};

class GoodDiagram {
public:
    GoodDiagram() = default;
    // Checks goodness, successor relations and signs; crossings must already be enumerated.
    GoodDiagram(std::vector<Point2> vertices, std::vector<Index> boundaries, std::vector<CrossingRecord> crossings);

    std::size_t n() const { return vertices_.size(); }
    std::size_t k() const { return crossings_.size(); }
    std::size_t k_plus() const;
    std::size_t k_minus() const { return k() - k_plus(); }
    std::size_t component_count() const { return boundaries_.size() - 1; }

    const std::vector<Point2>& vertices() const { return vertices_; }
    const Point2& vertex(Index i) const { return vertices_[static_cast<std::size_t>(i - 1)]; }
    const std::vector<Index>& boundaries() const { return boundaries_; }
    const std::vector<CrossingRecord>& crossings() const { return crossings_; }
    // l is 1-based
    const CrossingRecord& crossing(std::size_t l) const { return crossings_.at(l - 1); }

    Index successor(Index i) const;
    Index predecessor(Index i) const;
    std::size_t component_of(Index i) const;
    Permutation successor_permutation() const;

private:
    std::vector<Point2> vertices_;
    std::vector<Index> boundaries_{0};
    std::vector<CrossingRecord> crossings_;
};

class DiagramError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

GoodDiagram build_good_diagram(const PolygonalLink& link, const Direction& dir);

int crossing_sign(const Point2& qi, const Point2& qj, const Point2& qv, const Point2& qw);
int crossing_sign(const CrossingRecord& c, const GoodDiagram& diagram);

// Orders crossings by walking the components and numbering each crossing when
// its overcrossing edge is traversed.
std::vector<CrossingRecord> enumerate_crossings(const std::vector<CrossingRecord>& crossings,
                                                const std::vector<Index>& boundaries);

struct IndexSets {
    std::vector<Index> I, V, K;
};

IndexSets index_sets(const GoodDiagram& diagram);

// Transverse intersection of two planar segments, if any.
std::optional<Point2> segment_crossing(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

}  // namespace polyknot
