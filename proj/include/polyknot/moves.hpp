#pragma once

#include "polyknot/cube.hpp"
#include "polyknot/diagram.hpp"
#include "polyknot/geom3d.hpp"

#include <array>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

namespace polyknot {

enum class MoveCase { C1, C2, C3, C4, C5, CA, CB, CC, RIII };
const char* move_case_name(MoveCase c);

struct TriangleMove {
    Index l, p, m;  // p is removed, l-m becomes an edge (pre-move numbering)
    MoveCase tag;
    std::optional<Index> a, b, c;

    // "case l p m [a b c]"
    std::string log_line() const;
};

class MoveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Classifies removing vertex p from the link projected along dir.
TriangleMove classify_triangle_move(const PolygonalLink& link, const Direction& dir, Index p);

// Generator of the deformed diagram for the circle through l (C1, C2) or m (C3),
// or the whole deformed smoothing (C4, C5). Indices keep the pre-move numbering; p is fixed.
Permutation deformed_generator(const TriangleMove& move, const Permutation& sigma);

// Index substitution of the move on a crossing record, then removal of p from the numbering.
Index renumber_after_removal(Index x, Index p);
std::optional<CrossingRecord> transport_crossing(const TriangleMove& move, const CrossingRecord& c);

struct TransformedCube {
    std::size_t n = 0;
    std::vector<CrossingRecord> crossings;         // predicted crossings of the deformed diagram, walk order
    std::vector<std::size_t> source_crossing;      // deformed crossing -> original crossing (1-based)
    std::vector<std::string> words;                // binary order over the deformed crossings
    std::vector<Permutation> sigmas;
    std::vector<std::string> provenance;
};

TransformedCube transform_cube(const Cube& cube, const TriangleMove& move);

// Crossing data agrees and every vertex has the same circles.
bool matches_rebuilt(const TransformedCube& transformed, const Cube& rebuilt, std::string* why = nullptr);

struct IndexQuadruple {
    Index i, j, v, w;
    bool operator==(const IndexQuadruple& o) const = default;
    bool operator<(const IndexQuadruple& o) const {
        return std::tie(i, j, v, w) < std::tie(o.i, o.j, o.v, o.w);
    }
};

// Three crossings with j1 = i2, v1 = j3, w2 = v3.
std::array<IndexQuadruple, 3> riii_relabel(const std::array<IndexQuadruple, 3>& triple);
// Inverse pattern: J1 = I2, V1 = W3, W2 = I3.
std::array<IndexQuadruple, 3> riii_unrelabel(const std::array<IndexQuadruple, 3>& triple);

// Vertex moved to target as an insertion followed by a removal, both checked in space.
PolygonalLink move_vertex(const PolygonalLink& link, Index x, const Point3& target);

}  // namespace polyknot
