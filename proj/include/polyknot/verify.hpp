#pragma once

#include "polyknot/khovanov.hpp"
#include "polyknot/moves.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace polyknot {

struct PropertyResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct VerifyOptions {
    std::size_t trials = 25;
    std::uint64_t seed = 0;
    std::optional<Direction> dir;
    Frobenius variant = Frobenius::Standard;
};

struct VerifyReport {
    std::vector<PropertyResult> properties;
    bool ok() const;
    std::string to_text() const;
    std::string to_json() const;
};

// Diagram along dir (or a searched direction), refined to good.
struct PreparedLink {
    PolygonalLink link;
    Direction dir;
    GoodDiagram diagram;
};
PreparedLink prepare(const PolygonalLink& link, std::optional<Direction> dir, std::uint64_t seed);

// One random elementary deformation: removing `move.p` from `before` gives `after`.
struct Deformation {
    PolygonalLink before, after;
    TriangleMove move;
    bool added;  // true when `before` was produced by inserting a vertex into the input
};
std::optional<Deformation> random_deformation(const PolygonalLink& link, const Direction& dir, std::mt19937_64& rng,
                                              std::size_t attempts = 60);

// Resolution orders used by the theorem check: all for k <= 4, else `count` seeded random ones.
std::vector<std::vector<std::size_t>> resolution_orders(std::size_t k, std::size_t count, std::uint64_t seed);

struct MoveTally {
    std::map<std::string, std::size_t> cases;
    std::size_t trials = 0, homology_equal = 0, transforms_checked = 0, transforms_equal = 0, round_trips = 0;
    std::string first_failure;
};
MoveTally move_invariance(const PolygonalLink& link, const Direction& dir, std::size_t trials, std::uint64_t seed);

VerifyReport run_verify(const PolygonalLink& link, const VerifyOptions& opts);

}  // namespace polyknot
