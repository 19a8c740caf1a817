#pragma once

#include "polyknot/diagram.hpp"
#include "polyknot/perm.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace polyknot {

// Letters 0, 1 (resolved) and 2 (unresolved); letter l of the word is word[l-1].
struct SmoothingState {
    std::vector<std::uint8_t> word;
    Permutation sigma;

    std::string word_string() const;
    std::size_t ones() const;
};

SmoothingState initial_state(const GoodDiagram& diagram);

// The two index pairs joined when crossing c is resolved with `choice`.
std::array<std::pair<Index, Index>, 2> joined_pairs(const CrossingRecord& c, int choice);

// For each resolved crossing (1-based), the joined index pairs.
std::vector<std::pair<std::size_t, std::array<std::pair<Index, Index>, 2>>> resolved_edges(
    const GoodDiagram& diagram, const SmoothingState& state);

SmoothingState smooth_crossing_trace(const GoodDiagram& diagram, const SmoothingState& state, std::size_t l,
                                     int choice);

enum class TheoremCase {
    FwdFwdCompose,
    FwdFwdSameCycle,
    FwdFwdDistinctCycles,
    FwdBackCompose,
    FwdBackSameCycle,
    FwdBackDistinctCycles,
    BackFwdCompose,
    BackFwdSameCycle,
    BackFwdDistinctCycles,
    BackBackCompose,
    BackBackSameCycle,
    BackBackDistinctCycles,
};
constexpr std::size_t kTheoremCaseCount = 12;
const char* theorem_case_name(TheoremCase c);

// How sigma enters the distinct-cycle formula when both edges run backward.
enum class ExponentReading { Omega, EpsilonPower };

struct TheoremStep {
    SmoothingState state;
    TheoremCase tag;
};

TheoremStep smooth_crossing_theorem(const GoodDiagram& diagram, const SmoothingState& state, std::size_t l,
                                    int choice, ExponentReading reading = ExponentReading::Omega);

class TheoremMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class EdgeKind { Merge, Split };

struct CubeVertex {
    std::string word;
    Permutation sigma;
    std::size_t circles = 0;
    std::vector<DihedralFactor> groups;
};

struct CubeEdge {
    std::uint32_t tail, head;  // vertex indices
    std::size_t position;      // 1-based crossing index of the star
    std::string star_word;
    EdgeKind kind;
    int sign;
};

struct CubeStats {
    std::array<std::size_t, kTheoremCaseCount> cases{};
    std::size_t steps = 0;
};

struct Cube {
    GoodDiagram diagram;
    std::vector<std::size_t> order;  // resolution order, 1-based crossings
    std::vector<CubeVertex> vertices;  // indexed by word read as a binary number, letter 1 most significant
    std::vector<CubeEdge> edges;
    CubeStats stats;

    std::size_t k() const { return diagram.k(); }
    const CubeVertex& vertex(const std::string& word) const;
    std::uint32_t vertex_index(const std::string& word) const;
};

// Empty order means 1..k. Theorem and trace are both evaluated at every step.
Cube build_cube(const GoodDiagram& diagram, std::vector<std::size_t> order = {});
Cube build_cube_serial(const GoodDiagram& diagram, std::vector<std::size_t> order = {});

std::vector<DihedralFactor> vertex_group(const SmoothingState& state);
std::vector<DihedralFactor> vertex_group(const Permutation& sigma);

enum class RelationStatus { Holds, Fails, Undefined };
const char* relation_status_name(RelationStatus s);

struct RelationCheck {
    std::string name;
    RelationStatus status;
    std::string lhs, rhs;
};

struct RelationReport {
    EdgeKind kind;
    int epsilon;
    Index a, b;  // {a, b} = {v_l, w_l} with sigma''(a) = b
    bool tail_ij_distinct;  // i_l and j_l on distinct circles of the tail
    std::string subcase;
    std::vector<RelationCheck> checks;

    bool consistent() const;  // kind matches the clause, no identity fails
};

RelationReport edge_relations(const Cube& cube, const CubeEdge& edge);

struct PairCheck {
    std::string clause;
    bool holds;
};

// Direct relation between the two resolutions of crossing l from a partial state.
PairCheck check_resolution_pair(const GoodDiagram& diagram, const SmoothingState& state, std::size_t l);

// Every partial state reachable from the initial state, every unresolved crossing.
struct PairSummary {
    std::size_t evaluated = 0;
    std::size_t failures = 0;
    std::string first_failure;
};
PairSummary resolution_pair_sweep(const GoodDiagram& diagram);

std::string word_from_index(std::uint32_t index, std::size_t k);

}  // namespace polyknot
