#pragma once

#include "polyknot/cube.hpp"
#include "polyknot/laurent.hpp"

#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

namespace polyknot {

LaurentPoly jones_state_sum(const Cube& cube);
LaurentPoly normalized_jones(const LaurentPoly& unnormalized);

// Basis element: a cube vertex and a label in {+,-}^c, circle t at bit (c-1-t), set bit = x-.
struct Generator {
    std::uint32_t vertex;
    std::uint32_t label;
};

struct Entry {
    std::uint32_t row;  // index in the next column
    std::uint32_t col;  // index in this column
    int value;
};

struct ChainColumn {
    int degree = 0;  // homological degree i
    std::vector<Generator> basis;
    std::vector<int> qdeg;
};

struct KhovanovComplex {
    int k_plus = 0, k_minus = 0;
    std::vector<ChainColumn> columns;          // degrees -k_minus .. k_plus
    std::vector<std::vector<Entry>> diffs;     // diffs[c]: columns[c] -> columns[c+1]

    int min_degree() const { return -k_minus; }
    int max_degree() const { return k_plus; }
    const ChainColumn& column(int i) const { return columns.at(static_cast<std::size_t>(i + k_minus)); }
    // total dimension per (i, j)
    std::map<std::pair<int, int>, long> dimensions() const;
};

// Image of one basis element of the tail under the edge map, with the edge sign applied.
std::vector<std::pair<std::uint32_t, int>> edge_map(const Cube& cube, const CubeEdge& edge, std::uint32_t label);

// FlippedSplitSign is a deliberately wrong split map, kept as a negative control.
enum class Frobenius { Standard, FlippedSplitSign };

KhovanovComplex build_complex(const Cube& cube, Frobenius variant = Frobenius::Standard);

// true iff d^{i+1} d^i = 0 for every i
bool d_squared_zero(const KhovanovComplex& complex);
// Every square face of the cube anticommutes; returns the first offending face or empty.
std::string first_commuting_face(const Cube& cube);

using HomologyTable = std::map<std::pair<int, int>, long>;

HomologyTable homology(const KhovanovComplex& complex);         // blocks ranked in parallel
HomologyTable homology_serial(const KhovanovComplex& complex);  // reference

LaurentPoly euler_characteristic(const HomologyTable& table);
LaurentPoly chain_euler_characteristic(const KhovanovComplex& complex);

// Exact rank kernels.
using SparseRow = std::vector<std::pair<std::uint32_t, mpz_class>>;
std::size_t sparse_rank(std::vector<SparseRow> rows, std::size_t ncols);
std::size_t dense_rank(std::vector<std::vector<mpz_class>> m);  // fraction-free (Bareiss)

class ComplexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace polyknot
