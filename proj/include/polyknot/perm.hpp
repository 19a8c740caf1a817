#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace polyknot {

// Vertex and crossing indices are 1-based everywhere.
using Index = int;
using Cycle = std::vector<Index>;

class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<Index> images);

    static Permutation identity(std::size_t n);
    static Permutation transposition(std::size_t n, Index a, Index b);
    static Permutation from_cycles(std::size_t n, const std::vector<Cycle>& cycles);
    // "(1,9,3)(4,11,7)"; "()" is the identity. n = 0 infers the degree from the largest entry.
    static Permutation parse(std::string_view text, std::size_t n = 0);

    std::size_t size() const { return images_.size(); }
    Index operator()(Index x) const { return images_[static_cast<std::size_t>(x - 1)]; }
    const std::vector<Index>& images() const { return images_; }

    // The cycle through x, starting at x and following the permutation.
    Cycle cycle_of(Index x) const;
    bool same_cycle(Index a, Index b) const;
    std::size_t cycle_count() const;
    bool is_involution() const;

    // Canonical text: min-first cycles sorted by minimum, fixed points omitted.
    std::string to_string() const;

    bool operator==(const Permutation& other) const = default;

private:
    std::vector<Index> images_;
};

// compose(a, b) applies b first, then a.
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& a);
// g a g^-1
Permutation conjugate(const Permutation& a, const Permutation& g);

// Min-first cycles sorted by minimum; fixed points appear as 1-cycles.
std::vector<Cycle> cycle_decomposition(const Permutation& a);
// Cycles as sorted member sets, sorted; forgets orientation.
std::vector<Cycle> cycle_partition(const Permutation& a);
bool equal_up_to_reversal(const Permutation& a, const Permutation& b);
// Reverses the cycle containing x, leaving every other cycle alone.
Permutation reverse_cycle(const Permutation& a, Index x);

std::string format_cycles(const std::vector<Cycle>& cycles);

struct DihedralFactor {
    Cycle cycle;  // min-first, in the direction of the rotation

    std::size_t order() const { return cycle.size(); }
    bool contains(Index x) const;
    Permutation rotation(std::size_t n) const;
};

// The factor whose cycle is the cycle of sigma containing x.
DihedralFactor factor_of(const Permutation& sigma, Index x);

// The reflection of the factor's polygon exchanging a and b.
Permutation reflection_xi(const DihedralFactor& factor, std::size_t n, Index a, Index b);
Permutation reflection_xi(const Permutation& sigma, Index a, Index b);

// <c1,cd><c2,c(d-1)>...
Permutation canonical_involution(const DihedralFactor& factor, std::size_t n);

}  // namespace polyknot
