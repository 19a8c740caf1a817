#include "polyknot/perm.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace polyknot {

namespace {

void require_same_size(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("permutation size mismatch: " + std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()));
    }
}

}  // namespace

Permutation::Permutation(std::vector<Index> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Index x : images_) {
        if (x < 1 || static_cast<std::size_t>(x) > images_.size() || seen[x - 1]) {
            throw std::invalid_argument("not a bijection on 1.." + std::to_string(images_.size()));
        }
        seen[x - 1] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<Index> im(n);
    for (std::size_t x = 0; x < n; ++x) im[x] = static_cast<Index>(x + 1);
    Permutation p;
    p.images_ = std::move(im);
    return p;
}

Permutation Permutation::transposition(std::size_t n, Index a, Index b) {
    Permutation p = identity(n);
    if (a < 1 || b < 1 || static_cast<std::size_t>(a) > n || static_cast<std::size_t>(b) > n) {
        throw std::out_of_range("transposition index out of range");
    }
    std::swap(p.images_[a - 1], p.images_[b - 1]);
    return p;
}

Permutation Permutation::from_cycles(std::size_t n, const std::vector<Cycle>& cycles) {
    Permutation p = identity(n);
    std::vector<bool> used(n, false);
    for (const auto& c : cycles) {
        for (std::size_t t = 0; t < c.size(); ++t) {
            Index x = c[t];
            if (x < 1 || static_cast<std::size_t>(x) > n) throw std::out_of_range("cycle entry out of range");
            if (used[x - 1]) throw std::invalid_argument("entry " + std::to_string(x) + " repeated in cycles");
            used[x - 1] = true;
            p.images_[x - 1] = c[(t + 1) % c.size()];
        }
    }
    return p;
}

Permutation Permutation::parse(std::string_view text, std::size_t n) {
    std::vector<Cycle> cycles;
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("bad cycle notation at column " + std::to_string(pos + 1) + ": " + why);
    };
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    Index largest = 0;
    skip_ws();
    while (pos < text.size()) {
        if (text[pos] != '(') fail("expected '('");
        ++pos;
        Cycle c;
        skip_ws();
        if (pos < text.size() && text[pos] == ')') {
            ++pos;
            skip_ws();
            continue;
        }
        while (true) {
            skip_ws();
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (start == pos) fail("expected a positive integer");
            Index x = std::stoi(std::string(text.substr(start, pos - start)));
            if (x < 1) fail("indices start at 1");
            c.push_back(x);
            largest = std::max(largest, x);
            skip_ws();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < text.size() && text[pos] == ')') {
                ++pos;
                break;
            }
            fail("expected ',' or ')'");
        }
        cycles.push_back(std::move(c));
        skip_ws();
    }
    if (n == 0) n = static_cast<std::size_t>(largest);
    if (static_cast<std::size_t>(largest) > n) fail("entry exceeds degree " + std::to_string(n));
    return from_cycles(n, cycles);
}

Cycle Permutation::cycle_of(Index x) const {
    Cycle c{x};
    for (Index y = (*this)(x); y != x; y = (*this)(y)) c.push_back(y);
    return c;
}

bool Permutation::same_cycle(Index a, Index b) const {
    if (a == b) return true;
    for (Index y = (*this)(a); y != a; y = (*this)(y)) {
        if (y == b) return true;
    }
    return false;
}

std::size_t Permutation::cycle_count() const {
    std::vector<bool> seen(size(), false);
    std::size_t count = 0;
    for (std::size_t s = 0; s < size(); ++s) {
        if (seen[s]) continue;
        ++count;
        for (std::size_t y = s; !seen[y]; y = static_cast<std::size_t>(images_[y] - 1)) seen[y] = true;
    }
    return count;
}

bool Permutation::is_involution() const {
    for (std::size_t x = 0; x < size(); ++x) {
        if (images_[static_cast<std::size_t>(images_[x] - 1)] != static_cast<Index>(x + 1)) return false;
    }
    return true;
}

std::string Permutation::to_string() const {
    std::vector<Cycle> nontrivial;
    for (auto& c : cycle_decomposition(*this)) {
        if (c.size() > 1) nontrivial.push_back(std::move(c));
    }
    if (nontrivial.empty()) return "()";
    return format_cycles(nontrivial);
}

std::string format_cycles(const std::vector<Cycle>& cycles) {
    std::ostringstream out;
    for (const auto& c : cycles) {
        out << '(';
        for (std::size_t t = 0; t < c.size(); ++t) {
            if (t) out << ',';
            out << c[t];
        }
        out << ')';
    }
    return out.str();
}

Permutation compose(const Permutation& a, const Permutation& b) {
    require_same_size(a, b);
    std::vector<Index> im(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) im[x] = a(b(static_cast<Index>(x + 1)));
    return Permutation(std::move(im));
}

Permutation inverse(const Permutation& a) {
    std::vector<Index> im(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) im[a.images()[x] - 1] = static_cast<Index>(x + 1);
    return Permutation(std::move(im));
}

Permutation conjugate(const Permutation& a, const Permutation& g) {
    return compose(compose(g, a), inverse(g));
}

std::vector<Cycle> cycle_decomposition(const Permutation& a) {
    std::vector<Cycle> out;
    std::vector<bool> seen(a.size(), false);
    for (Index s = 1; s <= static_cast<Index>(a.size()); ++s) {
        if (seen[s - 1]) continue;
        Cycle c = a.cycle_of(s);
        for (Index x : c) seen[x - 1] = true;
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Cycle> cycle_partition(const Permutation& a) {
    auto cycles = cycle_decomposition(a);
    for (auto& c : cycles) std::sort(c.begin(), c.end());
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

bool equal_up_to_reversal(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) return false;
    const Permutation b_inv = inverse(b);
    for (const auto& c : cycle_decomposition(a)) {
        bool forward = true, backward = true;
        for (Index x : c) {
            forward = forward && a(x) == b(x);
            backward = backward && a(x) == b_inv(x);
        }
        if (!forward && !backward) return false;
    }
    return true;
}

Permutation reverse_cycle(const Permutation& a, Index x) {
    std::vector<Index> im = a.images();
    Cycle c = a.cycle_of(x);
    for (std::size_t t = 0; t < c.size(); ++t) im[c[t] - 1] = c[(t + c.size() - 1) % c.size()];
    return Permutation(std::move(im));
}

bool DihedralFactor::contains(Index x) const {
    return std::find(cycle.begin(), cycle.end(), x) != cycle.end();
}

Permutation DihedralFactor::rotation(std::size_t n) const { return Permutation::from_cycles(n, {cycle}); }

DihedralFactor factor_of(const Permutation& sigma, Index x) {
    Cycle c = sigma.cycle_of(x);
    std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
    return DihedralFactor{std::move(c)};
}

Permutation reflection_xi(const DihedralFactor& factor, std::size_t n, Index a, Index b) {
    const auto& c = factor.cycle;
    auto pa = std::find(c.begin(), c.end(), a);
    auto pb = std::find(c.begin(), c.end(), b);
    if (pa == c.end() || pb == c.end()) {
        throw std::invalid_argument("reflection: " + std::to_string(a) + " and " + std::to_string(b) +
                                    " are not both members of " + format_cycles({c}));
    }
    if (a == b) throw std::invalid_argument("reflection: no unique reflection for a == b");
    const long d = static_cast<long>(c.size());
    const long s = ((pa - c.begin()) + (pb - c.begin())) % d;
    std::vector<Index> im = Permutation::identity(n).images();
    for (long k = 0; k < d; ++k) im[c[k] - 1] = c[((s - k) % d + d) % d];
    return Permutation(std::move(im));
}

Permutation reflection_xi(const Permutation& sigma, Index a, Index b) {
    return reflection_xi(factor_of(sigma, a), sigma.size(), a, b);
}

Permutation canonical_involution(const DihedralFactor& factor, std::size_t n) {
    const auto& c = factor.cycle;
    std::vector<Index> im = Permutation::identity(n).images();
    const std::size_t d = c.size();
    for (std::size_t k = 0; k < d; ++k) im[c[k] - 1] = c[d - 1 - k];
    return Permutation(std::move(im));
}

}  // namespace polyknot
