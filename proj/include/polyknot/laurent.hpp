#pragma once

#include <map>
#include <string>

namespace polyknot {

// Integer Laurent polynomial in q. Zero coefficients are never stored.
class LaurentPoly {
public:
    LaurentPoly() = default;
    static LaurentPoly monomial(long long coeff, int exponent);
    static LaurentPoly q_plus_q_inverse();

    const std::map<int, long long>& terms() const { return terms_; }
    long long coeff(int exponent) const;
    bool is_zero() const { return terms_.empty(); }
    int min_degree() const;
    int max_degree() const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    void add_term(long long coeff, int exponent);

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    bool operator==(const LaurentPoly& o) const = default;

    LaurentPoly pow(unsigned e) const;

    // "1*q^1 + 1*q^3 - 1*q^9", ascending exponents; "0" for zero.
    std::string to_string() const;
    static LaurentPoly parse(const std::string& text);

private:
    std::map<int, long long> terms_;
};

// Exact quotient by q + q^-1; throws std::domain_error on a nonzero remainder.
LaurentPoly divide_by_q_plus_q_inverse(const LaurentPoly& p);

// Text form after q = -t^(1/2); exponents may be half-integers.
std::string substitute_t(const LaurentPoly& p);

}  // namespace polyknot
