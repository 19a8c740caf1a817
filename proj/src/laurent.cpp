#include "polyknot/laurent.hpp"

#include <cstdlib>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace polyknot {

LaurentPoly LaurentPoly::monomial(long long coeff, int exponent) {
    LaurentPoly p;
    p.add_term(coeff, exponent);
    return p;
}

LaurentPoly LaurentPoly::q_plus_q_inverse() { return monomial(1, 1) + monomial(1, -1); }

long long LaurentPoly::coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? 0 : it->second;
}

int LaurentPoly::min_degree() const {
    if (is_zero()) throw std::domain_error("zero polynomial has no degree");
    return terms_.begin()->first;
}

int LaurentPoly::max_degree() const {
    if (is_zero()) throw std::domain_error("zero polynomial has no degree");
    return terms_.rbegin()->first;
}

void LaurentPoly::add_term(long long coeff, int exponent) {
    if (coeff == 0) return;
    long long& c = terms_[exponent];
    c += coeff;
    if (c == 0) terms_.erase(exponent);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (auto [e, c] : o.terms_) add_term(c, e);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (auto [e, c] : o.terms_) add_term(-c, e);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (auto [ea, ca] : a.terms_) {
        for (auto [eb, cb] : b.terms_) r.add_term(ca * cb, ea + eb);
    }
    return r;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
    LaurentPoly r = monomial(1, 0), base = *this;
    while (e) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

std::string LaurentPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto [e, c] : terms_) {
        if (first) {
            out << c << "*q^" << e;
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ") << std::llabs(c) << "*q^" << e;
        }
    }
    return out.str();
}

LaurentPoly LaurentPoly::parse(const std::string& text) {
    LaurentPoly p;
    std::string s;
    for (char ch : text) {
        if (ch != ' ') s += ch;
    }
    if (s == "0") return p;
    static const std::regex term(R"(([+-]?)(\d+)\*q\^(-?\d+))");
    auto it = std::sregex_iterator(s.begin(), s.end(), term);
    std::size_t consumed = 0;
    for (; it != std::sregex_iterator(); ++it) {
        if (static_cast<std::size_t>(it->position()) != consumed) break;
        long long c = std::stoll((*it)[2]);
        if ((*it)[1] == "-") c = -c;
        p.add_term(c, std::stoi((*it)[3]));
        consumed += static_cast<std::size_t>(it->length());
    }
    if (consumed != s.size() || s.empty()) throw std::invalid_argument("malformed Laurent polynomial: " + text);
    return p;
}

LaurentPoly divide_by_q_plus_q_inverse(const LaurentPoly& p) {
    LaurentPoly rest = p, quotient;
    if (p.is_zero()) return quotient;
    const int floor = p.min_degree();
    while (!rest.is_zero()) {
        int top = rest.max_degree();
        if (top < floor + 2) throw std::domain_error("not divisible by q + q^-1: " + p.to_string());
        long long c = rest.coeff(top);
        quotient.add_term(c, top - 1);
        rest.add_term(-c, top);
        rest.add_term(-c, top - 2);
    }
    return quotient;
}

std::string substitute_t(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto [e, c] : p.terms()) {
        long long coeff = (e % 2 == 0) ? c : -c;
        std::string expo = (e % 2 == 0) ? std::to_string(e / 2) : "(" + std::to_string(e) + "/2)";
        if (first) {
            out << coeff << "*t^" << expo;
            first = false;
        } else {
            out << (coeff < 0 ? " - " : " + ") << std::llabs(coeff) << "*t^" << expo;
        }
    }
    return out.str();
}

}  // namespace polyknot
