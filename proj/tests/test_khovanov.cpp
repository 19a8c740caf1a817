#include "polyknot/khovanov.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace polyknot;

namespace {

Cube cube_of(const char* name) { return build_cube(build_good_diagram(fixture(name), up())); }

LaurentPoly L(const char* s) { return LaurentPoly::parse(s); }

// homology from dense ranks of the full differentials restricted to each q-degree
HomologyTable dense_homology(const KhovanovComplex& cx) {
    HomologyTable out;
    auto rank_of = [&](std::size_t c, int j) -> std::size_t {
        if (c >= cx.diffs.size()) return 0;
        std::vector<std::uint32_t> cols, rows;
        std::map<std::uint32_t, std::size_t> col_at, row_at;
        for (std::uint32_t t = 0; t < cx.columns[c].basis.size(); ++t) {
            if (cx.columns[c].qdeg[t] == j) col_at[t] = col_at.size();
        }
        for (std::uint32_t t = 0; t < cx.columns[c + 1].basis.size(); ++t) {
            if (cx.columns[c + 1].qdeg[t] == j) row_at[t] = row_at.size();
        }
        if (col_at.empty() || row_at.empty()) return 0;
        std::vector<std::vector<mpz_class>> m(row_at.size(), std::vector<mpz_class>(col_at.size(), 0));
        for (const auto& e : cx.diffs[c]) {
            if (col_at.count(e.col)) {
                REQUIRE(row_at.count(e.row));
                m[row_at[e.row]][col_at[e.col]] += e.value;
            }
        }
        return dense_rank(m);
    };
    for (std::size_t c = 0; c < cx.columns.size(); ++c) {
        std::set<int> js(cx.columns[c].qdeg.begin(), cx.columns[c].qdeg.end());
        for (int j : js) {
            long dim = std::count(cx.columns[c].qdeg.begin(), cx.columns[c].qdeg.end(), j);
            long h = dim - static_cast<long>(rank_of(c, j)) - (c > 0 ? static_cast<long>(rank_of(c - 1, j)) : 0);
            if (h) out[{cx.columns[c].degree, j}] = h;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("laurent polynomials") {
    LaurentPoly j = L("1*q^1 + 1*q^3 + 1*q^5 - 1*q^9");
    CHECK(j.to_string() == "1*q^1 + 1*q^3 + 1*q^5 - 1*q^9");
    CHECK(LaurentPoly().to_string() == "0");
    CHECK(LaurentPoly::q_plus_q_inverse().pow(2) == L("1*q^-2 + 2*q^0 + 1*q^2"));
    CHECK(divide_by_q_plus_q_inverse(LaurentPoly::q_plus_q_inverse()) == LaurentPoly::monomial(1, 0));
    LaurentPoly quo = divide_by_q_plus_q_inverse(j);
    CHECK(quo == L("1*q^2 + 1*q^6 - 1*q^8"));
    CHECK(quo * LaurentPoly::q_plus_q_inverse() == j);
    CHECK_THROWS_AS(divide_by_q_plus_q_inverse(LaurentPoly::monomial(1, 0)), std::domain_error);
    CHECK_THROWS_AS(L("1*q^"), std::invalid_argument);
}

TEST_CASE("state sum") {
    CHECK(jones_state_sum(cube_of("square.link")) == LaurentPoly::q_plus_q_inverse());
    CHECK(jones_state_sum(cube_of("two_squares.link")) == LaurentPoly::q_plus_q_inverse().pow(2));
    LaurentPoly t = jones_state_sum(cube_of("trefoil9.link"));
    CHECK(t == L("1*q^1 + 1*q^3 + 1*q^5 - 1*q^9"));
    CHECK(normalized_jones(t) == L("1*q^2 + 1*q^6 - 1*q^8"));
    CHECK(normalized_jones(LaurentPoly::q_plus_q_inverse()) == LaurentPoly::monomial(1, 0));
}

TEST_CASE("chain complex shape") {
    KhovanovComplex unknot = build_complex(cube_of("square.link"));
    REQUIRE(unknot.columns.size() == 1);
    CHECK(unknot.columns[0].basis.size() == 2);
    CHECK(std::set<int>(unknot.columns[0].qdeg.begin(), unknot.columns[0].qdeg.end()) == std::set<int>{-1, 1});
    CHECK(unknot.diffs.empty());

    KhovanovComplex tre = build_complex(cube_of("trefoil9.link"));
    REQUIRE(tre.columns.size() == 4);
    std::vector<std::size_t> dims;
    for (const auto& c : tre.columns) dims.push_back(c.basis.size());
    CHECK(dims == std::vector<std::size_t>{4, 6, 12, 8});
    for (const auto& d : tre.diffs) {
        for (const auto& e : d) CHECK((e.value == 1 || e.value == -1));
    }
}

TEST_CASE("differential squares to zero; the flipped split map does not") {
    for (const char* name : {"square.link", "two_squares.link", "trefoil9.link", "whitehead12.link", "kink5.link",
                             "riii.link"}) {
        INFO(name);
        Cube c = cube_of(name);
        CHECK(d_squared_zero(build_complex(c)));
        CHECK(first_commuting_face(c).empty());
    }
    CHECK_FALSE(d_squared_zero(build_complex(cube_of("trefoil9.link"), Frobenius::FlippedSplitSign)));
}

TEST_CASE("homology tables") {
    HomologyTable unknot{{{0, -1}, 1}, {{0, 1}, 1}};
    CHECK(homology(build_complex(cube_of("square.link"))) == unknot);
    CHECK(homology(build_complex(cube_of("kink5.link"))) == unknot);
    CHECK(homology(build_complex(cube_of("two_squares.link"))) == HomologyTable{{{0, -2}, 1}, {{0, 0}, 2}, {{0, 2}, 1}});
    HomologyTable tre{{{0, 1}, 1}, {{0, 3}, 1}, {{2, 5}, 1}, {{3, 9}, 1}};
    CHECK(homology(build_complex(cube_of("trefoil9.link"))) == tre);
    CHECK(homology(build_complex(cube_of("riii.link"))) == homology(build_complex(cube_of("riii_after.link"))));
}

TEST_CASE("homology agrees with dense ranks, the serial kernel and the state sum") {
    for (const char* name : {"two_squares.link", "trefoil9.link", "whitehead12.link", "riii.link"}) {
        INFO(name);
        Cube c = cube_of(name);
        KhovanovComplex cx = build_complex(c);
        HomologyTable h = homology(cx);
        CHECK(h == homology_serial(cx));
        CHECK(h == dense_homology(cx));
        CHECK(euler_characteristic(h) == jones_state_sum(c));
        CHECK(chain_euler_characteristic(cx) == jones_state_sum(c));
    }
}

TEST_CASE("sparse rank against the dense oracle") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 300; ++t) {
        std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
        int density = 1 + static_cast<int>(rng() % 4);
        std::vector<std::vector<mpz_class>> dense(r, std::vector<mpz_class>(c, 0));
        std::vector<SparseRow> rows(r);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::uint32_t j = 0; j < c; ++j) {
                if (static_cast<int>(rng() % 4) >= density) continue;
                long v = static_cast<long>(rng() % 7) - 3;
                if (!v) continue;
                dense[i][j] = v;
                rows[i].push_back({j, mpz_class(v)});
            }
        }
        // rank deficiency on purpose: duplicate a combination of rows
        if (r > 2) {
            dense[r - 1] = dense[0];
            rows[r - 1] = rows[0];
        }
        CHECK(sparse_rank(rows, c) == dense_rank(dense));
    }
    CHECK(dense_rank({{2, 4}, {1, 2}}) == 1);
    CHECK(sparse_rank({{{0, 2}, {1, 4}}, {{0, 1}, {1, 2}}}, 2) == 1);
    CHECK(sparse_rank({{{0, 2}}, {{1, 3}}}, 2) == 2);
}
