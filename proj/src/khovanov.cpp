#include "polyknot/khovanov.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <queue>
#include <unordered_map>

namespace polyknot {

LaurentPoly jones_state_sum(const Cube& cube) {
    const int kp = static_cast<int>(cube.diagram.k_plus());
    const int km = static_cast<int>(cube.diagram.k_minus());
    const LaurentPoly loop = LaurentPoly::q_plus_q_inverse();
    LaurentPoly total;
    for (std::uint32_t v = 0; v < cube.vertices.size(); ++v) {
        int r = std::popcount(v);
        long long sign = ((r + km) % 2) ? -1 : 1;
        total += LaurentPoly::monomial(sign, r + kp - 2 * km) *
                 loop.pow(static_cast<unsigned>(cube.vertices[v].circles));
    }
    return total;
}

LaurentPoly normalized_jones(const LaurentPoly& unnormalized) { return divide_by_q_plus_q_inverse(unnormalized); }

std::map<std::pair<int, int>, long> KhovanovComplex::dimensions() const {
    std::map<std::pair<int, int>, long> dims;
    for (const auto& col : columns) {
        for (int j : col.qdeg) ++dims[{col.degree, j}];
    }
    return dims;
}

namespace {

// circle index of every vertex index, circles in canonical order
std::vector<int> circle_index(const CubeVertex& v) {
    std::vector<int> idx(v.sigma.size() + 1, -1);
    for (std::size_t t = 0; t < v.groups.size(); ++t) {
        for (Index x : v.groups[t].cycle) idx[x] = static_cast<int>(t);
    }
    return idx;
}

struct EdgeMapper {
    const Cube& cube;
    std::vector<std::vector<int>> circles;  // per vertex
    Frobenius variant = Frobenius::Standard;

    explicit EdgeMapper(const Cube& c, Frobenius f = Frobenius::Standard) : cube(c), variant(f) {
        circles.resize(c.vertices.size());
        for (std::size_t v = 0; v < c.vertices.size(); ++v) circles[v] = circle_index(c.vertices[v]);
    }

    std::vector<std::pair<std::uint32_t, int>> apply(const CubeEdge& e, std::uint32_t label) const {
        const auto& tail = cube.vertices[e.tail];
        const auto& head = cube.vertices[e.head];
        const auto& ct = circles[e.tail];
        const auto& chd = circles[e.head];
        const int nt = static_cast<int>(tail.circles), nh = static_cast<int>(head.circles);
        const auto& c = cube.diagram.crossing(e.position);
        std::vector<int> tt, th;
        for (Index x : {c.i, c.j, c.v, c.w}) {
            tt.push_back(ct[x]);
            th.push_back(chd[x]);
        }
        std::sort(tt.begin(), tt.end());
        tt.erase(std::unique(tt.begin(), tt.end()), tt.end());
        std::sort(th.begin(), th.end());
        th.erase(std::unique(th.begin(), th.end()), th.end());
        const bool merge = e.kind == EdgeKind::Merge;
        if ((merge && (tt.size() != 2 || th.size() != 1)) || (!merge && (tt.size() != 1 || th.size() != 2))) {
            throw ComplexError("edge " + e.star_word + ": circle match-up disagrees with its kind");
        }
        auto minus_t = [&](int t) { return (label >> (nt - 1 - t)) & 1u; };
        auto bit_h = [&](int h) { return 1u << (nh - 1 - h); };
        std::uint32_t base = 0;
        for (int t = 0; t < nt; ++t) {
            if (std::find(tt.begin(), tt.end(), t) != tt.end()) continue;
            int h = chd[tail.groups[t].cycle.front()];
            if (minus_t(t)) base |= bit_h(h);
        }
        std::vector<std::pair<std::uint32_t, int>> out;
        if (merge) {
            unsigned minus = minus_t(tt[0]) + minus_t(tt[1]);
            if (minus == 0) out.emplace_back(base, e.sign);
            if (minus == 1) out.emplace_back(base | bit_h(th[0]), e.sign);
        } else {
            if (minus_t(tt[0])) {
                out.emplace_back(base | bit_h(th[0]) | bit_h(th[1]), e.sign);
            } else {
                out.emplace_back(base | bit_h(th[0]), e.sign);
                out.emplace_back(base | bit_h(th[1]), variant == Frobenius::Standard ? e.sign : -e.sign);
            }
        }
        return out;
    }
};

int label_degree(std::uint32_t label, std::size_t circles) {
    int minus = std::popcount(label);
    return static_cast<int>(circles) - 2 * minus;
}

}  // namespace

std::vector<std::pair<std::uint32_t, int>> edge_map(const Cube& cube, const CubeEdge& edge, std::uint32_t label) {
    return EdgeMapper(cube).apply(edge, label);
}

KhovanovComplex build_complex(const Cube& cube, Frobenius variant) {
    KhovanovComplex cx;
    const std::size_t k = cube.k();
    cx.k_plus = static_cast<int>(cube.diagram.k_plus());
    cx.k_minus = static_cast<int>(cube.diagram.k_minus());
    cx.columns.resize(k + 1);
    std::vector<std::uint32_t> offset(cube.vertices.size());
    for (std::size_t r = 0; r <= k; ++r) cx.columns[r].degree = static_cast<int>(r) - cx.k_minus;
    for (std::uint32_t v = 0; v < cube.vertices.size(); ++v) {
        const int r = std::popcount(v);
        auto& col = cx.columns[static_cast<std::size_t>(r)];
        offset[v] = static_cast<std::uint32_t>(col.basis.size());
        const std::size_t c = cube.vertices[v].circles;
        for (std::uint32_t label = 0; label < (1u << c); ++label) {
            col.basis.push_back({v, label});
            col.qdeg.push_back(label_degree(label, c) + r + cx.k_plus - 2 * cx.k_minus);
        }
    }
    EdgeMapper mapper(cube, variant);
    cx.diffs.resize(k);
    for (const auto& e : cube.edges) {
        const int r = std::popcount(e.tail);
        auto& d = cx.diffs[static_cast<std::size_t>(r)];
        const auto& src = cx.columns[static_cast<std::size_t>(r)];
        const auto& dst = cx.columns[static_cast<std::size_t>(r + 1)];
        const std::size_t c = cube.vertices[e.tail].circles;
        for (std::uint32_t label = 0; label < (1u << c); ++label) {
            const std::uint32_t col = offset[e.tail] + label;
            for (auto [target, value] : mapper.apply(e, label)) {
                const std::uint32_t row = offset[e.head] + target;
                if (dst.qdeg[row] != src.qdeg[col]) {
                    throw ComplexError("edge " + e.star_word + " does not preserve the q-grading");
                }
                d.push_back({row, col, value});
            }
        }
    }
    for (auto& d : cx.diffs) {
        std::sort(d.begin(), d.end(), [](const Entry& a, const Entry& b) {
            return a.col != b.col ? a.col < b.col : a.row < b.row;
        });
    }
    return cx;
}

bool d_squared_zero(const KhovanovComplex& cx) {
    for (std::size_t c = 0; c + 1 < cx.diffs.size(); ++c) {
        const auto& first = cx.diffs[c];
        const auto& second = cx.diffs[c + 1];
        // second is sorted by column; index its column starts
        std::vector<std::size_t> start(cx.columns[c + 1].basis.size() + 1, 0);
        for (const auto& e : second) ++start[e.col + 1];
        for (std::size_t t = 1; t < start.size(); ++t) start[t] += start[t - 1];
        std::size_t t = 0;
        while (t < first.size()) {
            std::uint32_t col = first[t].col;
            std::unordered_map<std::uint32_t, long> acc;
            for (; t < first.size() && first[t].col == col; ++t) {
                for (std::size_t u = start[first[t].row]; u < start[first[t].row + 1]; ++u) {
                    acc[second[u].row] += static_cast<long>(first[t].value) * second[u].value;
                }
            }
            for (auto [row, v] : acc) {
                if (v != 0) return false;
            }
        }
    }
    return true;
}

std::string first_commuting_face(const Cube& cube) {
    const std::size_t k = cube.k();
    std::unordered_map<std::uint64_t, std::size_t> edge_at;
    for (std::size_t t = 0; t < cube.edges.size(); ++t) {
        edge_at[(static_cast<std::uint64_t>(cube.edges[t].tail) << 8) | cube.edges[t].position] = t;
    }
    auto edge = [&](std::uint32_t tail, std::size_t l) -> const CubeEdge& {
        return cube.edges[edge_at.at((static_cast<std::uint64_t>(tail) << 8) | l)];
    };
    EdgeMapper mapper(cube);
    for (std::uint32_t v = 0; v < cube.vertices.size(); ++v) {
        for (std::size_t l = 1; l <= k; ++l) {
            const std::uint32_t bl = 1u << (k - l);
            if (v & bl) continue;
            for (std::size_t m = l + 1; m <= k; ++m) {
                const std::uint32_t bm = 1u << (k - m);
                if (v & bm) continue;
                for (std::uint32_t label = 0; label < (1u << cube.vertices[v].circles); ++label) {
                    std::map<std::uint32_t, long> acc;
                    for (auto [a, s] : mapper.apply(edge(v, l), label)) {
                        for (auto [b, t] : mapper.apply(edge(v | bl, m), a)) acc[b] += s * t;
                    }
                    for (auto [a, s] : mapper.apply(edge(v, m), label)) {
                        for (auto [b, t] : mapper.apply(edge(v | bm, l), a)) acc[b] += s * t;
                    }
                    for (auto [b, x] : acc) {
                        if (x != 0) {
                            return "face at " + cube.vertices[v].word + " over crossings " + std::to_string(l) +
                                   "," + std::to_string(m);
                        }
                    }
                }
            }
        }
    }
    return "";
}

std::size_t dense_rank(std::vector<std::vector<mpz_class>> m) {
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m[0].size();
    std::size_t rank = 0;
    mpz_class prev = 1;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t t = c + 1; t < cols; ++t) {
                m[r][t] = (m[rank][c] * m[r][t] - m[r][c] * m[rank][t]) / prev;
            }
            m[r][c] = 0;
        }
        prev = m[rank][c];
        ++rank;
    }
    return rank;
}

std::size_t sparse_rank(std::vector<SparseRow> rows, std::size_t ncols) {
    std::vector<std::vector<std::uint32_t>> col_rows(ncols);
    for (std::uint32_t r = 0; r < rows.size(); ++r) {
        auto& row = rows[r];
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        row.erase(std::remove_if(row.begin(), row.end(), [](const auto& e) { return e.second == 0; }), row.end());
        for (const auto& e : row) col_rows[e.first].push_back(r);
    }
    using Item = std::pair<std::size_t, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (std::uint32_t c = 0; c < ncols; ++c) {
        if (!col_rows[c].empty()) pq.emplace(col_rows[c].size(), c);
    }
    std::vector<char> alive(rows.size(), 1), done(ncols, 0);
    auto value_at = [&](std::uint32_t r, std::uint32_t c) -> const mpz_class* {
        const auto& row = rows[r];
        auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::uint32_t x) { return e.first < x; });
        return (it != row.end() && it->first == c) ? &it->second : nullptr;
    };
    std::size_t rank = 0;
    SparseRow merged;
    while (!pq.empty()) {
        auto [count, c] = pq.top();
        pq.pop();
        if (done[c]) continue;
        auto& cr = col_rows[c];
        std::sort(cr.begin(), cr.end());
        cr.erase(std::unique(cr.begin(), cr.end()), cr.end());
        cr.erase(std::remove_if(cr.begin(), cr.end(), [&](std::uint32_t r) { return !alive[r] || !value_at(r, c); }),
                 cr.end());
        if (cr.empty()) {
            done[c] = 1;
            continue;
        }
        if (cr.size() != count) {
            pq.emplace(cr.size(), c);
            continue;
        }
        std::uint32_t p = cr.front();
        for (std::uint32_t r : cr) {
            bool unit_r = abs(*value_at(r, c)) == 1, unit_p = abs(*value_at(p, c)) == 1;
            if ((unit_r && !unit_p) || (unit_r == unit_p && rows[r].size() < rows[p].size())) p = r;
        }
        const mpz_class pv = *value_at(p, c);
        const bool unit = abs(pv) == 1;
        const SparseRow& prow = rows[p];
        for (std::uint32_t r : cr) {
            if (r == p) continue;
            const mpz_class a = *value_at(r, c);
            const SparseRow& rrow = rows[r];
            merged.clear();
            // unit pivot: r - (a*pv) p; otherwise pv*r - a*p
            const mpz_class fr = unit ? mpz_class(1) : pv;
            const mpz_class fp = unit ? mpz_class(a * pv) : a;
            std::size_t x = 0, y = 0;
            while (x < rrow.size() || y < prow.size()) {
                if (y == prow.size() || (x < rrow.size() && rrow[x].first < prow[y].first)) {
                    merged.emplace_back(rrow[x].first, fr * rrow[x].second);
                    ++x;
                } else if (x == rrow.size() || prow[y].first < rrow[x].first) {
                    merged.emplace_back(prow[y].first, -fp * prow[y].second);
                    if (!done[prow[y].first]) {
                        col_rows[prow[y].first].push_back(r);
                        pq.emplace(col_rows[prow[y].first].size(), prow[y].first);
                    }
                    ++y;
                } else {
                    mpz_class val = fr * rrow[x].second - fp * prow[y].second;
                    if (val != 0) merged.emplace_back(rrow[x].first, std::move(val));
                    ++x;
                    ++y;
                }
            }
            if (!unit && !merged.empty()) {
                mpz_class g = 0;
                for (const auto& e : merged) g = gcd(g, e.second);
                if (g > 1) {
                    for (auto& e : merged) e.second /= g;
                }
            }
            rows[r].swap(merged);
        }
        alive[p] = 0;
        done[c] = 1;
        cr.clear();
        ++rank;
    }
    return rank;
}

namespace {

struct Block {
    std::size_t column;  // source column index
    int j;
    std::vector<SparseRow> rows;
    std::size_t ncols;
    std::size_t rank = 0;
};

std::vector<Block> make_blocks(const KhovanovComplex& cx) {
    std::vector<Block> blocks;
    for (std::size_t c = 0; c < cx.diffs.size(); ++c) {
        const auto& src = cx.columns[c];
        const auto& dst = cx.columns[c + 1];
        std::map<int, std::size_t> which;
        std::vector<std::uint32_t> local_src(src.basis.size()), local_dst(dst.basis.size());
        std::map<int, std::uint32_t> counter_src, counter_dst;
        for (std::size_t t = 0; t < src.basis.size(); ++t) local_src[t] = counter_src[src.qdeg[t]]++;
        for (std::size_t t = 0; t < dst.basis.size(); ++t) local_dst[t] = counter_dst[dst.qdeg[t]]++;
        for (const auto& e : cx.diffs[c]) {
            int j = src.qdeg[e.col];
            auto it = which.find(j);
            if (it == which.end()) {
                it = which.emplace(j, blocks.size()).first;
                blocks.push_back({c, j, std::vector<SparseRow>(counter_dst[j]), counter_src[j]});
            }
            blocks[it->second].rows[local_dst[e.row]].emplace_back(local_src[e.col], e.value);
        }
    }
    return blocks;
}

HomologyTable assemble_homology(const KhovanovComplex& cx, const std::vector<Block>& blocks) {
    std::map<std::pair<std::size_t, int>, std::size_t> rank;
    for (const auto& b : blocks) rank[{b.column, b.j}] = b.rank;
    auto rank_of = [&](long c, int j) -> long {
        if (c < 0) return 0;
        auto it = rank.find({static_cast<std::size_t>(c), j});
        return it == rank.end() ? 0 : static_cast<long>(it->second);
    };
    HomologyTable table;
    for (std::size_t c = 0; c < cx.columns.size(); ++c) {
        std::map<int, long> dims;
        for (int j : cx.columns[c].qdeg) ++dims[j];
        for (auto [j, dim] : dims) {
            long h = dim - rank_of(static_cast<long>(c), j) - rank_of(static_cast<long>(c) - 1, j);
            if (h < 0) throw ComplexError("negative homology dimension: the differential does not square to zero");
            if (h > 0) table[{cx.columns[c].degree, j}] = h;
        }
    }
    return table;
}

}  // namespace

HomologyTable homology(const KhovanovComplex& cx) {
    auto blocks = make_blocks(cx);
    std::vector<std::size_t> order(blocks.size());
    for (std::size_t t = 0; t < order.size(); ++t) order[t] = t;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return blocks[a].rows.size() * blocks[a].ncols > blocks[b].rows.size() * blocks[b].ncols;
    });
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t t = 0; t < order.size(); ++t) {
        auto& b = blocks[order[t]];
        b.rank = sparse_rank(b.rows, b.ncols);
    }
    return assemble_homology(cx, blocks);
}

HomologyTable homology_serial(const KhovanovComplex& cx) {
    auto blocks = make_blocks(cx);
    for (auto& b : blocks) b.rank = sparse_rank(b.rows, b.ncols);
    return assemble_homology(cx, blocks);
}

LaurentPoly euler_characteristic(const HomologyTable& table) {
    LaurentPoly p;
    for (const auto& [ij, dim] : table) p.add_term((ij.first % 2 ? -1 : 1) * dim, ij.second);
    return p;
}

LaurentPoly chain_euler_characteristic(const KhovanovComplex& cx) {
    LaurentPoly p;
    for (const auto& [ij, dim] : cx.dimensions()) p.add_term((ij.first % 2 ? -1 : 1) * dim, ij.second);
    return p;
}

}  // namespace polyknot
