#include "polyknot/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace polyknot {

namespace {

std::string sign_text(int s) { return s > 0 ? "+1" : "-1"; }

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

PolygonalLink parse_link(const std::string& text) {
    std::vector<std::vector<Point3>> comps;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::size_t pos = 0;
        auto next_token = [&](std::size_t& start) {
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
            start = pos;
            while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
            return line.substr(start, pos - start);
        };
        std::size_t start = 0;
        std::string head = next_token(start);
        if (head.empty()) continue;
        if (head != "component") throw ParseError(lineno, start + 1, "expected 'component', found '" + head + "'");
        std::vector<Point3> pts;
        while (true) {
            std::string tok = next_token(start);
            if (tok.empty()) break;
            std::string body = tok;
            std::size_t offset = 0;
            if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
                body = body.substr(1, body.size() - 2);
                offset = 1;
            }
            Rational xyz[3];
            std::size_t field = 0, fstart = 0;
            for (std::size_t t = 0; t <= body.size(); ++t) {
                if (t == body.size() || body[t] == ',') {
                    if (field >= 3) throw ParseError(lineno, start + offset + t + 1, "more than three coordinates");
                    try {
                        xyz[field] = parse_rational(body.substr(fstart, t - fstart));
                    } catch (const std::invalid_argument& ex) {
                        throw ParseError(lineno, start + offset + fstart + 1, ex.what());
                    }
                    ++field;
                    fstart = t + 1;
                }
            }
            if (field != 3) throw ParseError(lineno, start + 1, "a point needs three coordinates x,y,z");
            pts.push_back({xyz[0], xyz[1], xyz[2]});
        }
        comps.push_back(std::move(pts));
    }
    if (comps.empty()) throw ParseError(lineno + 1, 1, "no components");
    return PolygonalLink(std::move(comps));
}

PolygonalLink read_link_file(const std::string& path) { return parse_link(read_text_file(path)); }

std::string format_link(const PolygonalLink& link) {
    std::ostringstream out;
    for (const auto& comp : link.components()) {
        out << "component";
        for (const auto& p : comp) out << ' ' << p.x.get_str() << ',' << p.y.get_str() << ',' << p.z.get_str();
        out << '\n';
    }
    return out.str();
}

std::string format_diagram(const GoodDiagram& d) {
    std::ostringstream out;
    out << "vertices " << d.n() << '\n';
    for (const auto& q : d.vertices()) out << q.x.get_str() << ' ' << q.y.get_str() << '\n';
    out << "components";
    for (std::size_t c = 1; c < d.boundaries().size(); ++c) out << ' ' << d.boundaries()[c];
    out << '\n';
    out << "crossings " << d.k() << '\n';
    for (std::size_t l = 1; l <= d.k(); ++l) {
        const auto& c = d.crossing(l);
        out << l << ' ' << c.i << ' ' << c.j << ' ' << c.v << ' ' << c.w << ' ' << sign_text(c.sign) << '\n';
    }
    return out.str();
}

GoodDiagram parse_diagram(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&]() -> std::istringstream {
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
            if (line.find_first_not_of(" \t\r") != std::string::npos) return std::istringstream(line);
        }
        throw ParseError(lineno + 1, 1, "unexpected end of diagram");
    };
    auto expect = [&](std::istringstream& ls, const std::string& word) {
        std::string w;
        ls >> w;
        if (w != word) throw ParseError(lineno, 1, "expected '" + word + "'");
    };
    auto ls = next_line();
    expect(ls, "vertices");
    std::size_t n = 0;
    if (!(ls >> n)) throw ParseError(lineno, 10, "expected vertex count");
    std::vector<Point2> q;
    for (std::size_t t = 0; t < n; ++t) {
        auto vl = next_line();
        std::string x, y;
        vl >> x >> y;
        try {
            q.push_back({parse_rational(x), parse_rational(y)});
        } catch (const std::invalid_argument& ex) {
            throw ParseError(lineno, 1, ex.what());
        }
    }
    ls = next_line();
    expect(ls, "components");
    std::vector<Index> bounds{0};
    Index b;
    while (ls >> b) bounds.push_back(b);
    ls = next_line();
    expect(ls, "crossings");
    std::size_t k = 0;
    if (!(ls >> k)) throw ParseError(lineno, 11, "expected crossing count");
    std::vector<CrossingRecord> cs;
    for (std::size_t t = 0; t < k; ++t) {
        auto cl = next_line();
        std::size_t idx;
        CrossingRecord c{};
        std::string sign;
        if (!(cl >> idx >> c.i >> c.j >> c.v >> c.w >> sign) || idx != t + 1) {
            throw ParseError(lineno, 1, "malformed crossing row");
        }
        c.sign = sign == "+1" || sign == "1" || sign == "+" ? 1 : -1;
        auto in_range = [&](Index x) { return x >= 1 && static_cast<std::size_t>(x) <= n; };
        if (!in_range(c.i) || !in_range(c.j) || !in_range(c.v) || !in_range(c.w)) {
            throw ParseError(lineno, 1, "crossing index out of range");
        }
        auto pt = segment_crossing(q[c.i - 1], q[c.j - 1], q[c.v - 1], q[c.w - 1]);
        if (!pt) throw ParseError(lineno, 1, "crossing edges do not cross");
        c.point = *pt;
        cs.push_back(c);
    }
    return GoodDiagram(std::move(q), std::move(bounds), std::move(cs));
}

std::string crossing_table_tsv(const GoodDiagram& d) {
    std::ostringstream out;
    for (std::size_t l = 1; l <= d.k(); ++l) {
        const auto& c = d.crossing(l);
        out << l << '\t' << c.i << '\t' << c.j << '\t' << c.v << '\t' << c.w << '\t' << sign_text(c.sign) << '\n';
    }
    return out.str();
}

std::string crossing_table_json(const GoodDiagram& d) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t l = 1; l <= d.k(); ++l) {
        const auto& c = d.crossing(l);
        rows.push_back({{"idx", l}, {"i", c.i}, {"j", c.j}, {"v", c.v}, {"w", c.w}, {"sign", c.sign}});
    }
    nlohmann::json doc = {{"n", d.n()}, {"k", d.k()}, {"k_plus", d.k_plus()}, {"k_minus", d.k_minus()},
                          {"crossings", rows}};
    return doc.dump(2) + "\n";
}

namespace {

std::string factor_orders(const CubeVertex& v) {
    std::string s;
    for (const auto& f : v.groups) s += (s.empty() ? "" : ",") + std::to_string(f.order());
    return s;
}

}  // namespace

std::string cube_dump_tsv(const Cube& cube) {
    std::ostringstream out;
    for (const auto& v : cube.vertices) {
        out << "vertex\t" << v.word << '\t' << v.sigma.to_string() << '\t' << v.circles << '\t' << factor_orders(v)
            << '\n';
    }
    for (const auto& e : cube.edges) {
        out << "edge\t" << e.star_word << '\t' << (e.kind == EdgeKind::Merge ? "merge" : "split") << '\t'
            << sign_text(e.sign) << '\n';
    }
    return out.str();
}

std::string cube_dump_json(const Cube& cube) {
    nlohmann::json vs = nlohmann::json::array(), es = nlohmann::json::array();
    for (const auto& v : cube.vertices) {
        std::vector<std::size_t> orders;
        for (const auto& f : v.groups) orders.push_back(f.order());
        vs.push_back({{"word", v.word}, {"sigma", v.sigma.to_string()}, {"circles", v.circles}, {"orders", orders}});
    }
    for (const auto& e : cube.edges) {
        es.push_back({{"star", e.star_word}, {"kind", e.kind == EdgeKind::Merge ? "merge" : "split"}, {"sign", e.sign}});
    }
    return nlohmann::json{{"vertices", vs}, {"edges", es}}.dump(2) + "\n";
}

std::string homology_tsv(const HomologyTable& table) {
    std::ostringstream out;
    for (const auto& [ij, dim] : table) out << ij.first << '\t' << ij.second << '\t' << dim << '\n';
    return out.str();
}

std::string homology_json(const HomologyTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [ij, dim] : table) rows.push_back({{"i", ij.first}, {"j", ij.second}, {"dim", dim}});
    return nlohmann::json{{"homology", rows}}.dump(2) + "\n";
}

}  // namespace polyknot
