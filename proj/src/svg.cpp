#include "polyknot/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

namespace polyknot {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s(buf);
    if (s == "-0.00") s = "0.00";
    return s;
}

struct Canvas {
    double min_x, max_y, scale, margin;
    double x(const Rational& r) const { return margin + (r.get_d() - min_x) * scale; }
    double y(const Rational& r) const { return margin + (max_y - r.get_d()) * scale; }
};

void line(std::ostringstream& out, const char* cls, double x1, double y1, double x2, double y2) {
    out << "<line class=\"" << cls << "\" x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
        << "\" y2=\"" << num(y2) << "\"/>\n";
}

}  // namespace

std::string render_svg(const GoodDiagram& d, const SvgStyle& style) {
    const Index n = static_cast<Index>(d.n());
    double lo_x = d.vertex(1).x.get_d(), hi_x = lo_x, lo_y = d.vertex(1).y.get_d(), hi_y = lo_y;
    for (Index i = 2; i <= n; ++i) {
        lo_x = std::min(lo_x, d.vertex(i).x.get_d());
        hi_x = std::max(hi_x, d.vertex(i).x.get_d());
        lo_y = std::min(lo_y, d.vertex(i).y.get_d());
        hi_y = std::max(hi_y, d.vertex(i).y.get_d());
    }
    double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
    Canvas cv{lo_x, hi_y, style.size / span, style.margin};
    double width = (hi_x - lo_x) * cv.scale + 2 * style.margin;
    double height = (hi_y - lo_y) * cv.scale + 2 * style.margin;

    std::vector<std::optional<std::size_t>> under(static_cast<std::size_t>(n) + 1);
    for (std::size_t l = 1; l <= d.k(); ++l) under[static_cast<std::size_t>(d.crossing(l).v)] = l;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n";
    out << "<style>line{stroke:#222;stroke-width:2}circle{fill:#222}text{font:11px sans-serif;fill:#a22}</style>\n";
    for (Index i = 1; i <= n; ++i) {
        const Point2& a = d.vertex(i);
        const Point2& b = d.vertex(d.successor(i));
        double ax = cv.x(a.x), ay = cv.y(a.y), bx = cv.x(b.x), by = cv.y(b.y);
        auto l = under[static_cast<std::size_t>(i)];
        if (!l) {
            line(out, "edge", ax, ay, bx, by);
            continue;
        }
        const Point2& p = d.crossing(*l).point;
        Rational dx = b.x - a.x, dy = b.y - a.y;
        Rational t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy);
        double len = std::hypot(bx - ax, by - ay);
        double h = len > 0 ? style.gap / len : 0.0;
        double t0 = std::max(0.0, t.get_d() - h), t1 = std::min(1.0, t.get_d() + h);
        out << "<g class=\"gap\" data-crossing=\"" << *l << "\">\n";
        line(out, "under", ax, ay, ax + t0 * (bx - ax), ay + t0 * (by - ay));
        line(out, "under", ax + t1 * (bx - ax), ay + t1 * (by - ay), bx, by);
        out << "</g>\n";
    }
    for (Index i = 1; i <= n; ++i) {
        double x = cv.x(d.vertex(i).x), y = cv.y(d.vertex(i).y);
        out << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"2.5\"/>\n";
        if (style.labels) out << "<text x=\"" << num(x + 4) << "\" y=\"" << num(y - 4) << "\">" << i << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace polyknot
