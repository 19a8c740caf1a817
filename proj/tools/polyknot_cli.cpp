#include "polyknot/io.hpp"
#include "polyknot/svg.hpp"
#include "polyknot/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <random>
#include <sstream>

using namespace polyknot;

namespace {

struct Config {
    std::string file;
    std::uint64_t seed = 0;
    std::string dir;
    std::string order;
    std::string format = "tsv";
    std::string out;
    std::size_t trials = 25;
    std::size_t budget = 10000;
    bool mutant = false;
    // deform
    std::optional<Index> remove;
    std::string add;  // "after:x,y,z"
    std::size_t random = 0;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, sep);) out.push_back(item);
    return out;
}

Point3 parse_point(const std::string& text) {
    auto parts = split(text, ',');
    if (parts.size() != 3) throw UsageError("expected x,y,z but got '" + text + "'");
    return {parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2])};
}

std::vector<std::size_t> parse_order(const std::string& text, std::size_t k) {
    if (text.empty()) return {};
    std::vector<std::size_t> order;
    for (const auto& s : split(text, ',')) order.push_back(std::stoul(s));
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t t = 0; t < sorted.size(); ++t) {
        if (sorted.size() != k || sorted[t] != t + 1) {
            throw UsageError("--order must be a permutation of 1.." + std::to_string(k));
        }
    }
    return order;
}

void emit(const Config& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        write_text_file(cfg.out, text);
    }
}

PreparedLink load(const Config& cfg) {
    PolygonalLink link = read_link_file(cfg.file);
    auto issues = validate_link(link);
    if (!issues.empty()) throw GeometryError(issues.front().message);
    std::optional<Direction> dir;
    if (!cfg.dir.empty()) dir = Direction::parse(cfg.dir);
    if (!dir) dir = find_regular_direction(link, cfg.seed, cfg.budget);
    return prepare(link, dir, cfg.seed);
}

int cmd_validate(const Config& cfg) {
    PolygonalLink link = read_link_file(cfg.file);
    auto issues = validate_link(link);
    for (const auto& issue : issues) std::cout << issue.message << '\n';
    if (issues.empty()) {
        std::cout << "valid: " << link.components().size() << " component(s), " << link.size() << " vertices\n";
    }
    return issues.empty() ? 0 : 1;
}

int cmd_diagram(const Config& cfg) {
    PreparedLink p = load(cfg);
    std::cout << (cfg.format == "json" ? crossing_table_json(p.diagram) : crossing_table_tsv(p.diagram));
    if (!cfg.out.empty()) write_text_file(cfg.out, format_diagram(p.diagram));
    return 0;
}

int cmd_cube(const Config& cfg) {
    PreparedLink p = load(cfg);
    Cube cube = build_cube(p.diagram, parse_order(cfg.order, p.diagram.k()));
    emit(cfg, cfg.format == "json" ? cube_dump_json(cube) : cube_dump_tsv(cube));
    return 0;
}

int cmd_jones(const Config& cfg) {
    PreparedLink p = load(cfg);
    LaurentPoly jhat = jones_state_sum(build_cube(p.diagram, parse_order(cfg.order, p.diagram.k())));
    LaurentPoly j = normalized_jones(jhat);
    if (cfg.format == "json") {
        emit(cfg, nlohmann::json{{"unnormalized", jhat.to_string()}, {"normalized", j.to_string()},
                                 {"normalized_t", substitute_t(j)}}
                          .dump(2) +
                      "\n");
    } else {
        emit(cfg, jhat.to_string() + "\n" + j.to_string() + "\n");
    }
    return 0;
}

int cmd_homology(const Config& cfg) {
    PreparedLink p = load(cfg);
    Cube cube = build_cube(p.diagram, parse_order(cfg.order, p.diagram.k()));
    HomologyTable h = homology(build_complex(cube));
    emit(cfg, cfg.format == "json" ? homology_json(h) : homology_tsv(h));
    return 0;
}

int cmd_verify(const Config& cfg) {
    PolygonalLink link = read_link_file(cfg.file);
    VerifyOptions opts;
    opts.trials = cfg.trials;
    opts.seed = cfg.seed;
    if (!cfg.dir.empty()) opts.dir = Direction::parse(cfg.dir);
    if (cfg.mutant) opts.variant = Frobenius::FlippedSplitSign;
    VerifyReport rep = run_verify(link, opts);
    emit(cfg, cfg.format == "json" ? rep.to_json() : rep.to_text());
    return rep.ok() ? 0 : 1;
}

int cmd_deform(const Config& cfg) {
    PolygonalLink link = read_link_file(cfg.file);
    Direction dir = cfg.dir.empty() ? find_regular_direction(link, cfg.seed, cfg.budget) : Direction::parse(cfg.dir);
    std::vector<std::string> log;
    if (cfg.remove) {
        log.push_back(classify_triangle_move(link, dir, *cfg.remove).log_line());
        link = deform_remove_vertex(link, *cfg.remove);
    }
    if (!cfg.add.empty()) {
        auto colon = cfg.add.find(':');
        if (colon == std::string::npos) throw UsageError("--add expects after:x,y,z");
        Index after = std::stoi(cfg.add.substr(0, colon));
        link = deform_add_vertex(link, after, parse_point(cfg.add.substr(colon + 1)));
        // logged as the inverse move, removal of the new vertex
        log.push_back(classify_triangle_move(link, dir, after + 1).log_line());
    }
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t t = 0; t < cfg.random; ++t) {
        auto def = random_deformation(link, dir, rng);
        if (!def) throw MoveError("no admissible random deformation found");
        log.push_back(def->move.log_line());
        link = def->added ? def->before : def->after;
    }
    for (const auto& line : log) std::cerr << line << '\n';
    emit(cfg, format_link(link));
    return 0;
}

int cmd_svg(const Config& cfg) {
    PreparedLink p = load(cfg);
    emit(cfg, render_svg(p.diagram));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polygonal link diagrams, smoothing cubes and Khovanov homology"};
    app.require_subcommand(1);
    Config cfg;

    auto common = [&](CLI::App* sub, bool with_order) {
        sub->add_option("file", cfg.file, "link file")->required();
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--dir", cfg.dir, "projection direction dx,dy,dz");
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"tsv", "json", "text"}));
        sub->add_option("-o,--output", cfg.out, "output file");
        sub->add_option("--budget", cfg.budget, "direction search attempt budget");
        if (with_order) sub->add_option("--order", cfg.order, "resolution order, e.g. 2,1,3");
    };

    std::map<std::string, std::function<int(const Config&)>> handlers{
        {"validate", cmd_validate}, {"diagram", cmd_diagram}, {"cube", cmd_cube},     {"jones", cmd_jones},
        {"homology", cmd_homology}, {"verify", cmd_verify},   {"deform", cmd_deform}, {"svg", cmd_svg},
    };
    auto* validate = app.add_subcommand("validate", "check that the link is embedded and nondegenerate");
    validate->add_option("file", cfg.file, "link file")->required();
    common(app.add_subcommand("diagram", "crossing table of the good diagram"), false);
    common(app.add_subcommand("cube", "cube of smoothings"), true);
    common(app.add_subcommand("jones", "unnormalized and normalized Jones polynomial"), true);
    common(app.add_subcommand("homology", "Khovanov homology ranks"), true);
    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    common(verify, false);
    verify->add_option("--trials", cfg.trials, "random deformations");
    verify->add_flag("--mutant", cfg.mutant, "use a deliberately wrong split map");
    auto* deform = app.add_subcommand("deform", "elementary deformations; move log on stderr");
    common(deform, false);
    deform->add_option("--remove", cfg.remove, "remove vertex p");
    deform->add_option("--add", cfg.add, "insert after:x,y,z");
    deform->add_option("--random", cfg.random, "apply N random deformations");
    common(app.add_subcommand("svg", "schematic rendering"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return handlers.at(app.get_subcommands().front()->get_name())(cfg);
    } catch (const ParseError& e) {
        std::cerr << cfg.file << ": " << e.what() << '\n';
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
