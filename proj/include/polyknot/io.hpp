#pragma once

#include "polyknot/cube.hpp"
#include "polyknot/diagram.hpp"
#include "polyknot/geom3d.hpp"
#include "polyknot/khovanov.hpp"

#include <stdexcept>
#include <string>

namespace polyknot {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line(line),
          column(column) {}
    std::size_t line, column;
};

// '#' comments; one "component" line per component holding x,y,z triples.
PolygonalLink parse_link(const std::string& text);
PolygonalLink read_link_file(const std::string& path);
std::string format_link(const PolygonalLink& link);

std::string format_diagram(const GoodDiagram& d);
GoodDiagram parse_diagram(const std::string& text);

std::string crossing_table_tsv(const GoodDiagram& d);
std::string crossing_table_json(const GoodDiagram& d);

std::string cube_dump_tsv(const Cube& cube);
std::string cube_dump_json(const Cube& cube);

std::string homology_tsv(const HomologyTable& table);
std::string homology_json(const HomologyTable& table);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace polyknot
