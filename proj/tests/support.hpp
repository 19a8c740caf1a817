#pragma once

#include "polyknot/io.hpp"

#include <string>

inline polyknot::PolygonalLink fixture(const std::string& name) {
    return polyknot::read_link_file(std::string(POLYKNOT_FIXTURES) + "/" + name);
}

inline const polyknot::Direction& up() {
    static const polyknot::Direction d = polyknot::Direction::parse("0,0,1");
    return d;
}
