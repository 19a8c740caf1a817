#pragma once

#include "polyknot/diagram.hpp"

#include <string>

namespace polyknot {

struct SvgStyle {
    double size = 480.0;  // longest side of the drawing area, in px
    double margin = 24.0;
    double gap = 7.0;  // half-width of an under-strand gap, in px
    bool labels = true;
};

// Schematic rendering: plain edges as <line class="edge">, each under-strand
// as <g class="gap"> holding the two pieces either side of its crossing.
std::string render_svg(const GoodDiagram& d, const SvgStyle& style = {});

}  // namespace polyknot
