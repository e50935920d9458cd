#pragma once

#include <string>

#include "hopfdiag/diagram.hpp"

namespace hopfdiag {

// ASCII layer dump: one row per layer (bottom first), wires as '|'.
std::string render_text(const Diagram& d);

// Standalone SVG: boxes for generators, strands for wires, crossings with
// an over/under gap for the braiding pair.
std::string render_svg(const Diagram& d);

}  // namespace hopfdiag
