#pragma once

#include <string>

#include "planvec/geometry.hpp"

namespace planvec {

// Serializes a plan to the tool's SVG dialect: one <path> per wall drawn
// with H/V commands, integer coordinates, fixed attribute order, LF line
// endings.  Output is byte-deterministic for a given plan.
std::string to_svg(const VectorPlan& plan);

// Parses exactly the dialect to_svg emits (no transforms, no other
// elements) and recovers the plan; fill color is not part of identity.
// Throws FormatError with a 1-based line number on any deviation.
VectorPlan parse_svg(const std::string& text);

}  // namespace planvec
