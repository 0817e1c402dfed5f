#pragma once
#include <string>

#include "ftqlab/css_code.hpp"

namespace ftqlab {

CssCode build_bitflip3();
// Rotated surface code, odd distance d >= 3. X logical runs down
// column 0, Z logical along row 0.
CssCode build_rotated_surface(uint32_t d);

// "bitflip3", "surface_d<d>", "toric_L<L>".
CssCode build_named_code(const std::string& name);

// Name, or a path to a code-definition file when the string contains a
// path separator or ends in ".code".
CssCode load_code_by_spec(const std::string& spec);

} // namespace ftqlab
