#pragma once

#include "kmso21/algebra.hpp"

#include <string>

namespace kmso21 {

// Parses e[1,2] (or e12 when rank < 10), f[2,1], h1, rationals, +, -, *, parentheses and brackets [x,y].
LieElement parse_element(const AlgebraContext& ctx, const std::string& text);

}  // namespace kmso21
