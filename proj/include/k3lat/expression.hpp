#pragma once

#include <string_view>

#include "k3lat/lattice.hpp"

namespace k3lat {

// Lattice expressions:
//
//   sum     := term ('+' term)*
//   term    := INT '*' postfix | postfix
//   postfix := primary ('(' INT ')')*        rescaling, e.g. E8(2), U(-1)
//   primary := "U" | "U'" | A<n> | D<n> | E<n> | gram[[..],[..]] | '(' sum ')'
//
// Whitespace is ignored. Throws Error{ParseError} on malformed input; domain
// errors from the constructions (InvalidIndex, ZeroScale, NotSymmetric)
// propagate unchanged.
Lattice parse_lattice_expression(std::string_view text);

}  // namespace k3lat
