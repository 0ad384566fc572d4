#pragma once

#include <array>
#include <string>

#include "dyadic/local_field.hpp"

namespace dyadic {

// Element grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' int)?
//   base   := int | 'pi' | 'g' | '(' expr ')'
// Integers may be arbitrarily large; exponents fit in a machine word and may
// be negative.  Every parse yields an exact element.
Elem parse_elem(const FieldCtx& ctx, const std::string& text);

// Inverse of parse_elem on exact elements (print-then-parse is the identity).
// Inexact elements render with a trailing "+ O(pi^A)" marker, which the
// parser deliberately rejects.
std::string print_elem(const Elem& x);

// Field descriptor grammar:
//   equichar(k=<int>,prec=<int>) | mixed(k=<int>,eis="<monic poly in z>",prec=<int>)
// prec is optional and defaults to 64.
FieldCtx parse_field(const std::string& text);

// Curve input: [a1,a2,a3,a4,a6], entries in the element grammar.
std::array<Elem, 5> parse_curve_coeffs(const FieldCtx& ctx, const std::string& text);

} // namespace dyadic
