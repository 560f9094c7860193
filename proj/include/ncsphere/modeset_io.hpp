#pragma once

#include <string>

#include "ncsphere/modes.hpp"

namespace ncsphere {

// ModeSet JSON:
//   {"N": 3, "v0": [f, f], "vc": [[f x N], [f x N]], "vs": [[f x N], [f x N]]}
// with the outer index mu (0 -> x, 1 -> y) and each f one of
//   {"kind": "zero"}
//   {"kind": "trigpoly", "terms": [[a, re, im], ...]}      sum (re + i im) e^{iax}
//   {"kind": "legendre", "l": l, "m": m, "coeff": c}        c k_{l,m} P_{l,m}(cos x)
//   {"kind": "legendre", "terms": [[l, m, c], ...]}         sum of the above
// Errors are ParseError carrying the line and column of the offending value.
ModeSet parse_modeset(const std::string& text);
ModeSet load_modeset(const std::string& path);

} // namespace ncsphere
