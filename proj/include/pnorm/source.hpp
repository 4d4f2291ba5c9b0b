#pragma once

#include <string_view>

#include "pnorm/func.hpp"

namespace pnorm {

/// Parses a function spec string: an optional kind followed by key=value tokens.
///
///   [trace] p=3 n=6 term=7:98 [term=a:e ...]   sum of Tr(g^a x^e)
///   zero p=3 n=2
///   const p=3 n=2 c=1
///   affine p=3 n=2 v=4 c=0                     <v, x> + c, v as a point index
///   cm n=6 k=7 coeff=3                         Coulter-Matthews over GF(3^n)
///   product p=3 n=4 alpha=73 beta=76           Tr(x^2) + (y1 + Tr(a x^2))(y2 + Tr(b x^2))
///
/// Errors name the offending token.
PAryFunction parse_function_spec(std::string_view text);

/// Resolves "fixture:NAME", "spec:TEXT" or "file:PATH". A bare fixture name is
/// also accepted.
PAryFunction resolve_source(std::string_view source);

}  // namespace pnorm
