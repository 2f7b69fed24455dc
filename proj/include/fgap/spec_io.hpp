#pragma once

// Curve-spec documents: one JSON object with complex numbers as [re, im].
//
// {
//   "alpha": [1, 0], "beta": [-1, 0],
//   "classes": [{"points": [{"lambda": [0.5, 0.1], "multiplicity": 1}, ...]}],
//   "poles": [{"lambda": [1.3, 0.4], "multiplicity": 1}],
//   "sigma": false, "tau": 1.0,
//   "grid": {"x_min": -1, "x_max": 1, "y_min": -1, "y_max": 1, "nx": 11, "ny": 11},
//   "tolerances": {"residual": 1e-8, "rank": 1e-10, "condition_cutoff": 1e12},
//   "seed": 7
// }
//
// "poles" may also be given as {"points": [...]}. A pole "lambda" may be the
// string "inf"; such divisors are accepted only by the rr command.

#include <cstdint>
#include <string>

#include "fgap/errors.hpp"
#include "fgap/grid.hpp"
#include "fgap/riemann_roch.hpp"
#include "fgap/spectral_data.hpp"

namespace fgap {

/// Malformed document; the message names the offending field or line.
class ParseError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

struct Tolerances {
  double residual = 1e-8;
  double rank = 1e-10;
  double condition_cutoff = 1e12;
};

struct SpecDocument {
  CurveSpec spec;
  /// Finite part of "poles".
  PoleDivisor divisor;
  /// All of "poles", infinity included.
  RRDivisor rr_divisor;
  bool pole_at_infinity = false;
  Grid grid;
  Tolerances tolerances;
  std::uint64_t seed = 0;
  /// FNV-1a 64 of the compact canonical serialization.
  std::uint64_t hash = 0;
};

/// Throws ParseError (syntax with line/column, or field-addressed content
/// errors) and InvalidInput (structurally invalid gluing classes).
SpecDocument parse_spec_document(const std::string& text);
SpecDocument load_spec_document(const std::string& path);

/// Parses a JSON list of {"lambda": [re, im] | "inf", "multiplicity": n}.
RRDivisor parse_rr_divisor(const std::string& text);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace fgap
