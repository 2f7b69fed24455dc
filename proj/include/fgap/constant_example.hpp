#pragma once

// End-to-end check on the constant-potential Dirac example: alpha = 1,
// beta = -c^2, no gluing, D = {c}, with sigma and tau (t = c^2) declared.
// Expected: U = V = c, psi_1 = lambda/(lambda - c) E, psi_2 = c/(c - lambda) E,
// omega ~ (1 - c^2/lambda^2) dlambda and omega' ~ (lambda - c)^2/lambda^2 dlambda.

#include <cstdint>
#include <string>
#include <vector>

#include "fgap/certificates.hpp"

namespace fgap {

struct ConstantExampleOptions {
  int grid_n = 21;
  int psi_samples = 50;
  std::uint64_t seed = 20240601;
  double potential_tolerance = 1e-10;
  double psi_tolerance = 1e-10;
  double coefficient_tolerance = 1e-9;
  double consequence_tolerance = 1e-10;
};

struct ConstantExampleResult {
  double c = 0.0;
  double max_u_error = 0.0;
  double max_v_error = 0.0;
  double max_psi_error = 0.0;
  std::size_t failed_nodes = 0;
  bool sigma_found = false;
  bool tau_found = false;
  bool sigma_verified = false;
  bool tau_verified = false;
  double sigma_coefficient_error = 0.0;
  double tau_coefficient_error = 0.0;
  ConsequenceReport sigma_consequences;
  ConsequenceReport tau_consequences;
  std::vector<cplx> sigma_numerator;
  std::vector<cplx> tau_numerator;
  bool passed = false;
};

CurveSpec constant_example_spec(double c);
PoleDivisor constant_example_divisor(double c);

/// Throws InvalidInput for c = 0 or non-finite c.
ConstantExampleResult run_constant_example(
    double c, const ConstantExampleOptions& opts = {});

/// Relative sup-norm distance between coefficient vectors after the best
/// scalar alignment on the largest reference entry.
double scaled_coefficient_error(const std::vector<cplx>& got,
                                const std::vector<cplx>& reference);

}  // namespace fgap
