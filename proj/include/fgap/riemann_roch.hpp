#pragma once

// Dimension counting on a singular rational curve by explicit bases:
// L(D) (functions with (f) >= -D regular in the glued local rings) and
// Omega'(D) (regular differentials vanishing on D).
//
// Unlike the wave modules, D may contain 0 and infinity here.

#include <string>
#include <vector>

#include "fgap/linalg.hpp"
#include "fgap/spectral_data.hpp"

namespace fgap {

struct RRDivisorEntry {
  ProjPoint point;
  int multiplicity = 1;
};

struct RRDivisor {
  std::vector<RRDivisorEntry> entries;

  int degree() const;
};

/// Ambient basis (as readable labels) plus constraint rows.
struct LinearSpaceProbe {
  std::vector<std::string> ambient;
  MatrixXc constraints;
  int rank = 0;
  int dimension = 0;
};

/// Throws InvalidInput if D meets a gluing support point, repeats a point,
/// or has a negative multiplicity.
LinearSpaceProbe probe_function_space(const CurveSpec& spec,
                                      const RRDivisor& divisor,
                                      double threshold = kRankThreshold);
LinearSpaceProbe probe_omega_prime(const CurveSpec& spec,
                                   const RRDivisor& divisor,
                                   double threshold = kRankThreshold);

int function_space_dim(const CurveSpec& spec, const RRDivisor& divisor,
                       double threshold = kRankThreshold);
int omega_prime_dim(const CurveSpec& spec, const RRDivisor& divisor,
                    double threshold = kRankThreshold);
int regular_differential_dim(const CurveSpec& spec,
                             double threshold = kRankThreshold);

struct RRReport {
  int degree = 0;
  int arithmetic_genus = 0;
  int dim_l = 0;
  int dim_omega = 0;
  /// dim L - dim Omega' - (deg D + 1 - p_a); zero when the identity holds.
  int residual = 0;
};

RRReport rr_report(const CurveSpec& spec, const RRDivisor& divisor,
                   double threshold = kRankThreshold);

}  // namespace fgap
