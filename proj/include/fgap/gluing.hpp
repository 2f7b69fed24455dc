#pragma once

// Shared machinery of the Baker-Akhiezer constructions: the exponential core
// E(lambda) = exp(alpha*lambda*z + (beta/lambda)*zbar), the descent
// conditions of a glued curve, and the affine linear solve for a prefactor
// numerator together with its analytic z / zbar derivatives.

#include <functional>
#include <vector>

#include "fgap/linalg.hpp"
#include "fgap/rational.hpp"
#include "fgap/spectral_data.hpp"

namespace fgap {

struct Position {
  double x = 0.0;
  double y = 0.0;

  cplx z() const { return {x, y}; }
  cplx zbar() const { return {x, -y}; }
};

class ExponentialCore {
 public:
  ExponentialCore(cplx alpha, cplx beta, Position pos)
      : alpha_(alpha), beta_(beta), z_(pos.z()), zbar_(pos.zbar()) {}

  cplx alpha() const { return alpha_; }
  cplx beta() const { return beta_; }
  cplx z() const { return z_; }
  cplx zbar() const { return zbar_; }

  cplx exponent(cplx lambda) const {
    return alpha_ * lambda * z_ + beta_ / lambda * zbar_;
  }
  cplx value(cplx lambda) const { return std::exp(exponent(lambda)); }
  /// d E / d lambda = (alpha z - beta zbar / lambda^2) E
  cplx lambda_derivative(cplx lambda) const {
    return (alpha_ * z_ - beta_ * zbar_ / (lambda * lambda)) * value(lambda);
  }
  /// Taylor jet of E at q (q != 0).
  Jet jet(cplx q, int len) const;

 private:
  cplx alpha_, beta_, z_, zbar_;
};

/// One descent condition on a function F living on the normalization:
/// value_equal: F(point) - F(other) = 0;
/// jet_vanish:  [h^order] F(point + h) = 0.
struct GluingCondition {
  enum class Kind { value_equal, jet_vanish };
  Kind kind;
  cplx point;
  cplx other;
  int order = 0;
};

/// All descent conditions of the curve; there are arithmetic_genus of them.
std::vector<GluingCondition> gluing_conditions(const CurveSpec& spec);
std::vector<GluingCondition> gluing_conditions(const GluingClass& cls);

/// Produces the Taylor jet of some function at a point.
using JetSource = std::function<Jet(cplx point, int len)>;

cplx apply_condition(const GluingCondition& c, const JetSource& f);

/// Relative size of a condition's value: |L[F]| divided by the magnitudes of
/// the quantities it compares.
double condition_residual(const GluingCondition& c, const JetSource& f);

/// Prefactor numerator = fixed + sum_k coef_k lambda^{free_powers[k]} over a
/// denominator given by `poles`.
struct NumeratorAnsatz {
  Poly fixed;
  std::vector<int> free_powers;
  std::vector<WeightedPoint> poles;
};

/// Solved coefficients and their analytic derivatives, with z and zbar
/// treated as independent variables.
struct NumeratorSolution {
  std::vector<cplx> coef;
  std::vector<cplx> d_z;
  std::vector<cplx> d_zbar;
  std::vector<cplx> d_z_zbar;
  double condition = 1.0;

  Poly numerator(const NumeratorAnsatz& a) const;
  Poly numerator_dz(const NumeratorAnsatz& a) const;
  Poly numerator_dzbar(const NumeratorAnsatz& a) const;
  Poly numerator_dz_dzbar(const NumeratorAnsatz& a) const;
};

struct LinearSystem {
  MatrixXc matrix;
  VectorXc rhs;
  /// Per row: largest term entering the row before cancellation.
  Eigen::VectorXd envelope;
};

/// Rows: conditions; columns: free coefficients; rhs: minus the conditions
/// applied to the fixed part.
LinearSystem assemble_system(const NumeratorAnsatz& ansatz,
                             const std::vector<GluingCondition>& conds,
                             const ExponentialCore& core);

/// Solves the square system "every condition annihilates E * numerator/den".
/// Throws NonGenericDivisor if the equilibrated condition number exceeds
/// `cutoff`, InvalidInput if the system is not square.
NumeratorSolution solve_numerator(const NumeratorAnsatz& ansatz,
                                  const std::vector<GluingCondition>& conds,
                                  const ExponentialCore& core,
                                  double cutoff = kConditionCutoff);

/// Jet source for E(lambda) * R(lambda).
JetSource wave_jets(const ExponentialCore& core, const RationalFunction& r);

/// Largest relative descent-condition residual of E * R.
double max_gluing_residual(const std::vector<GluingCondition>& conds,
                           const ExponentialCore& core,
                           const RationalFunction& r);

}  // namespace fgap
