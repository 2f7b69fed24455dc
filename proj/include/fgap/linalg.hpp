#pragma once

#include <Eigen/Dense>
#include <complex>

namespace fgap {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

/// Default cutoff above which a gluing system is declared non-generic.
inline constexpr double kConditionCutoff = 1e12;
/// Default relative singular-value threshold for rank decisions.
inline constexpr double kRankThreshold = 1e-10;

/// Rows scaled to unit max-norm; zero rows are left alone.
struct Equilibrated {
  MatrixXc matrix;
  Eigen::VectorXd row_scale;  // multiply a row's right-hand side by this
};

Equilibrated equilibrate_rows(const MatrixXc& m);

/// 2-norm condition number via singular values (inf for singular input).
double condition_number(const MatrixXc& m);

/// Factorized square system with its (row-equilibrated) condition number.
class SquareSolver {
 public:
  /// Throws NonGenericDivisor when the condition exceeds `cutoff`.
  explicit SquareSolver(const MatrixXc& m, double cutoff = kConditionCutoff);
  /// Rows are scaled by `envelope` (the magnitude of the terms a row is built
  /// from, before cancellation) and the condition is max(s_max, 1) / s_min,
  /// so a system that is small only through cancellation counts as singular.
  SquareSolver(const MatrixXc& m, const Eigen::VectorXd& envelope,
               double cutoff = kConditionCutoff);

  VectorXc solve(const VectorXc& rhs) const;
  double condition() const { return condition_; }

 private:
  Eigen::VectorXd row_scale_;
  Eigen::PartialPivLU<MatrixXc> lu_;
  double condition_ = 1.0;
};

/// Numerical rank: number of singular values above threshold * sigma_max.
int numerical_rank(const MatrixXc& m, double threshold = kRankThreshold);

struct LeastSquaresResult {
  VectorXc x;
  double residual = 0.0;  // relative: |Ax - b| / max(|b|, tiny)
  int null_dimension = 0;
};

/// Minimum-norm least squares with rank threshold, on row-equilibrated data.
LeastSquaresResult least_squares(const MatrixXc& a, const VectorXc& b,
                                 double threshold = kRankThreshold);

}  // namespace fgap
