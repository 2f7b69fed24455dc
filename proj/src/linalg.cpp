#include "fgap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fgap/errors.hpp"

namespace fgap {

Equilibrated equilibrate_rows(const MatrixXc& m) {
  Equilibrated out{m, Eigen::VectorXd::Ones(m.rows())};
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double mx = m.row(i).cwiseAbs().maxCoeff();
    if (mx > 0.0) {
      out.row_scale(i) = 1.0 / mx;
      out.matrix.row(i) *= 1.0 / mx;
    }
  }
  return out;
}

double condition_number(const MatrixXc& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<MatrixXc> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

SquareSolver::SquareSolver(const MatrixXc& m, double cutoff)
    : SquareSolver(m, m.rows() > 0 ? Eigen::VectorXd(m.cwiseAbs().rowwise().maxCoeff())
                                   : Eigen::VectorXd(),
                   cutoff) {}

SquareSolver::SquareSolver(const MatrixXc& m, const Eigen::VectorXd& envelope,
                           double cutoff) {
  if (m.rows() != m.cols()) throw InvalidInput("square system expected");
  if (envelope.size() != m.rows()) throw InvalidInput("envelope size mismatch");
  row_scale_ = Eigen::VectorXd::Ones(m.rows());
  MatrixXc scaled = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    if (envelope(i) > 0.0) {
      row_scale_(i) = 1.0 / envelope(i);
      scaled.row(i) *= row_scale_(i);
    }
  if (m.size() > 0) {
    Eigen::JacobiSVD<MatrixXc> svd(scaled);
    const auto& s = svd.singularValues();
    const double smin = s(s.size() - 1);
    condition_ = smin == 0.0 ? std::numeric_limits<double>::infinity()
                             : std::max(s(0), 1.0) / smin;
  }
  if (!(condition_ <= cutoff))
    throw NonGenericDivisor(
        "gluing system condition number " + std::to_string(condition_) +
            " exceeds the cutoff: the divisor is not generic here",
        condition_);
  if (m.size() > 0) lu_.compute(scaled);
}

VectorXc SquareSolver::solve(const VectorXc& rhs) const {
  if (rhs.size() == 0) return rhs;
  VectorXc scaled = rhs;
  for (Eigen::Index i = 0; i < rhs.size(); ++i) scaled(i) *= row_scale_(i);
  return lu_.solve(scaled);
}

int numerical_rank(const MatrixXc& m, double threshold) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<MatrixXc> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > threshold * s(0)) ++r;
  return r;
}

LeastSquaresResult least_squares(const MatrixXc& a, const VectorXc& b,
                                 double threshold) {
  const Equilibrated eq = equilibrate_rows(a);
  VectorXc rhs = b;
  for (Eigen::Index i = 0; i < b.size(); ++i) rhs(i) *= eq.row_scale(i);
  Eigen::JacobiSVD<MatrixXc> svd(eq.matrix,
                                 Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int rank = 0;
  if (s.size() > 0 && s(0) > 0.0)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > threshold * s(0)) ++rank;
  VectorXc x = VectorXc::Zero(a.cols());
  for (int i = 0; i < rank; ++i)
    x += svd.matrixV().col(i) * (svd.matrixU().col(i).dot(rhs) / s(i));
  LeastSquaresResult out;
  out.x = x;
  const double bn = std::max(rhs.norm(), std::numeric_limits<double>::min());
  out.residual = (eq.matrix * x - rhs).norm() / bn;
  out.null_dimension = static_cast<int>(a.cols()) - rank;
  return out;
}

}  // namespace fgap
