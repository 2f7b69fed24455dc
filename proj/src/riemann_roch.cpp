#include "fgap/riemann_roch.hpp"

#include <algorithm>
#include <cmath>

#include "fgap/errors.hpp"
#include "fgap/gluing.hpp"
#include "fgap/rational.hpp"

namespace fgap {

namespace {

void check_inputs(const CurveSpec& spec, const RRDivisor& divisor) {
  const auto supports = all_support_points(spec);
  for (std::size_t i = 0; i < supports.size(); ++i)
    for (std::size_t j = i + 1; j < supports.size(); ++j)
      if (points_coincide(supports[i].point, supports[j].point))
        throw InvalidInput("gluing classes share the support point " +
                           ProjPoint::finite(supports[i].point).to_string());
  for (std::size_t i = 0; i < divisor.entries.size(); ++i) {
    const auto& e = divisor.entries[i];
    if (e.multiplicity < 0)
      throw InvalidInput("divisor multiplicities must be nonnegative");
    for (std::size_t j = i + 1; j < divisor.entries.size(); ++j)
      if (divisor.entries[j].point == e.point)
        throw InvalidInput("divisor repeats the point " +
                           e.point.to_string());
    if (e.point.is_infinite()) continue;
    for (const auto& q : supports)
      if (points_coincide(q.point, e.point.value()))
        throw InvalidInput("divisor point " + e.point.to_string() +
                           " lies on a gluing support");
  }
}

int multiplicity_at_infinity(const RRDivisor& divisor) {
  for (const auto& e : divisor.entries)
    if (e.point.is_infinite()) return e.multiplicity;
  return 0;
}

// Rank after scaling rows and columns to unit max-norm.
int scaled_rank(const MatrixXc& m, double threshold) {
  if (m.size() == 0) return 0;
  MatrixXc s = equilibrate_rows(m).matrix;
  for (Eigen::Index j = 0; j < s.cols(); ++j) {
    const double mx = s.col(j).cwiseAbs().maxCoeff();
    if (mx > 0.0) s.col(j) /= mx;
  }
  return numerical_rank(s, threshold);
}

void finish(LinearSpaceProbe& p, double threshold) {
  p.rank = scaled_rank(p.constraints, threshold);
  p.dimension = static_cast<int>(p.ambient.size()) - p.rank;
}

}  // namespace

int RRDivisor::degree() const {
  int d = 0;
  for (const auto& e : entries) d += e.multiplicity;
  return d;
}

LinearSpaceProbe probe_function_space(const CurveSpec& spec,
                                      const RRDivisor& divisor,
                                      double threshold) {
  check_inputs(spec, divisor);
  LinearSpaceProbe p;
  std::vector<RationalFunction> basis;
  basis.push_back(RationalFunction::constant(1.0));
  p.ambient.push_back("1");
  for (const auto& e : divisor.entries) {
    for (int m = 1; m <= e.multiplicity; ++m) {
      if (e.point.is_infinite()) {
        basis.emplace_back(Poly::monomial(m), std::vector<WeightedPoint>{});
        p.ambient.push_back("lambda^" + std::to_string(m));
      } else {
        basis.emplace_back(Poly::monomial(0),
                           std::vector<WeightedPoint>{{e.point.value(), m}});
        p.ambient.push_back("(lambda - " + e.point.to_string() + ")^-" +
                            std::to_string(m));
      }
    }
  }
  const auto conds = gluing_conditions(spec);
  p.constraints = MatrixXc::Zero(static_cast<Eigen::Index>(conds.size()),
                                 static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const RationalFunction& f = basis[j];
    const JetSource src = [f](cplx x, int len) { return f.taylor_jet(x, len); };
    for (std::size_t i = 0; i < conds.size(); ++i)
      p.constraints(i, j) = apply_condition(conds[i], src);
  }
  finish(p, threshold);
  return p;
}

LinearSpaceProbe probe_omega_prime(const CurveSpec& spec,
                                   const RRDivisor& divisor,
                                   double threshold) {
  check_inputs(spec, divisor);
  LinearSpaceProbe p;
  const auto supports = all_support_points(spec);
  int weight = 0;
  for (const auto& q : supports) weight += q.multiplicity;
  // Regular at infinity means f = O(lambda^-2); a zero of order n there
  // lowers the numerator degree bound by n.
  const int deg_max = weight - 2 - multiplicity_at_infinity(divisor);
  if (deg_max < 0) {
    p.constraints = MatrixXc(0, 0);
    return p;
  }
  const int ncols = deg_max + 1;
  std::vector<RationalDifferential> basis;
  for (int k = 0; k < ncols; ++k) {
    basis.push_back({RationalFunction(Poly::monomial(k), supports)});
    p.ambient.push_back("lambda^" + std::to_string(k) + " / den dlambda");
  }

  // Local functions are constant modulo the pole orders, so regularity is one
  // residue sum per class. The sums add up to -res_inf = 0, so the last class
  // row is dropped: kept, it would be rounding noise amplified by scaling.
  std::vector<std::vector<cplx>> rows;
  for (std::size_t c = 0; c + 1 < spec.classes.size(); ++c) {
    std::vector<cplx> row(ncols);
    for (int k = 0; k < ncols; ++k)
      for (const auto& q : spec.classes[c].members())
        row[k] += residue(basis[k], ProjPoint::finite(q.point));
    rows.push_back(std::move(row));
  }
  // The denominator is nonzero on D, so zeros are jets of the numerator.
  for (const auto& e : divisor.entries) {
    if (e.point.is_infinite() || e.multiplicity == 0) continue;
    for (int r = 0; r < e.multiplicity; ++r) {
      std::vector<cplx> row(ncols);
      for (int k = 0; k < ncols; ++k)
        row[k] = jet_power(e.point.value(), k, e.multiplicity)[r];
      rows.push_back(std::move(row));
    }
  }
  p.constraints = MatrixXc::Zero(static_cast<Eigen::Index>(rows.size()), ncols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int k = 0; k < ncols; ++k) p.constraints(i, k) = rows[i][k];
  finish(p, threshold);
  return p;
}

int function_space_dim(const CurveSpec& spec, const RRDivisor& divisor,
                       double threshold) {
  return probe_function_space(spec, divisor, threshold).dimension;
}

int omega_prime_dim(const CurveSpec& spec, const RRDivisor& divisor,
                    double threshold) {
  return probe_omega_prime(spec, divisor, threshold).dimension;
}

int regular_differential_dim(const CurveSpec& spec, double threshold) {
  return omega_prime_dim(spec, RRDivisor{}, threshold);
}

RRReport rr_report(const CurveSpec& spec, const RRDivisor& divisor,
                   double threshold) {
  RRReport r;
  r.degree = divisor.degree();
  r.arithmetic_genus = arithmetic_genus(spec);
  r.dim_l = function_space_dim(spec, divisor, threshold);
  r.dim_omega = omega_prime_dim(spec, divisor, threshold);
  r.residual = r.dim_l - r.dim_omega - (r.degree + 1 - r.arithmetic_genus);
  return r;
}

}  // namespace fgap
