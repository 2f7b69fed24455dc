#include "fgap/gluing.hpp"

#include <algorithm>
#include <cmath>

#include "fgap/errors.hpp"

namespace fgap {

Jet ExponentialCore::jet(cplx q, int len) const {
  if (q == 0.0) throw EvaluationAtPole("E has an essential singularity at 0");
  // exponent(q + h) = exponent(q) + alpha z h + beta zbar (1/(q+h) - 1/q)
  Jet a = jet_inverse_power(q, 0.0, 1, len);
  for (auto& v : a) v *= beta_ * zbar_;
  if (len > 0) a[0] = exponent(q);
  if (len > 1) a[1] += alpha_ * z_;
  return jet_exp(a);
}

std::vector<GluingCondition> gluing_conditions(const GluingClass& cls) {
  std::vector<GluingCondition> out;
  const auto& m = cls.members();
  for (std::size_t i = 1; i < m.size(); ++i)
    out.push_back({GluingCondition::Kind::value_equal, m[0].point, m[i].point,
                   0});
  for (const auto& member : m)
    for (int order = 1; order < member.multiplicity; ++order)
      out.push_back({GluingCondition::Kind::jet_vanish, member.point,
                     member.point, order});
  return out;
}

std::vector<GluingCondition> gluing_conditions(const CurveSpec& spec) {
  std::vector<GluingCondition> out;
  for (const auto& c : spec.classes) {
    auto part = gluing_conditions(c);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

cplx apply_condition(const GluingCondition& c, const JetSource& f) {
  if (c.kind == GluingCondition::Kind::value_equal)
    return f(c.point, 1)[0] - f(c.other, 1)[0];
  return f(c.point, c.order + 1)[static_cast<std::size_t>(c.order)];
}

double condition_residual(const GluingCondition& c, const JetSource& f) {
  if (c.kind == GluingCondition::Kind::value_equal) {
    const cplx a = f(c.point, 1)[0];
    const cplx b = f(c.other, 1)[0];
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
  }
  const Jet j = f(c.point, c.order + 1);
  double scale = 0.0;
  for (const auto& v : j) scale = std::max(scale, std::abs(v));
  return scale == 0.0 ? 0.0 : std::abs(j.back()) / scale;
}

namespace {

enum class Weight { one, z, zbar };

JetSource basis_jets(const ExponentialCore& core, const Poly& numer,
                     const std::vector<WeightedPoint>& poles, Weight w) {
  return [core, numer, poles, w](cplx q, int len) {
    Jet j = jet_mul(core.jet(q, len), numer.taylor(q, len));
    for (const auto& p : poles)
      j = jet_mul(j, jet_inverse_power(q, p.point, p.multiplicity, len));
    if (w == Weight::z) {
      Jet lam = jet_power(q, 1, len);
      for (auto& v : lam) v *= core.alpha();
      j = jet_mul(j, lam);
    } else if (w == Weight::zbar) {
      Jet inv = jet_inverse_power(q, 0.0, 1, len);
      for (auto& v : inv) v *= core.beta();
      j = jet_mul(j, inv);
    }
    return j;
  };
}

Poly assemble(const NumeratorAnsatz& a, const std::vector<cplx>& coef,
              bool with_fixed) {
  Poly p = with_fixed ? a.fixed : Poly();
  for (std::size_t k = 0; k < coef.size(); ++k)
    p = p + Poly::monomial(a.free_powers[k], coef[k]);
  return p;
}

// System for the weighted functional L[w * E * numerator / den].
LinearSystem assemble_weighted(const NumeratorAnsatz& ansatz,
                               const std::vector<GluingCondition>& conds,
                               const ExponentialCore& core, Weight w) {
  const auto n = static_cast<Eigen::Index>(ansatz.free_powers.size());
  const auto rows = static_cast<Eigen::Index>(conds.size());
  LinearSystem s{MatrixXc(rows, n), VectorXc(rows), Eigen::VectorXd::Zero(rows)};
  auto widen = [&](Eigen::Index i, const JetSource& f) {
    const auto& c = conds[static_cast<std::size_t>(i)];
    double e = 0.0;
    if (c.kind == GluingCondition::Kind::value_equal)
      e = std::max(std::abs(f(c.point, 1)[0]), std::abs(f(c.other, 1)[0]));
    else
      e = std::abs(apply_condition(c, f));
    s.envelope(i) = std::max(s.envelope(i), e);
  };
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto f = basis_jets(core, Poly::monomial(ansatz.free_powers[k]),
                              ansatz.poles, w);
    for (Eigen::Index i = 0; i < rows; ++i) {
      s.matrix(i, k) = apply_condition(conds[i], f);
      widen(i, f);
    }
  }
  const auto g = basis_jets(core, ansatz.fixed, ansatz.poles, w);
  for (Eigen::Index i = 0; i < rows; ++i) {
    s.rhs(i) = -apply_condition(conds[i], g);
    widen(i, g);
  }
  return s;
}

std::vector<cplx> to_std(const VectorXc& v) {
  return std::vector<cplx>(v.data(), v.data() + v.size());
}

}  // namespace

Poly NumeratorSolution::numerator(const NumeratorAnsatz& a) const {
  return assemble(a, coef, true);
}
Poly NumeratorSolution::numerator_dz(const NumeratorAnsatz& a) const {
  return assemble(a, d_z, false);
}
Poly NumeratorSolution::numerator_dzbar(const NumeratorAnsatz& a) const {
  return assemble(a, d_zbar, false);
}
Poly NumeratorSolution::numerator_dz_dzbar(const NumeratorAnsatz& a) const {
  return assemble(a, d_z_zbar, false);
}

NumeratorSolution solve_numerator(const NumeratorAnsatz& ansatz,
                                  const std::vector<GluingCondition>& conds,
                                  const ExponentialCore& core, double cutoff) {
  const auto n = static_cast<Eigen::Index>(ansatz.free_powers.size());
  if (static_cast<Eigen::Index>(conds.size()) != n)
    throw InvalidInput("gluing system is not square: " +
                       std::to_string(conds.size()) + " conditions for " +
                       std::to_string(n) + " unknowns");
  NumeratorSolution sol;
  if (n == 0) return sol;

  const LinearSystem s0 = assemble_weighted(ansatz, conds, core, Weight::one);
  const LinearSystem sz = assemble_weighted(ansatz, conds, core, Weight::z);
  const LinearSystem szb = assemble_weighted(ansatz, conds, core, Weight::zbar);
  const MatrixXc& m = s0.matrix;
  const MatrixXc& mz = sz.matrix;
  const MatrixXc& mzb = szb.matrix;
  const VectorXc& b = s0.rhs;
  const VectorXc& bz = sz.rhs;
  const VectorXc& bzb = szb.rhs;

  const SquareSolver solver(m, s0.envelope, cutoff);
  const VectorXc c = solver.solve(b);
  const VectorXc cz = solver.solve(bz - mz * c);
  const VectorXc czb = solver.solve(bzb - mzb * c);
  const VectorXc czzb = solver.solve(-(mz * czb) - mzb * cz);
  sol.coef = to_std(c);
  sol.d_z = to_std(cz);
  sol.d_zbar = to_std(czb);
  sol.d_z_zbar = to_std(czzb);
  sol.condition = solver.condition();
  return sol;
}

LinearSystem assemble_system(const NumeratorAnsatz& ansatz,
                             const std::vector<GluingCondition>& conds,
                             const ExponentialCore& core) {
  return assemble_weighted(ansatz, conds, core, Weight::one);
}

JetSource wave_jets(const ExponentialCore& core, const RationalFunction& r) {
  return [core, r](cplx q, int len) {
    return jet_mul(core.jet(q, len), r.taylor_jet(q, len));
  };
}

double max_gluing_residual(const std::vector<GluingCondition>& conds,
                           const ExponentialCore& core,
                           const RationalFunction& r) {
  const auto f = wave_jets(core, r);
  double worst = 0.0;
  for (const auto& c : conds) worst = std::max(worst, condition_residual(c, f));
  return worst;
}

}  // namespace fgap
