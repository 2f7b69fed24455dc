#include "fgap/rational.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "fgap/errors.hpp"

namespace fgap {

cplx ipow(cplx base, int n) {
  if (n < 0) return 1.0 / ipow(base, -n);
  cplx out = 1.0;
  while (n > 0) {
    if (n & 1) out *= base;
    base *= base;
    n >>= 1;
  }
  return out;
}

Jet jet_mul(const Jet& a, const Jet& b) {
  const std::size_t len = std::min(a.size(), b.size());
  Jet out(len, cplx{});
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = 0; i + j < len; ++j) out[i + j] += a[i] * b[j];
  return out;
}

Jet jet_exp(const Jet& a) {
  // e = exp(a)  =>  e' = a' e, i.e. n e_n = sum_k k a_k e_{n-k}.
  const std::size_t len = a.size();
  Jet e(len, cplx{});
  if (len == 0) return e;
  e[0] = std::exp(a[0]);
  for (std::size_t n = 1; n < len; ++n) {
    cplx s{};
    for (std::size_t k = 1; k <= n; ++k)
      s += static_cast<double>(k) * a[k] * e[n - k];
    e[n] = s / static_cast<double>(n);
  }
  return e;
}

Jet jet_inverse_power(cplx lambda0, cplx root, int m, int len) {
  // (d + h)^{-m} = d^{-m} sum_k binom(-m, k) (h/d)^k, d = lambda0 - root.
  const cplx d = lambda0 - root;
  if (d == 0.0) throw EvaluationAtPole("jet requested at a pole");
  Jet out(static_cast<std::size_t>(len));
  if (len == 0) return out;
  out[0] = ipow(d, -m);
  for (int k = 1; k < len; ++k)
    out[k] = out[k - 1] * (-static_cast<double>(m + k - 1) /
                           static_cast<double>(k)) / d;
  return out;
}

Jet jet_power(cplx lambda0, int k, int len) {
  // (lambda0 + h)^k, binomial expansion; k may be negative.
  if (k < 0) return jet_inverse_power(lambda0, 0.0, -k, len);
  Jet out(static_cast<std::size_t>(len), cplx{});
  cplx binom = 1.0;
  for (int j = 0; j < len && j <= k; ++j) {
    out[j] = binom * ipow(lambda0, k - j);
    binom *= static_cast<double>(k - j) / static_cast<double>(j + 1);
  }
  return out;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Poly Poly::monomial(int degree, cplx coeff) {
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1, cplx{});
  c.back() = coeff;
  return Poly(std::move(c));
}

Poly Poly::from_roots(std::span<const WeightedPoint> roots) {
  Poly p(std::vector<cplx>{1.0});
  for (const auto& r : roots)
    for (int i = 0; i < r.multiplicity; ++i)
      p = p * Poly(std::vector<cplx>{-r.point, 1.0});
  return p;
}

cplx Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

cplx Poly::operator()(cplx x) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Poly(std::move(d));
}

Jet Poly::taylor(cplx x, int len) const {
  // Repeated synthetic division by (lambda - x).
  Jet out(static_cast<std::size_t>(len), cplx{});
  std::vector<cplx> work = coeffs_;
  for (int j = 0; j < len && !work.empty(); ++j) {
    const std::size_t n = work.size();
    std::vector<cplx> quot(n - 1);
    cplx acc{};
    for (std::size_t i = n; i-- > 0;) {
      acc = acc * x + work[i];
      if (i > 0) quot[i - 1] = acc;
    }
    out[j] = acc;
    work = std::move(quot);
  }
  return out;
}

std::vector<double> Poly::taylor_envelope(cplx x, int len) const {
  std::vector<double> out(static_cast<std::size_t>(len), 0.0);
  const double ax = std::abs(x);
  for (int j = 0; j < len; ++j) {
    double s = 0.0;
    for (int k = j; k <= degree(); ++k) {
      double binom = 1.0;
      for (int i = 0; i < j; ++i)
        binom *= static_cast<double>(k - i) / static_cast<double>(i + 1);
      s += binom * std::abs(coeffs_[k]) * std::pow(ax, k - j);
    }
    out[j] = s;
  }
  return out;
}

std::vector<cplx> Poly::roots() const {
  const int n = degree();
  if (n <= 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const cplx lead = coeffs_.back();
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs_[i] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<cplx> out(n);
  for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()(i);
  return out;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<cplx> c(std::max(coeffs_.size(), o.coeffs_.size()), cplx{});
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + o * cplx{-1.0}; }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<cplx> c(coeffs_.size() + o.coeffs_.size() - 1, cplx{});
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      c[i + j] += coeffs_[i] * o.coeffs_[j];
  return Poly(std::move(c));
}

Poly Poly::operator*(cplx s) const {
  std::vector<cplx> c = coeffs_;
  for (auto& v : c) v *= s;
  return Poly(std::move(c));
}

cplx Laurent::coeff(int power) const {
  const int idx = power - lowest;
  if (idx < 0 || idx >= static_cast<int>(coeffs.size())) return 0.0;
  return coeffs[static_cast<std::size_t>(idx)];
}

// ---------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(Poly numerator,
                                   std::vector<WeightedPoint> poles)
    : numerator_(std::move(numerator)) {
  for (const auto& p : poles) {
    if (p.multiplicity < 0)
      throw InvalidInput("pole multiplicity must be nonnegative");
    if (p.multiplicity == 0) continue;
    for (const auto& q : poles_)
      if (points_coincide(p.point, q.point))
        throw DegenerateConfig("denominator roots must be distinct");
    poles_.push_back(p);
  }
}

RationalFunction RationalFunction::constant(cplx c) {
  return RationalFunction(Poly(std::vector<cplx>{c}), {});
}

int RationalFunction::denominator_degree() const {
  int d = 0;
  for (const auto& p : poles_) d += p.multiplicity;
  return d;
}

Poly RationalFunction::denominator() const { return Poly::from_roots(poles_); }

int RationalFunction::pole_index(cplx x) const {
  for (std::size_t i = 0; i < poles_.size(); ++i)
    if (points_coincide(poles_[i].point, x)) return static_cast<int>(i);
  return -1;
}

cplx RationalFunction::operator()(cplx x) const {
  if (pole_index(x) >= 0) throw EvaluationAtPole("evaluation at a pole");
  cplx v = numerator_(x);
  for (const auto& p : poles_) v /= ipow(x - p.point, p.multiplicity);
  return v;
}

RationalFunction RationalFunction::derivative() const {
  std::vector<WeightedPoint> simple;
  for (const auto& p : poles_) simple.push_back({p.point, 1});
  const Poly q = Poly::from_roots(simple);
  Poly num = numerator_.derivative() * q;
  for (std::size_t i = 0; i < poles_.size(); ++i) {
    std::vector<WeightedPoint> others;
    for (std::size_t j = 0; j < poles_.size(); ++j)
      if (j != i) others.push_back(simple[j]);
    num = num - numerator_ * Poly::from_roots(others) *
                    cplx(static_cast<double>(poles_[i].multiplicity));
  }
  std::vector<WeightedPoint> raised = poles_;
  for (auto& p : raised) ++p.multiplicity;
  return RationalFunction(num, raised);
}

Jet RationalFunction::taylor_jet(cplx x, int len) const {
  if (pole_index(x) >= 0) throw EvaluationAtPole("Taylor jet at a pole");
  Jet j = numerator_.taylor(x, len);
  for (const auto& p : poles_)
    j = jet_mul(j, jet_inverse_power(x, p.point, p.multiplicity, len));
  return j;
}

Laurent RationalFunction::laurent_at(cplx x, int len) const {
  const int idx = pole_index(x);
  if (idx < 0) return {0, taylor_jet(x, len)};
  Jet j = numerator_.taylor(poles_[idx].point, len);
  for (std::size_t i = 0; i < poles_.size(); ++i) {
    if (static_cast<int>(i) == idx) continue;
    j = jet_mul(j, jet_inverse_power(poles_[idx].point, poles_[i].point,
                                     poles_[i].multiplicity, len));
  }
  return {-poles_[idx].multiplicity, j};
}

Laurent RationalFunction::expansion_at_infinity(int len) const {
  // f(1/t) = t^{M-d} * rev(N)(t) / prod (1 - r t)^m
  if (numerator_.is_zero())
    return {0, std::vector<cplx>(static_cast<std::size_t>(len), cplx{})};
  const int d = numerator_.degree();
  std::vector<cplx> rev(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) rev[d - k] = numerator_.coeffs()[k];
  Jet series(static_cast<std::size_t>(len), cplx{});
  for (int k = 0; k < len && k <= d; ++k) series[k] = rev[k];
  for (const auto& p : poles_) {
    // (1 - r t)^{-m} = sum_k binom(m+k-1, k) r^k t^k
    Jet g(static_cast<std::size_t>(len));
    if (len > 0) g[0] = 1.0;
    for (int k = 1; k < len; ++k)
      g[k] = g[k - 1] * p.point * (static_cast<double>(p.multiplicity + k - 1) /
                                   static_cast<double>(k));
    series = jet_mul(series, g);
  }
  return {denominator_degree() - d, series};
}

std::vector<cplx> RationalFunction::laurent_at_infinity(int len) const {
  const Laurent l = expansion_at_infinity(len);
  if (l.lowest < 0)
    throw UnboundedAtInfinity("rational function has a pole at infinity");
  std::vector<cplx> out(static_cast<std::size_t>(len));
  for (int j = 0; j < len; ++j) out[j] = l.coeff(j);
  return out;
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  std::vector<WeightedPoint> poles = poles_;
  for (const auto& q : o.poles_) {
    bool merged = false;
    for (auto& p : poles)
      if (points_coincide(p.point, q.point)) {
        p.multiplicity += q.multiplicity;
        merged = true;
        break;
      }
    if (!merged) poles.push_back(q);
  }
  return RationalFunction(numerator_ * o.numerator_, poles);
}

RationalFunction RationalFunction::operator*(cplx s) const {
  return RationalFunction(numerator_ * s, poles_);
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  std::vector<WeightedPoint> poles = poles_;
  for (const auto& q : o.poles_) {
    bool found = false;
    for (auto& p : poles)
      if (points_coincide(p.point, q.point)) {
        p.multiplicity = std::max(p.multiplicity, q.multiplicity);
        found = true;
      }
    if (!found) poles.push_back(q);
  }
  auto lift = [&poles](const RationalFunction& f) {
    std::vector<WeightedPoint> missing;
    for (const auto& p : poles) {
      const int idx = f.pole_index(p.point);
      const int have = idx < 0 ? 0 : f.poles_[idx].multiplicity;
      missing.push_back({p.point, p.multiplicity - have});
    }
    return f.numerator_ * Poly::from_roots(missing);
  };
  return RationalFunction(lift(*this) + lift(o), poles);
}

RationalFunction RationalFunction::negate_argument() const {
  std::vector<cplx> c = numerator_.coeffs();
  for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
  std::vector<WeightedPoint> poles;
  for (const auto& p : poles_) poles.push_back({-p.point, p.multiplicity});
  const double sign = denominator_degree() % 2 == 0 ? 1.0 : -1.0;
  return RationalFunction(Poly(std::move(c)) * cplx(sign), poles);
}

RationalFunction RationalFunction::tau_conjugate(double t) const {
  if (numerator_.is_zero()) return RationalFunction(Poly(), {});
  const int d = numerator_.degree();
  const int big_m = denominator_degree();
  std::vector<cplx> rev(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k)
    rev[d - k] = std::conj(numerator_.coeffs()[k]) * std::pow(t, k);
  Poly num(std::move(rev));
  cplx scale = 1.0;
  std::vector<WeightedPoint> poles;
  for (const auto& p : poles_) {
    if (p.point == 0.0) {
      scale *= std::pow(t, p.multiplicity);
    } else {
      scale *= std::pow(-std::conj(p.point), p.multiplicity);
      poles.push_back({t / std::conj(p.point), p.multiplicity});
    }
  }
  if (big_m >= d)
    num = num * Poly::monomial(big_m - d);
  else
    poles.push_back({0.0, d - big_m});
  return RationalFunction(num * (1.0 / scale), poles);
}

// ---------------------------------------------------------- differentials

cplx residue(const RationalDifferential& w, const ProjPoint& p) {
  if (p.is_infinite()) {
    // Needs the lambda^{-1} term, which sits 1 - lowest places in.
    const int lowest = w.f.denominator_degree() - w.f.numerator().degree();
    return -w.f.expansion_at_infinity(std::max(1, 2 - lowest)).coeff(1);
  }
  const int idx = w.f.pole_index(p.value());
  if (idx < 0) return 0.0;
  const int m = w.f.poles()[idx].multiplicity;
  return w.f.laurent_at(p.value(), m).coeff(-1);
}

PrincipalPart principal_part_in_parameter(const RationalDifferential& w,
                                          MarkedPoint which, int order,
                                          cplx alpha, cplx beta) {
  if (order < 1) throw InvalidInput("principal part order must be >= 1");
  // kappa^{-i} d kappa coefficient for i = 1 .. max_i, where kappa = 1/k.
  std::vector<cplx> by_i;  // index i
  int max_i = 0;
  if (which == MarkedPoint::plus) {
    // f = sum_j c_j lambda^{-j};  omega = -sum_j c_j alpha^{j-1} kappa^{j-2}.
    const Laurent l = w.f.expansion_at_infinity(1);
    max_i = std::max(order, 2 - l.lowest);
    const Laurent full = w.f.expansion_at_infinity(max_i + 3);
    by_i.assign(static_cast<std::size_t>(max_i) + 1, cplx{});
    for (int i = 1; i <= max_i; ++i) {
      const int j = 2 - i;
      by_i[i] = -full.coeff(j) * ipow(alpha, j - 1);
    }
  } else {
    // f = sum_j d_j lambda^j;  omega = sum_j d_j beta^{j+1} kappa^j.
    const Laurent l = w.f.laurent_at(0.0, 1);
    max_i = std::max(order, -l.lowest);
    const Laurent full = w.f.laurent_at(0.0, max_i + 3);
    by_i.assign(static_cast<std::size_t>(max_i) + 1, cplx{});
    for (int i = 1; i <= max_i; ++i)
      by_i[i] = full.coeff(-i) * ipow(beta, 1 - i);
  }
  double scale = 0.0;
  for (int i = 1; i <= max_i; ++i) scale = std::max(scale, std::abs(by_i[i]));
  const double tol = 1e-10 * scale;
  for (int i = order + 1; i <= max_i; ++i)
    if (std::abs(by_i[i]) > tol)
      throw PoleOrderExceeded("pole order at the marked point exceeds " +
                              std::to_string(order));
  PrincipalPart pp;
  pp.order = order;
  for (int i = order; i >= 1; --i) pp.coeffs.push_back(by_i[i]);
  pp.residue = by_i[1];
  for (int i = order; i >= 1; --i)
    if (std::abs(by_i[i]) > tol && scale > 0.0) {
      pp.pole_order = i;
      break;
    }
  return pp;
}

}  // namespace fgap
