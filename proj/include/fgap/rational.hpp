#pragma once

// Complex polynomials, rational functions in factored-denominator form and
// rational differentials f(lambda) d lambda.

#include <complex>
#include <span>
#include <vector>

#include "fgap/spectral_data.hpp"

namespace fgap {

/// Truncated power series in h = lambda - lambda0, lowest order first.
using Jet = std::vector<cplx>;

/// base^n by repeated squaring; ipow(0, 0) = 1.
cplx ipow(cplx base, int n);

Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_exp(const Jet& a);
/// Jet of 1/(lambda0 + h - root)^m at lambda0 (root != lambda0).
Jet jet_inverse_power(cplx lambda0, cplx root, int m, int len);
/// Jet of lambda^k at lambda0.
Jet jet_power(cplx lambda0, int k, int len);

class Poly {
 public:
  Poly() = default;
  /// Coefficients, lowest degree first. Trailing zeros are trimmed.
  explicit Poly(std::vector<cplx> coeffs);
  static Poly monomial(int degree, cplx coeff = 1.0);
  /// prod (lambda - root)^multiplicity
  static Poly from_roots(std::span<const WeightedPoint> roots);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  /// Coefficient of lambda^k (0 outside the stored range).
  cplx coeff(int k) const;

  cplx operator()(cplx x) const;
  Poly derivative() const;
  /// Taylor coefficients at x: entry j is p^{(j)}(x)/j!.
  Jet taylor(cplx x, int len) const;
  /// Same sums with every term replaced by its magnitude; a rounding envelope
  /// for deciding whether a computed Taylor coefficient is zero.
  std::vector<double> taylor_envelope(cplx x, int len) const;
  /// Roots via companion-matrix eigenvalues.
  std::vector<cplx> roots() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(cplx s) const;

 private:
  void trim();
  std::vector<cplx> coeffs_;
};

/// Laurent expansion sum_j coeffs[j] * h^(lowest + j).
struct Laurent {
  int lowest = 0;
  std::vector<cplx> coeffs;

  cplx coeff(int power) const;
};

/// numerator / prod (lambda - root)^multiplicity with distinct roots.
class RationalFunction {
 public:
  RationalFunction() : numerator_(std::vector<cplx>{1.0}) {}
  RationalFunction(Poly numerator, std::vector<WeightedPoint> poles);
  static RationalFunction constant(cplx c);

  const Poly& numerator() const { return numerator_; }
  const std::vector<WeightedPoint>& poles() const { return poles_; }
  int denominator_degree() const;
  Poly denominator() const;

  cplx operator()(cplx x) const;
  RationalFunction derivative() const;
  /// Taylor coefficients at a non-pole point.
  Jet taylor_jet(cplx x, int len) const;
  /// Laurent expansion at a finite point (pole or not).
  Laurent laurent_at(cplx x, int len) const;
  /// Expansion in t = 1/lambda: coefficient of lambda^{-j} at index j - lowest.
  /// Works for unbounded functions too (lowest < 0).
  Laurent expansion_at_infinity(int len) const;
  /// Coefficients of lambda^0, lambda^-1, ... ; throws UnboundedAtInfinity.
  std::vector<cplx> laurent_at_infinity(int len) const;

  /// Index into poles() of the pole coinciding with x, or -1.
  int pole_index(cplx x) const;

  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator*(cplx s) const;
  RationalFunction operator+(const RationalFunction& o) const;
  /// f(-lambda)
  RationalFunction negate_argument() const;
  /// conj(f(t / conj(lambda)))
  RationalFunction tau_conjugate(double t) const;

 private:
  Poly numerator_;
  std::vector<WeightedPoint> poles_;
};

/// omega = f(lambda) d lambda.
struct RationalDifferential {
  RationalFunction f;
};

cplx residue(const RationalDifferential& w, const ProjPoint& p);

enum class MarkedPoint { plus, minus };

/// Expansion of omega in the local parameter kappa = 1/k at a marked point.
struct PrincipalPart {
  int order = 0;
  /// coeffs[i] multiplies k^(order - i) dk^{-1}, i = 0 .. order-1; the last
  /// entry (k^1 dk^{-1}) is the residue term.
  std::vector<cplx> coeffs;
  cplx residue;
  /// Actual pole order found (<= order).
  int pole_order = 0;

  cplx leading() const { return coeffs.empty() ? cplx{} : coeffs.front(); }
};

/// k_+ = alpha * lambda at infinity, k_- = beta / lambda at 0.
PrincipalPart principal_part_in_parameter(const RationalDifferential& w,
                                          MarkedPoint which, int order,
                                          cplx alpha, cplx beta);

}  // namespace fgap
