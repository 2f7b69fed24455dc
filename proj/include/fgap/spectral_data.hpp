#pragma once

// Data model for singular rational spectral curves.
//
// The normalization is always CP^1 with the two marked points fixed:
//   inf_+ = infinity, local parameter k_+ = alpha * lambda
//   inf_- = 0,        local parameter k_- = beta / lambda
// A singular curve is obtained by gluing finite nonzero points into classes.

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace fgap {

using cplx = std::complex<double>;

/// Relative tolerance for deciding that two user-supplied points coincide.
inline constexpr double kPointTolerance = 1e-9;

bool points_coincide(cplx a, cplx b, double rel_tol = kPointTolerance);

/// A point of CP^1: a finite coordinate or infinity.
class ProjPoint {
 public:
  static ProjPoint finite(cplx value);
  static ProjPoint infinity() { return ProjPoint(); }

  bool is_infinite() const { return !value_.has_value(); }
  /// Finite coordinate; throws InvalidInput for the point at infinity.
  cplx value() const;

  bool operator==(const ProjPoint& other) const;
  std::string to_string() const;

 private:
  ProjPoint() = default;
  explicit ProjPoint(cplx v) : value_(v) {}
  std::optional<cplx> value_;
};

struct WeightedPoint {
  cplx point;
  int multiplicity = 1;
};

/// One singular point of the curve: the support points glued together,
/// each with its multiplicity n_Q (jets of order < n_Q must vanish there).
class GluingClass {
 public:
  /// Throws InvalidInput unless total degree >= 2, members are distinct,
  /// multiplicities are >= 1 and no member is 0 (or non-finite).
  explicit GluingClass(std::vector<WeightedPoint> members);

  const std::vector<WeightedPoint>& members() const { return members_; }
  int degree() const;

 private:
  std::vector<WeightedPoint> members_;
};

struct CurveSpec {
  cplx alpha{1.0, 0.0};
  cplx beta{1.0, 0.0};
  std::vector<GluingClass> classes;
  bool sigma_declared = false;
  std::optional<double> tau_param;
};

/// Divisor of allowed poles of the wave function (finite nonzero points).
struct PoleDivisor {
  std::vector<WeightedPoint> entries;

  int degree() const;
};

enum class OperatorKind { schrodinger, dirac };

int delta_invariant(const GluingClass& cls);
int arithmetic_genus(const CurveSpec& spec);

enum class IssueCode {
  bad_scale,
  class_overlap,
  divisor_degree,
  divisor_point,
  divisor_overlap,
  sigma_obstruction,
  tau_param,
  tau_beta,
  tau_support,
  tau_divisor,
};

struct Issue {
  IssueCode code;
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> issues;

  bool admissible() const { return issues.empty(); }
  bool has(IssueCode code) const;
};

ValidationReport validate(const CurveSpec& spec, const PoleDivisor& divisor,
                          OperatorKind kind);

/// Throws InvalidRequest with the collected messages when validation fails.
void require_admissible(const CurveSpec& spec, const PoleDivisor& divisor,
                        OperatorKind kind);

/// sigma(lambda) = -lambda.
ProjPoint sigma_image(const ProjPoint& p);
/// tau(lambda) = t / conj(lambda); requires spec.tau_param.
ProjPoint tau_image(const CurveSpec& spec, const ProjPoint& p);

/// beta forced by the antiholomorphic involution for the given operator kind.
cplx tau_compatible_beta(cplx alpha, double t, OperatorKind kind);

/// Multiset equality of weighted point lists within kPointTolerance.
bool same_weighted_points(const std::vector<WeightedPoint>& a,
                          const std::vector<WeightedPoint>& b);

/// All support points of all classes, flattened.
std::vector<WeightedPoint> all_support_points(const CurveSpec& spec);

}  // namespace fgap
