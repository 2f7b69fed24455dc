#include "fgap/spectral_data.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fgap/errors.hpp"

namespace fgap {

bool points_coincide(cplx a, cplx b, double rel_tol) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= rel_tol * scale;
}

ProjPoint ProjPoint::finite(cplx value) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw InvalidInput("finite point expected, got a non-finite coordinate");
  return ProjPoint(value);
}

cplx ProjPoint::value() const {
  if (!value_) throw InvalidInput("the point at infinity has no coordinate");
  return *value_;
}

bool ProjPoint::operator==(const ProjPoint& other) const {
  if (is_infinite() || other.is_infinite())
    return is_infinite() && other.is_infinite();
  return points_coincide(*value_, *other.value_);
}

std::string ProjPoint::to_string() const {
  if (is_infinite()) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << "(" << value_->real() << "," << value_->imag() << ")";
  return os.str();
}

GluingClass::GluingClass(std::vector<WeightedPoint> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw InvalidInput("gluing class has no members");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const auto& m = members_[i];
    if (m.multiplicity < 1)
      throw InvalidInput("gluing class multiplicity must be >= 1");
    if (!std::isfinite(m.point.real()) || !std::isfinite(m.point.imag()))
      throw InvalidInput("gluing class member must be a finite point");
    if (points_coincide(m.point, 0.0))
      throw InvalidInput(
          "gluing class member coincides with the marked point 0");
    for (std::size_t j = 0; j < i; ++j)
      if (points_coincide(m.point, members_[j].point))
        throw InvalidInput("gluing class members must be pairwise distinct");
  }
  if (degree() < 2)
    throw InvalidInput("gluing class must have total degree >= 2");
}

int GluingClass::degree() const {
  int d = 0;
  for (const auto& m : members_) d += m.multiplicity;
  return d;
}

int PoleDivisor::degree() const {
  int d = 0;
  for (const auto& e : entries) d += e.multiplicity;
  return d;
}

int delta_invariant(const GluingClass& cls) { return cls.degree() - 1; }

int arithmetic_genus(const CurveSpec& spec) {
  int pa = 0;
  for (const auto& c : spec.classes) pa += delta_invariant(c);
  return pa;
}

bool ValidationReport::has(IssueCode code) const {
  return std::any_of(issues.begin(), issues.end(),
                     [code](const Issue& i) { return i.code == code; });
}

std::vector<WeightedPoint> all_support_points(const CurveSpec& spec) {
  std::vector<WeightedPoint> out;
  for (const auto& c : spec.classes)
    out.insert(out.end(), c.members().begin(), c.members().end());
  return out;
}

cplx tau_compatible_beta(cplx alpha, double t, OperatorKind kind) {
  // Dirac: tau(k_+) = -conj(k_-); Schroedinger: tau(k_+) = conj(k_-).
  const double sign = kind == OperatorKind::dirac ? -1.0 : 1.0;
  return sign * std::conj(alpha) * t;
}

bool same_weighted_points(const std::vector<WeightedPoint>& a,
                          const std::vector<WeightedPoint>& b) {
  auto total = [](const std::vector<WeightedPoint>& v, cplx p) {
    int n = 0;
    for (const auto& e : v)
      if (points_coincide(e.point, p)) n += e.multiplicity;
    return n;
  };
  for (const auto& e : a)
    if (total(a, e.point) != total(b, e.point)) return false;
  for (const auto& e : b)
    if (total(a, e.point) != total(b, e.point)) return false;
  return true;
}

namespace {

std::string fmt(cplx v) { return ProjPoint::finite(v).to_string(); }

}  // namespace

ValidationReport validate(const CurveSpec& spec, const PoleDivisor& divisor,
                          OperatorKind kind) {
  ValidationReport report;
  auto add = [&](IssueCode code, std::string msg) {
    report.issues.push_back({code, std::move(msg)});
  };

  const auto finite_nonzero = [](cplx v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag()) &&
           std::abs(v) > 0.0;
  };
  if (!finite_nonzero(spec.alpha))
    add(IssueCode::bad_scale, "alpha must be a finite nonzero number");
  if (!finite_nonzero(spec.beta))
    add(IssueCode::bad_scale, "beta must be a finite nonzero number");

  for (std::size_t i = 0; i < spec.classes.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      for (const auto& a : spec.classes[i].members())
        for (const auto& b : spec.classes[j].members())
          if (points_coincide(a.point, b.point))
            add(IssueCode::class_overlap,
                "classes " + std::to_string(j) + " and " + std::to_string(i) +
                    " share the support point " + fmt(a.point));

  const int pa = arithmetic_genus(spec);
  const int want = kind == OperatorKind::dirac ? pa + 1 : pa;
  if (divisor.degree() != want)
    add(IssueCode::divisor_degree,
        "divisor degree " + std::to_string(divisor.degree()) +
            " but the " +
            (kind == OperatorKind::dirac ? "Dirac" : "Schroedinger") +
            " construction needs " + std::to_string(want));

  const auto supports = all_support_points(spec);
  for (std::size_t i = 0; i < divisor.entries.size(); ++i) {
    const auto& e = divisor.entries[i];
    if (e.multiplicity < 1)
      add(IssueCode::divisor_point, "divisor multiplicity must be >= 1");
    if (!std::isfinite(e.point.real()) || !std::isfinite(e.point.imag())) {
      add(IssueCode::divisor_point, "divisor point must be finite");
      continue;
    }
    if (points_coincide(e.point, 0.0))
      add(IssueCode::divisor_point,
          "divisor point coincides with the marked point 0");
    for (std::size_t j = 0; j < i; ++j)
      if (points_coincide(e.point, divisor.entries[j].point))
        add(IssueCode::divisor_point,
            "divisor points must be distinct: " + fmt(e.point));
    for (const auto& s : supports)
      if (points_coincide(e.point, s.point))
        add(IssueCode::divisor_overlap,
            "divisor point " + fmt(e.point) + " lies on a gluing support");
  }

  if (spec.sigma_declared && !spec.classes.empty())
    add(IssueCode::sigma_obstruction,
        "σ-fixed singular support impossible at genus 0: sigma(lambda) = "
        "-lambda fixes only 0 and infinity, which are the marked points");

  if (spec.tau_param) {
    const double t = *spec.tau_param;
    if (!std::isfinite(t) || t == 0.0) {
      add(IssueCode::tau_param, "tau parameter must be a finite nonzero real");
    } else {
      const cplx want_beta = tau_compatible_beta(spec.alpha, t, kind);
      if (!points_coincide(spec.beta, want_beta))
        add(IssueCode::tau_beta,
            "tau requires beta = " + fmt(want_beta) + ", got " +
                fmt(spec.beta));
      for (const auto& s : supports) {
        const double r2 = std::norm(s.point);
        if (std::abs(r2 - t) > kPointTolerance * std::max(1.0, std::abs(t)))
          add(IssueCode::tau_support,
              "support point " + fmt(s.point) +
                  " is not fixed by tau (|lambda|^2 != t)");
      }
      std::vector<WeightedPoint> image;
      for (const auto& e : divisor.entries)
        if (std::abs(e.point) > 0.0)
          image.push_back({t / std::conj(e.point), e.multiplicity});
      if (!same_weighted_points(divisor.entries, image))
        add(IssueCode::tau_divisor, "divisor is not tau-invariant");
    }
  }
  return report;
}

void require_admissible(const CurveSpec& spec, const PoleDivisor& divisor,
                        OperatorKind kind) {
  const auto report = validate(spec, divisor, kind);
  if (report.admissible()) return;
  std::string msg = "inadmissible spectral data:";
  for (const auto& i : report.issues) msg += "\n  - " + i.message;
  throw InvalidRequest(msg);
}

ProjPoint sigma_image(const ProjPoint& p) {
  if (p.is_infinite()) return p;
  return ProjPoint::finite(-p.value());
}

ProjPoint tau_image(const CurveSpec& spec, const ProjPoint& p) {
  if (!spec.tau_param) throw InvalidRequest("tau_image needs a tau parameter");
  const double t = *spec.tau_param;
  if (p.is_infinite()) return ProjPoint::finite(0.0);
  const cplx v = p.value();
  if (v == 0.0) return ProjPoint::infinity();
  return ProjPoint::finite(t / std::conj(v));
}

}  // namespace fgap
