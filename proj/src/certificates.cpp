#include "fgap/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fgap/dirac.hpp"
#include "fgap/errors.hpp"
#include "fgap/linalg.hpp"
#include "fgap/schrodinger.hpp"

namespace fgap {

namespace {

bool is_schrodinger(CertificateKind k) {
  return k == CertificateKind::schrodinger_sigma;
}

OperatorKind operator_kind(CertificateKind k) {
  return is_schrodinger(k) ? OperatorKind::schrodinger : OperatorKind::dirac;
}

// Order of the pole at inf_+ and inf_- that a certificate must have.
int marked_order(CertificateKind k) { return is_schrodinger(k) ? 1 : 2; }

std::string fmt(cplx v) {
  std::ostringstream os;
  os.precision(6);
  os << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
  return os.str();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// Validates and returns the obstruction message, if any.
std::optional<std::string> check_request(const CertificateRequest& req) {
  const bool sigma_kind = req.kind != CertificateKind::dirac_tau;
  if (sigma_kind && !req.spec.sigma_declared)
    throw InvalidRequest(to_string(req.kind) +
                         " requires the curve to declare sigma");
  if (!sigma_kind && !req.spec.tau_param)
    throw InvalidRequest("dirac-tau requires tau_param");
  const auto rep = validate(req.spec, req.divisor, operator_kind(req.kind));
  std::optional<std::string> obstruction;
  std::string errors;
  for (const auto& issue : rep.issues) {
    if (sigma_kind && issue.code == IssueCode::sigma_obstruction) {
      obstruction = issue.message;
      continue;
    }
    if (!errors.empty()) errors += "; ";
    errors += issue.message;
  }
  if (!errors.empty()) throw InvalidRequest(errors);
  return obstruction;
}

std::vector<WeightedPoint> certificate_poles(const CertificateRequest& req) {
  std::vector<WeightedPoint> poles;
  poles.push_back({0.0, is_schrodinger(req.kind) ? 1 : 2});
  for (const auto& q : all_support_points(req.spec))
    poles.push_back({q.point, 2 * q.multiplicity});
  return poles;
}

int support_weight(const CurveSpec& spec) {
  int s = 0;
  for (const auto& q : all_support_points(spec)) s += q.multiplicity;
  return s;
}

// Value entering the marked-point relation: the residue at inf_+/inf_- for
// Schroedinger, the k^2 dk^{-1} coefficient for Dirac.
cplx marked_value(const RationalDifferential& w, MarkedPoint which,
                  const CertificateRequest& req) {
  if (is_schrodinger(req.kind))
    return residue(w, which == MarkedPoint::plus ? ProjPoint::infinity()
                                                 : ProjPoint::finite(0.0));
  return principal_part_in_parameter(w, which, 2, req.spec.alpha,
                                     req.spec.beta)
      .leading();
}

cplx marked_relation(cplx plus, cplx minus, CertificateKind k) {
  return k == CertificateKind::dirac_tau ? plus - minus : plus + minus;
}

// Multiplicity of the root of p at x, judged against the rounding envelope.
int vanishing_order(const Poly& p, cplx x, int cap, double tol) {
  if (p.is_zero()) return cap;
  const Jet jet = p.taylor(x, cap);
  const auto env = p.taylor_envelope(x, cap);
  int k = 0;
  while (k < cap && std::abs(jet[k]) <= tol * env[k]) ++k;
  return k;
}

int pole_multiplicity(const RationalFunction& f, cplx x) {
  const int idx = f.pole_index(x);
  return idx < 0 ? 0 : f.poles()[idx].multiplicity;
}

}  // namespace

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::schrodinger_sigma:
      return "schrodinger-sigma";
    case CertificateKind::dirac_sigma:
      return "dirac-sigma";
    case CertificateKind::dirac_tau:
      return "dirac-tau";
  }
  return "?";
}

std::optional<CertificateKind> parse_certificate_kind(const std::string& s) {
  std::string t = s;
  std::replace(t.begin(), t.end(), '_', '-');
  if (t == "schrodinger-sigma") return CertificateKind::schrodinger_sigma;
  if (t == "dirac-sigma") return CertificateKind::dirac_sigma;
  if (t == "dirac-tau") return CertificateKind::dirac_tau;
  return std::nullopt;
}

bool CertificateReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckEntry& c) { return c.passed; });
}

std::vector<WeightedPoint> required_zeros(const CertificateRequest& req) {
  std::vector<WeightedPoint> out;
  auto add = [&](WeightedPoint p) {
    for (auto& q : out)
      if (points_coincide(q.point, p.point)) {
        q.multiplicity += p.multiplicity;
        return;
      }
    out.push_back(p);
  };
  for (const auto& p : req.divisor.entries) add(p);
  for (const auto& p : req.divisor.entries) {
    const ProjPoint img =
        req.kind == CertificateKind::dirac_tau
            ? tau_image(req.spec, ProjPoint::finite(p.point))
            : sigma_image(ProjPoint::finite(p.point));
    add({img.value(), p.multiplicity});
  }
  return out;
}

CertificateOutcome find_certificate(const CertificateRequest& req,
                                    const CertificateOptions& opts) {
  CertificateOutcome out;
  if (auto obstruction = check_request(req)) {
    out.infeasibility = *obstruction;
    return out;
  }

  const auto poles = certificate_poles(req);
  const int s = poles.front().multiplicity;
  const int weight = support_weight(req.spec);
  const int deg_max = is_schrodinger(req.kind) ? s + 2 * weight - 1
                                               : s + 2 * weight;
  const int ncols = deg_max + 1;

  std::vector<RationalDifferential> basis;
  for (int k = 0; k < ncols; ++k)
    basis.push_back({RationalFunction(Poly::monomial(k), poles)});

  std::vector<std::vector<cplx>> rows;
  // Zeros are imposed on the numerator: at a pole point of order P a zero of
  // order m needs the numerator to vanish to order P + m.
  const RationalFunction probe(Poly::monomial(0), poles);
  for (const auto& z : required_zeros(req)) {
    const int len = z.multiplicity + pole_multiplicity(probe, z.point);
    std::vector<std::vector<cplx>> block(len, std::vector<cplx>(ncols));
    for (int k = 0; k < ncols; ++k) {
      const Jet j = jet_power(z.point, k, len);
      for (int r = 0; r < len; ++r) block[r][k] = j[r];
    }
    for (auto& r : block) rows.push_back(std::move(r));
  }
  for (const auto& cls : req.spec.classes) {
    std::vector<cplx> row(ncols);
    for (int k = 0; k < ncols; ++k)
      for (const auto& q : cls.members())
        row[k] += residue(basis[k], ProjPoint::finite(q.point));
    rows.push_back(std::move(row));
  }
  std::vector<cplx> plus_row(ncols), relation_row(ncols);
  for (int k = 0; k < ncols; ++k) {
    plus_row[k] = marked_value(basis[k], MarkedPoint::plus, req);
    relation_row[k] = marked_relation(
        plus_row[k], marked_value(basis[k], MarkedPoint::minus, req), req.kind);
  }
  rows.push_back(relation_row);

  const int nh = static_cast<int>(rows.size());
  MatrixXc h(nh, ncols);
  for (int r = 0; r < nh; ++r)
    for (int k = 0; k < ncols; ++k) h(r, k) = rows[r][k];
  out.solution_space_dim =
      ncols - numerical_rank(equilibrate_rows(h).matrix, opts.rank_threshold);

  MatrixXc a(nh + 1, ncols);
  a.topRows(nh) = h;
  const cplx target = is_schrodinger(req.kind) ? cplx{1.0} : cplx{-1.0};
  for (int k = 0; k < ncols; ++k) a(nh, k) = plus_row[k];
  VectorXc b = VectorXc::Zero(nh + 1);
  b(nh) = target;

  const auto ls = least_squares(a, b, opts.rank_threshold);
  if (out.solution_space_dim == 0 || ls.residual > opts.consistency_tolerance) {
    out.infeasibility =
        "no differential satisfies the zero, residue and marked-point "
        "conditions with a nonzero leading term (homogeneous solutions: " +
        std::to_string(out.solution_space_dim) +
        ", residual " + fmt(ls.residual) + ")";
    return out;
  }

  std::vector<cplx> coeffs(ls.x.data(), ls.x.data() + ls.x.size());
  Certificate cert;
  cert.omega = {RationalFunction(Poly(std::move(coeffs)), poles)};
  cert.solution_space_dim = out.solution_space_dim;
  cert.numerator_degree_bound = deg_max;
  cert.report = verify_certificate(cert.omega, req, opts);
  out.certificate = std::move(cert);
  return out;
}

CertificateReport verify_certificate(const RationalDifferential& omega,
                                     const CertificateRequest& req,
                                     const CertificateOptions& opts) {
  CertificateReport rep;
  const double tol = opts.check_tolerance;
  const int order = marked_order(req.kind);
  const auto& f = omega.f;
  const Poly& num = f.numerator();
  auto add = [&](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  // Marked points.
  bool marked_ok = true;
  for (const auto which : {MarkedPoint::plus, MarkedPoint::minus}) {
    const std::string where = which == MarkedPoint::plus ? "inf+" : "inf-";
    try {
      const auto pp = principal_part_in_parameter(omega, which, order,
                                                  req.spec.alpha, req.spec.beta);
      (which == MarkedPoint::plus ? rep.pole_order_plus : rep.pole_order_minus) =
          pp.pole_order;
      add("pole order at " + where, pp.pole_order == order,
          "found " + std::to_string(pp.pole_order) + ", need " +
              std::to_string(order));
      if (pp.pole_order != order) marked_ok = false;
    } catch (const PoleOrderExceeded& e) {
      add("pole order at " + where, false, e.what());
      marked_ok = false;
    }
  }

  double scale = 0.0;
  if (marked_ok) {
    rep.marked_plus = marked_value(omega, MarkedPoint::plus, req);
    rep.marked_minus = marked_value(omega, MarkedPoint::minus, req);
    scale = std::max(std::abs(rep.marked_plus), std::abs(rep.marked_minus));
  }

  // Finite poles other than 0.
  const auto supports = all_support_points(req.spec);
  std::vector<std::pair<cplx, cplx>> support_residues;
  bool poles_ok = true;
  std::string pole_detail;
  for (const auto& p : f.poles()) {
    if (points_coincide(p.point, 0.0)) continue;
    const int cancel =
        vanishing_order(num, p.point, p.multiplicity, 1e3 * tol);
    const int eff = p.multiplicity - cancel;
    if (eff <= 0) continue;
    const auto it = std::find_if(
        supports.begin(), supports.end(),
        [&](const WeightedPoint& q) { return points_coincide(q.point, p.point); });
    if (it == supports.end()) {
      poles_ok = false;
      pole_detail += "stray pole of order " + std::to_string(eff) + " at " +
                     fmt(p.point) + "; ";
    } else if (eff > 2 * it->multiplicity) {
      poles_ok = false;
      pole_detail += "pole of order " + std::to_string(eff) + " at support " +
                     fmt(p.point) + " exceeds " +
                     std::to_string(2 * it->multiplicity) + "; ";
    }
  }
  add("poles only at marked points and supports (order <= 2n)", poles_ok,
      pole_detail.empty() ? "ok" : pole_detail);

  for (const auto& q : supports) {
    const cplx r = residue(omega, ProjPoint::finite(q.point));
    scale = std::max(scale, std::abs(r));
    support_residues.push_back({q.point, r});
  }
  if (scale == 0.0) scale = 1.0;

  // Residue sums per class.
  bool classes_ok = true;
  double worst_class = 0.0;
  for (const auto& cls : req.spec.classes) {
    cplx sum{};
    for (const auto& q : cls.members())
      for (const auto& [pt, r] : support_residues)
        if (points_coincide(pt, q.point)) sum += r;
    rep.class_residue_sums.push_back(sum);
    worst_class = std::max(worst_class, std::abs(sum) / scale);
    if (std::abs(sum) > tol * scale) classes_ok = false;
  }
  add("residue sum over each class vanishes", classes_ok,
      "max relative " + fmt(worst_class));

  // Marked-point relation.
  if (marked_ok) {
    const cplx rel =
        marked_relation(rep.marked_plus, rep.marked_minus, req.kind);
    const double rel_size = std::abs(rel) / scale;
    const std::string what =
        is_schrodinger(req.kind)
            ? "res(inf+) + res(inf-) = 0"
            : (req.kind == CertificateKind::dirac_sigma ? "l+ + l- = 0"
                                                        : "l+ - l- = 0");
    add(what, rel_size <= tol,
        "l+ = " + fmt(rep.marked_plus) + ", l- = " + fmt(rep.marked_minus));
    rep.normalization = is_schrodinger(req.kind) ? 1.0 / rep.marked_plus
                                                 : -1.0 / rep.marked_plus;
  } else {
    add("marked-point relation", false, "pole orders at marked points wrong");
  }

  // Required zeros.
  const auto zeros = required_zeros(req);
  bool zeros_ok = true;
  std::string zero_detail;
  for (const auto& z : zeros) {
    const int pm = pole_multiplicity(f, z.point);
    const int need = z.multiplicity + pm;
    const int have = vanishing_order(num, z.point, need, 1e3 * tol);
    if (have < need) {
      zeros_ok = false;
      zero_detail += "order " + std::to_string(have - pm) + " < " +
                     std::to_string(z.multiplicity) + " at " + fmt(z.point) +
                     "; ";
    }
  }
  add(is_schrodinger(req.kind) || req.kind == CertificateKind::dirac_sigma
          ? "zeros on D + sigma(D)"
          : "zeros on D + tau(D)",
      zeros_ok, zero_detail.empty() ? "ok" : zero_detail);

  // Extra zeros: numerator roots not explained by required zeros or by
  // cancellation against the denominator.
  std::vector<WeightedPoint> expected = zeros;
  for (const auto& p : f.poles()) expected.push_back(p);
  for (const cplx r : num.roots()) {
    bool matched = false;
    for (auto& e : expected)
      if (e.multiplicity > 0 &&
          std::abs(r - e.point) <= 1e-5 * std::max(1.0, std::abs(e.point))) {
        --e.multiplicity;
        matched = true;
        break;
      }
    if (!matched) {
      rep.extra_zeros.push_back(r);
      rep.warnings.push_back("extra zero at " + fmt(r));
    }
  }
  return rep;
}

ConsequenceReport assert_consequences(const CertificateRequest& req,
                                      const Certificate& cert,
                                      const Grid& grid,
                                      const ConsequenceTolerances& tol) {
  ConsequenceReport out;
  bool ok = cert.report.passed();
  if (is_schrodinger(req.kind)) {
    out.claim = "A = 0 and c^2 = 1";
    const auto field = potential_field(req.spec, req.divisor, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!field.status[i].ok) {
        ++out.failed_nodes;
        continue;
      }
      out.max_abs_magnetic =
          std::max(out.max_abs_magnetic, std::abs(field.magnetic[i]));
      out.max_c_squared_deviation = std::max(
          out.max_c_squared_deviation, std::abs(field.c[i] * field.c[i] - 1.0));
    }
    ok = ok && out.max_abs_magnetic <= tol.magnetic &&
         out.max_c_squared_deviation <= tol.c_squared;
  } else {
    const auto field = dirac_potential_field(req.spec, req.divisor, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!field.status[i].ok) {
        ++out.failed_nodes;
        continue;
      }
      out.max_u_minus_v =
          std::max(out.max_u_minus_v, std::abs(field.u[i] - field.v[i]));
      out.max_imag_u = std::max(out.max_imag_u, std::abs(field.u[i].imag()));
      out.max_imag_v = std::max(out.max_imag_v, std::abs(field.v[i].imag()));
    }
    if (req.kind == CertificateKind::dirac_sigma) {
      out.claim = "U = V";
      ok = ok && out.max_u_minus_v <= tol.u_minus_v;
    } else {
      out.claim = "U and V real";
      ok = ok && out.max_imag_u <= tol.imaginary &&
           out.max_imag_v <= tol.imaginary;
    }
  }
  out.passed = ok && out.failed_nodes == 0;
  return out;
}

ResidueBalance residue_balance(const CertificateRequest& req,
                               const RationalDifferential& omega, Position pos,
                               int component) {
  RationalFunction phi;
  switch (req.kind) {
    case CertificateKind::schrodinger_sigma: {
      const auto w = solve_wave(req.spec, req.divisor, pos);
      phi = w.prefactor() * w.prefactor().negate_argument() * omega.f;
      break;
    }
    case CertificateKind::dirac_sigma: {
      const auto w = solve_dirac_wave(req.spec, req.divisor, pos);
      phi = w.r1() * w.r2().negate_argument() * omega.f;
      break;
    }
    case CertificateKind::dirac_tau: {
      const auto w = solve_dirac_wave(req.spec, req.divisor, pos);
      const auto& r = component == 2 ? w.r2() : w.r1();
      phi = r * r.tau_conjugate(*req.spec.tau_param) * omega.f;
      break;
    }
  }
  const RationalDifferential d{phi};
  const auto supports = all_support_points(req.spec);
  ResidueBalance bal;
  bal.marked = residue(d, ProjPoint::infinity());
  for (const auto& p : phi.poles()) {
    const cplx r = residue(d, ProjPoint::finite(p.point));
    if (points_coincide(p.point, 0.0)) {
      bal.marked += r;
    } else if (std::any_of(supports.begin(), supports.end(),
                           [&](const WeightedPoint& q) {
                             return points_coincide(q.point, p.point);
                           })) {
      bal.supports += r;
    } else {
      bal.other += r;
    }
  }
  bal.total = bal.marked + bal.supports + bal.other;
  return bal;
}

}  // namespace fgap
