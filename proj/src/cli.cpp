#include "fgap/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "fgap/certificates.hpp"
#include "fgap/constant_example.hpp"
#include "fgap/dirac.hpp"
#include "fgap/errors.hpp"
#include "fgap/oned.hpp"
#include "fgap/riemann_roch.hpp"
#include "fgap/schrodinger.hpp"
#include "fgap/spec_io.hpp"
#include "json.hpp"

namespace fgap {

namespace {

using nlohmann::json;

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string num(cplx v) { return num(v.real()) + " " + num(v.imag()); }

std::string hex64(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string issue_name(IssueCode c) {
  switch (c) {
    case IssueCode::bad_scale: return "bad_scale";
    case IssueCode::class_overlap: return "class_overlap";
    case IssueCode::divisor_degree: return "divisor_degree";
    case IssueCode::divisor_point: return "divisor_point";
    case IssueCode::divisor_overlap: return "divisor_overlap";
    case IssueCode::sigma_obstruction: return "sigma_obstruction";
    case IssueCode::tau_param: return "tau_param";
    case IssueCode::tau_beta: return "tau_beta";
    case IssueCode::tau_support: return "tau_support";
    case IssueCode::tau_divisor: return "tau_divisor";
  }
  return "unknown";
}

cplx parse_complex_arg(const std::string& s, const std::string& name) {
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw InvalidInput(name + ": expected re or re,im");
  if (in >> comma) {
    if (comma != ',' || !(in >> im))
      throw InvalidInput(name + ": expected re or re,im");
  }
  std::string rest;
  if (in >> rest) throw InvalidInput(name + ": trailing characters");
  return {re, im};
}

struct OutputOptions {
  std::string format = "csv";
  std::string out_dir;
};

struct Meta {
  std::string command;
  std::uint64_t hash = 0;
  int p_a = 0;
  Tolerances tol;
};

void write_meta(std::ostream& os, const Meta& m, const std::string& field) {
  os << "# fgap " << kVersion << "\n"
     << "# command: " << m.command << "\n"
     << "# field: " << field << "\n"
     << "# spec_hash: fnv1a64:" << hex64(m.hash) << "\n"
     << "# p_a: " << m.p_a << "\n"
     << "# tolerances: residual=" << num(m.tol.residual)
     << " rank=" << num(m.tol.rank)
     << " condition_cutoff=" << num(m.tol.condition_cutoff) << "\n";
}

json meta_json(const Meta& m) {
  return {{"version", kVersion},
          {"command", m.command},
          {"spec_hash", "fnv1a64:" + hex64(m.hash)},
          {"p_a", m.p_a},
          {"tolerances",
           {{"residual", m.tol.residual},
            {"rank", m.tol.rank},
            {"condition_cutoff", m.tol.condition_cutoff}}}};
}

struct Field {
  std::string name;
  const std::vector<cplx>* values;
};

using Scalars = std::vector<std::pair<std::string, double>>;

void write_field_csv(std::ostream& os, const Meta& m, const Grid& g,
                     const Field& f, const std::vector<NodeStatus>& status) {
  write_meta(os, m, f.name);
  os << "x,y,re,im\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Position p = g.at(i);
    os << num(p.x) << "," << num(p.y) << ",";
    if (status[i].ok)
      os << num((*f.values)[i].real()) << "," << num((*f.values)[i].imag());
    else
      os << "nan,nan";
    os << "\n";
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + path);
  f << text;
}

void emit_grid_fields(std::ostream& out, const OutputOptions& o,
                      const Meta& m, const Grid& g,
                      const std::vector<Field>& fields,
                      const std::vector<NodeStatus>& status,
                      const Scalars& scalars) {
  if (!o.out_dir.empty()) std::filesystem::create_directories(o.out_dir);
  if (o.format == "json") {
    json j = meta_json(m);
    j["grid"] = {{"x_min", g.x_min}, {"x_max", g.x_max}, {"y_min", g.y_min},
                 {"y_max", g.y_max}, {"nx", g.nx},       {"ny", g.ny}};
    json fj = json::object();
    for (const auto& f : fields) {
      json rows = json::array();
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Position p = g.at(i);
        if (status[i].ok)
          rows.push_back({p.x, p.y, (*f.values)[i].real(), (*f.values)[i].imag()});
        else
          rows.push_back({p.x, p.y, nullptr, nullptr});
      }
      fj[f.name] = rows;
    }
    j["fields"] = fj;
    json sj = json::object();
    for (const auto& [k, v] : scalars) sj[k] = v;
    j["scalars"] = sj;
    const std::string text = j.dump(1) + "\n";
    if (o.out_dir.empty())
      out << text;
    else
      write_file(o.out_dir + "/" + m.command + ".json", text);
    return;
  }
  for (const auto& f : fields) {
    if (o.out_dir.empty()) {
      write_field_csv(out, m, g, f, status);
    } else {
      std::ostringstream os;
      write_field_csv(os, m, g, f, status);
      write_file(o.out_dir + "/" + f.name + ".csv", os.str());
    }
  }
  for (const auto& [k, v] : scalars) out << "# " << k << ": " << num(v) << "\n";
}

// Residual sample points, kept well away from 0, supports and poles.
std::vector<cplx> residual_samples(const SpecDocument& doc, int count) {
  std::mt19937_64 rng(doc.seed);
  std::uniform_real_distribution<double> radius(0.3, 3.0);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::vector<cplx> avoid = {0.0};
  for (const auto& q : all_support_points(doc.spec)) avoid.push_back(q.point);
  for (const auto& p : doc.divisor.entries) avoid.push_back(p.point);
  std::vector<cplx> out;
  while (static_cast<int>(out.size()) < count) {
    const cplx s = std::polar(radius(rng), angle(rng));
    if (std::all_of(avoid.begin(), avoid.end(), [&](cplx a) {
          return std::abs(s - a) > 0.05 * std::max(1.0, std::abs(a));
        }))
      out.push_back(s);
  }
  return out;
}

void reject_infinite_pole(const SpecDocument& doc) {
  if (doc.pole_at_infinity)
    throw InvalidRequest("spec.poles: a pole at infinity is only allowed for rr");
}

int report_nodes(std::ostream& err, const std::vector<NodeStatus>& status) {
  std::size_t failed = 0;
  std::string first;
  for (const auto& s : status)
    if (!s.ok) {
      if (failed == 0) first = s.error;
      ++failed;
    }
  if (failed == 0) return kExitOk;
  err << "error: " << failed << " grid node(s) failed; first: " << first << "\n";
  return kExitSolverError;
}

Meta make_meta(const std::string& command, const SpecDocument& doc) {
  return {command, doc.hash, arithmetic_genus(doc.spec), doc.tolerances};
}

int cmd_validate(const SpecDocument& doc, const std::string& op,
                 std::ostream& out) {
  const OperatorKind kind =
      op == "dirac" ? OperatorKind::dirac : OperatorKind::schrodinger;
  out << "operator: " << op << "\n";
  out << "p_a: " << arithmetic_genus(doc.spec) << "\n";
  auto rep = validate(doc.spec, doc.divisor, kind);
  if (doc.pole_at_infinity)
    rep.issues.push_back({IssueCode::divisor_point,
                          "the wave divisor cannot contain infinity"});
  out << "admissible: " << (rep.admissible() ? "yes" : "no") << "\n";
  for (const auto& i : rep.issues)
    out << "issue " << issue_name(i.code) << ": " << i.message << "\n";
  return rep.admissible() ? kExitOk : kExitCheckFailed;
}

int cmd_genus(const SpecDocument& doc, std::ostream& out) {
  out << "delta: ";
  if (doc.spec.classes.empty()) out << "none";
  for (std::size_t i = 0; i < doc.spec.classes.size(); ++i)
    out << (i ? ", " : "") << delta_invariant(doc.spec.classes[i]);
  out << "; p_a = " << arithmetic_genus(doc.spec) << "\n";
  return kExitOk;
}

int cmd_schrodinger(const SpecDocument& doc, const OutputOptions& o, bool fd,
                    std::ostream& out, std::ostream& err) {
  reject_infinite_pole(doc);
  require_admissible(doc.spec, doc.divisor, OperatorKind::schrodinger);
  const double cutoff = doc.tolerances.condition_cutoff;
  auto field = potential_field(
      doc.spec, doc.divisor, doc.grid,
      fd ? DerivativeMode::finite_difference : DerivativeMode::analytic, 1e-3,
      cutoff);
  const auto samples = residual_samples(doc, 8);
  std::vector<double> res(doc.grid.size(), 0.0);
  parallel_for(doc.grid.size(), [&](std::size_t i) {
    if (!field.status[i].ok) return;
    try {
      const auto w = solve_wave(doc.spec, doc.divisor, doc.grid.at(i), cutoff);
      res[i] = residual_with_potentials(w, samples, field.u[i],
                                        field.magnetic[i]);
    } catch (const Error& e) {
      field.status[i] = {false, e.what()};
    }
  });
  const double worst = *std::max_element(res.begin(), res.end());
  emit_grid_fields(out, o, make_meta("schrodinger", doc), doc.grid,
                   {{"u", &field.u},
                    {"A", &field.magnetic},
                    {"xi", &field.xi},
                    {"c", &field.c}},
                   field.status, {{"max_operator_residual", worst}});
  if (const int rc = report_nodes(err, field.status); rc != kExitOk) return rc;
  if (!(worst <= doc.tolerances.residual)) {
    err << "error: operator residual " << num(worst) << " exceeds "
        << num(doc.tolerances.residual) << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_dirac(const SpecDocument& doc, const OutputOptions& o,
              std::ostream& out, std::ostream& err) {
  reject_infinite_pole(doc);
  require_admissible(doc.spec, doc.divisor, OperatorKind::dirac);
  const double cutoff = doc.tolerances.condition_cutoff;
  auto field = dirac_potential_field(doc.spec, doc.divisor, doc.grid, cutoff);
  const auto samples = residual_samples(doc, 8);
  std::vector<double> res(doc.grid.size(), 0.0);
  parallel_for(doc.grid.size(), [&](std::size_t i) {
    if (!field.status[i].ok) return;
    try {
      const auto w =
          solve_dirac_wave(doc.spec, doc.divisor, doc.grid.at(i), cutoff);
      res[i] = dirac_residual_with_potentials(w, samples, field.u[i],
                                              field.v[i]);
    } catch (const Error& e) {
      field.status[i] = {false, e.what()};
    }
  });
  const double worst = *std::max_element(res.begin(), res.end());
  emit_grid_fields(out, o, make_meta("dirac", doc), doc.grid,
                   {{"U", &field.u}, {"V", &field.v}}, field.status,
                   {{"max_dirac_residual", worst}});
  if (const int rc = report_nodes(err, field.status); rc != kExitOk) return rc;
  if (!(worst <= doc.tolerances.residual)) {
    err << "error: Dirac residual " << num(worst) << " exceeds "
        << num(doc.tolerances.residual) << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_certify(const SpecDocument& doc, const std::string& kind_name,
                std::ostream& out, std::ostream& err) {
  reject_infinite_pole(doc);
  const auto kind = parse_certificate_kind(kind_name);
  if (!kind) throw InvalidRequest("unknown certificate kind " + kind_name);
  const CertificateRequest req{doc.spec, doc.divisor, *kind};
  CertificateOptions copts;
  copts.rank_threshold = doc.tolerances.rank;
  const auto outcome = find_certificate(req, copts);
  out << "kind: " << to_string(*kind) << "\n";
  if (!outcome.feasible()) {
    out << "result: infeasible\n";
    out << "reason: " << outcome.infeasibility << "\n";
    err << "infeasible: " << outcome.infeasibility << "\n";
    return kExitInfeasible;
  }
  const Certificate& cert = *outcome.certificate;
  out << "pole budget:";
  for (const auto& p : cert.omega.f.poles())
    out << " lambda=(" << num(p.point) << ") order " << p.multiplicity << ";";
  out << " infinity order " << (*kind == CertificateKind::schrodinger_sigma ? 1 : 2)
      << "\n";
  out << "numerator degree bound: " << cert.numerator_degree_bound << "\n";
  out << "solution space dimension: " << cert.solution_space_dim << "\n";
  out << "numerator coefficients (lowest degree first, re im):\n";
  const auto& coeffs = cert.omega.f.numerator().coeffs();
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    out << "  lambda^" << k << ": " << num(coeffs[k]) << "\n";
  out << "marked values: plus " << num(cert.report.marked_plus) << ", minus "
      << num(cert.report.marked_minus) << "\n";
  out << "checks:\n";
  for (const auto& c : cert.report.checks)
    out << "  " << (c.passed ? "PASS" : "FAIL") << " " << c.name << " ("
        << c.detail << ")\n";
  for (const auto& w : cert.report.warnings) out << "  warning: " << w << "\n";

  ConsequenceTolerances ctol;
  const auto cons = assert_consequences(req, cert, doc.grid, ctol);
  out << "consequence: " << cons.claim << " on " << doc.grid.nx << "x"
      << doc.grid.ny << " grid: " << (cons.passed ? "PASS" : "FAIL") << "\n";
  if (*kind == CertificateKind::schrodinger_sigma) {
    out << "  max |A| = " << num(cons.max_abs_magnetic) << "\n";
    out << "  max |c^2 - 1| = " << num(cons.max_c_squared_deviation) << "\n";
  } else {
    out << "  max |U - V| = " << num(cons.max_u_minus_v) << "\n";
    out << "  max |Im U| = " << num(cons.max_imag_u) << "\n";
    out << "  max |Im V| = " << num(cons.max_imag_v) << "\n";
  }
  out << "  failed nodes = " << cons.failed_nodes << "\n";

  const Position centre{(doc.grid.x_min + doc.grid.x_max) / 2,
                        (doc.grid.y_min + doc.grid.y_max) / 2};
  try {
    const auto bal = residue_balance(req, cert.omega, centre);
    out << "residue balance at (" << num(centre.x) << ", " << num(centre.y)
        << "): marked " << num(bal.marked) << "; supports "
        << num(bal.supports) << "; other " << num(bal.other) << "; total "
        << num(bal.total) << "\n";
  } catch (const Error& e) {
    out << "residue balance unavailable: " << e.what() << "\n";
  }

  if (!cert.report.passed()) {
    out << "result: verification failed\n";
    err << "error: certificate verification failed\n";
    return kExitCheckFailed;
  }
  if (cons.failed_nodes > 0) {
    out << "result: solver failure on the grid\n";
    err << "error: " << cons.failed_nodes << " grid node(s) failed\n";
    return kExitSolverError;
  }
  if (!cons.passed) {
    out << "result: certificate verified, consequence failed\n";
    err << "error: consequence " << cons.claim << " does not hold\n";
    return kExitCheckFailed;
  }
  out << "result: verified\n";
  return kExitOk;
}

int cmd_rr(const SpecDocument& doc, const std::string& divisor_text,
           std::ostream& out, std::ostream& err) {
  const RRDivisor d =
      divisor_text.empty() ? doc.rr_divisor : parse_rr_divisor(divisor_text);
  const auto r = rr_report(doc.spec, d, doc.tolerances.rank);
  out << "deg D: " << r.degree << "\n"
      << "p_a: " << r.arithmetic_genus << "\n"
      << "dim L(D): " << r.dim_l << "\n"
      << "dim Omega'(D): " << r.dim_omega << "\n"
      << "regular differentials: "
      << regular_differential_dim(doc.spec, doc.tolerances.rank) << "\n"
      << "identity residual: " << r.residual << "\n";
  if (r.residual != 0) {
    err << "error: Riemann-Roch identity residual " << r.residual << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

struct OneDArgs {
  std::string mode = "double";
  std::string p = "1";
  std::string q = "1";
  double x_min = -3.0, x_max = 3.0;
  int n = 61;
  int samples = 20;
  std::uint64_t seed = 1;
  double tol = 1e-10;
};

int cmd_oned(const OneDArgs& a, const OutputOptions& o, std::ostream& out,
             std::ostream& err) {
  OneDConfig cfg;
  cfg.gluing = a.mode == "pair" ? OneDConfig::Gluing::pair
                                : OneDConfig::Gluing::double_point;
  cfg.p = parse_complex_arg(a.p, "--p");
  cfg.q = parse_complex_arg(a.q, "--q");
  validate_1d(cfg);
  if (a.n < 2) throw InvalidInput("--n must be >= 2");
  const auto sample = potential_1d(cfg, a.x_min, a.x_max, a.n);

  std::mt19937_64 rng(a.seed);
  std::uniform_real_distribution<double> radius(0.3, 3.0);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::uniform_real_distribution<double> xs(a.x_min, a.x_max);
  std::vector<WXSample> pts;
  double worst = 0.0;
  for (int tries = 0; static_cast<int>(pts.size()) < a.samples && tries < 100000;
       ++tries) {
    const WXSample s{std::polar(radius(rng), angle(rng)), xs(rng)};
    try {
      worst = std::max(worst, residual_1d(cfg, std::span(&s, 1)));
      pts.push_back(s);
    } catch (const SampleTooClose&) {
    } catch (const DegeneratePosition&) {
    }
  }

  Meta m{"oned " + a.mode, 0, 1, Tolerances{}};  // one descent condition
  m.tol.residual = a.tol;
  if (o.format == "json") {
    json j = meta_json(m);
    j.erase("spec_hash");
    j["config"] = {{"mode", a.mode},
                   {"p", {cfg.p.real(), cfg.p.imag()}},
                   {"q", {cfg.q.real(), cfg.q.imag()}}};
    json rows = json::array();
    for (std::size_t i = 0; i < sample.x.size(); ++i)
      rows.push_back({sample.x[i], sample.u[i].real(), sample.u[i].imag()});
    j["fields"] = {{"u", rows}};
    j["scalars"] = {{"max_residual_1d", worst}};
    out << j.dump(1) << "\n";
  } else {
    out << "# fgap " << kVersion << "\n"
        << "# command: oned " << a.mode << "\n"
        << "# field: u\n"
        << "# p: " << num(cfg.p) << "\n";
    if (cfg.gluing == OneDConfig::Gluing::pair)
      out << "# q: " << num(cfg.q) << "\n";
    out << "x,re,im\n";
    for (std::size_t i = 0; i < sample.x.size(); ++i)
      out << num(sample.x[i]) << "," << num(sample.u[i].real()) << ","
          << num(sample.u[i].imag()) << "\n";
    out << "# max_residual_1d: " << num(worst) << "\n";
  }
  if (!(worst <= a.tol)) {
    err << "error: 1D residual " << num(worst) << " exceeds " << num(a.tol)
        << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_example_constant(double c, std::uint64_t seed, std::ostream& out,
                         std::ostream& err) {
  ConstantExampleOptions opts;
  opts.seed = seed;
  const auto r = run_constant_example(c, opts);
  const double tol = opts.potential_tolerance;
  auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  out << "c = " << num(c) << "\n"
      << "grid: " << opts.grid_n << "x" << opts.grid_n
      << " on [-1,1]^2, failed nodes " << r.failed_nodes << "\n"
      << "max |U - c| = " << num(r.max_u_error) << "\n"
      << "max |V - c| = " << num(r.max_v_error) << "\n"
      << "U = V = " << num(c) << " within " << num(tol) << ": "
      << verdict(r.failed_nodes == 0 && r.max_u_error <= tol &&
                 r.max_v_error <= tol)
      << "\n"
      << "max relative psi error vs closed form (" << opts.psi_samples
      << " samples) = " << num(r.max_psi_error) << ": "
      << verdict(r.max_psi_error <= opts.psi_tolerance) << "\n";
  auto cert_line = [&](const char* name, bool found, bool verified,
                       double coef_err, const std::vector<cplx>& numer) {
    out << name << ": " << (found ? (verified ? "verified" : "NOT verified")
                                  : "not found");
    if (found) {
      out << ", numerator";
      for (const cplx& v : numer) out << " (" << num(v) << ")";
      out << ", coefficient error " << num(coef_err);
    }
    out << ": "
        << verdict(found && verified &&
                   coef_err <= opts.coefficient_tolerance)
        << "\n";
  };
  cert_line("omega (sigma)", r.sigma_found, r.sigma_verified,
            r.sigma_coefficient_error, r.sigma_numerator);
  cert_line("omega' (tau)", r.tau_found, r.tau_verified,
            r.tau_coefficient_error, r.tau_numerator);
  out << "max |U - V| = " << num(r.sigma_consequences.max_u_minus_v) << ": "
      << verdict(r.sigma_consequences.passed) << "\n"
      << "max |Im U| = " << num(r.tau_consequences.max_imag_u)
      << ", max |Im V| = " << num(r.tau_consequences.max_imag_v) << ": "
      << verdict(r.tau_consequences.passed) << "\n"
      << "summary: " << verdict(r.passed) << "\n";
  if (!r.passed) {
    err << "error: constant example failed\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Finite-gap operators on singular rational spectral curves"};
  app.require_subcommand(1);
  app.fallthrough();
  OutputOptions oopts;
  app.add_option("--format", oopts.format, "Field output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", oopts.out_dir,
                 "Directory for field files (default: standard output)");
  app.set_version_flag("--version", std::string(kVersion));

  std::string spec_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check admissibility");
  std::string op = "schrodinger";
  validate_cmd->add_option("spec", spec_path)->required();
  validate_cmd->add_option("--operator", op)
      ->check(CLI::IsMember({"schrodinger", "dirac"}));

  auto* genus_cmd = app.add_subcommand("genus", "Print delta invariants and p_a");
  genus_cmd->add_option("spec", spec_path)->required();

  auto* schr_cmd =
      app.add_subcommand("schrodinger", "Schroedinger potentials on the grid");
  bool fd = false;
  schr_cmd->add_option("spec", spec_path)->required();
  schr_cmd->add_flag("--fd", fd, "Finite-difference derivatives");

  auto* dirac_cmd = app.add_subcommand("dirac", "Dirac potentials on the grid");
  dirac_cmd->add_option("spec", spec_path)->required();

  auto* cert_cmd =
      app.add_subcommand("certify", "Find and verify a symmetry certificate");
  std::string kind;
  cert_cmd->add_option("spec", spec_path)->required();
  cert_cmd->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember({"schrodinger-sigma", "dirac-sigma", "dirac-tau"}));

  auto* rr_cmd = app.add_subcommand("rr", "Riemann-Roch report");
  std::string divisor_text;
  rr_cmd->add_option("spec", spec_path)->required();
  rr_cmd->add_option("--divisor", divisor_text,
                     "JSON list of {lambda, multiplicity}; lambda may be \"inf\"");

  auto* oned_cmd = app.add_subcommand("oned", "One-dimensional degenerations");
  OneDArgs oargs;
  oned_cmd->add_option("mode", oargs.mode)
      ->required()
      ->check(CLI::IsMember({"double", "pair"}));
  oned_cmd->add_option("--p", oargs.p, "Pole p as re or re,im");
  oned_cmd->add_option("--q", oargs.q, "Pair point q as re or re,im");
  oned_cmd->add_option("--x-min", oargs.x_min);
  oned_cmd->add_option("--x-max", oargs.x_max);
  oned_cmd->add_option("--n", oargs.n, "Number of x nodes");
  oned_cmd->add_option("--samples", oargs.samples, "Residual samples");
  oned_cmd->add_option("--seed", oargs.seed);
  oned_cmd->add_option("--tol", oargs.tol, "Residual tolerance");

  auto* const_cmd = app.add_subcommand(
      "example-constant", "Constant-potential Dirac pipeline");
  double c = 0.0;
  std::uint64_t seed = ConstantExampleOptions{}.seed;
  const_cmd->add_option("--c", c)->required();
  const_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (oned_cmd->parsed()) return cmd_oned(oargs, oopts, out, err);
    if (const_cmd->parsed()) return cmd_example_constant(c, seed, out, err);
    const SpecDocument doc = load_spec_document(spec_path);
    if (validate_cmd->parsed()) return cmd_validate(doc, op, out);
    if (genus_cmd->parsed()) return cmd_genus(doc, out);
    if (schr_cmd->parsed()) return cmd_schrodinger(doc, oopts, fd, out, err);
    if (dirac_cmd->parsed()) return cmd_dirac(doc, oopts, out, err);
    if (cert_cmd->parsed()) return cmd_certify(doc, kind, out, err);
    if (rr_cmd->parsed()) return cmd_rr(doc, divisor_text, out, err);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolverError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolverError;
  }
  return kExitBadInput;
}

}  // namespace fgap
