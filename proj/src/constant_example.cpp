#include "fgap/constant_example.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fgap/dirac.hpp"
#include "fgap/errors.hpp"

namespace fgap {

CurveSpec constant_example_spec(double c) {
  CurveSpec spec;
  spec.alpha = 1.0;
  spec.beta = -c * c;
  spec.sigma_declared = true;
  spec.tau_param = c * c;
  return spec;
}

PoleDivisor constant_example_divisor(double c) {
  return PoleDivisor{{WeightedPoint{c, 1}}};
}

double scaled_coefficient_error(const std::vector<cplx>& got,
                                const std::vector<cplx>& reference) {
  const std::size_t n = std::max(got.size(), reference.size());
  auto at = [](const std::vector<cplx>& v, std::size_t i) {
    return i < v.size() ? v[i] : cplx{};
  };
  std::size_t k = 0;
  double ref_max = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(at(reference, i)) > ref_max) {
      ref_max = std::abs(at(reference, i));
      k = i;
    }
  if (ref_max == 0.0 || at(got, k) == 0.0) return INFINITY;
  const cplx factor = at(reference, k) / at(got, k);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    worst = std::max(worst, std::abs(at(got, i) * factor - at(reference, i)));
  return worst / ref_max;
}

ConstantExampleResult run_constant_example(
    double c, const ConstantExampleOptions& opts) {
  if (!std::isfinite(c) || c == 0.0)
    throw InvalidInput("the constant example needs a finite nonzero c");
  ConstantExampleResult out;
  out.c = c;
  const CurveSpec spec = constant_example_spec(c);
  const PoleDivisor divisor = constant_example_divisor(c);

  const Grid grid{-1.0, 1.0, -1.0, 1.0, opts.grid_n, opts.grid_n};
  const auto field = dirac_potential_field(spec, divisor, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!field.status[i].ok) {
      ++out.failed_nodes;
      continue;
    }
    out.max_u_error = std::max(out.max_u_error, std::abs(field.u[i] - c));
    out.max_v_error = std::max(out.max_v_error, std::abs(field.v[i] - c));
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> radius(0.2, 3.0);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (int s = 0; s < opts.psi_samples; ++s) {
    cplx lam;
    do {
      lam = std::polar(radius(rng), angle(rng));
    } while (std::abs(lam - c) < 0.1 * std::abs(c));
    const Position pos{coord(rng), coord(rng)};
    const auto wave = solve_dirac_wave(spec, divisor, pos);
    const cplx e = std::exp(lam * pos.z() - c * c / lam * pos.zbar());
    const cplx ref1 = lam / (lam - c) * e;
    const cplx ref2 = c / (c - lam) * e;
    out.max_psi_error =
        std::max({out.max_psi_error, std::abs(wave.psi1(lam) - ref1) / std::abs(ref1),
                  std::abs(wave.psi2(lam) - ref2) / std::abs(ref2)});
  }

  ConsequenceTolerances tol;
  tol.u_minus_v = opts.consequence_tolerance;
  tol.imaginary = opts.consequence_tolerance;

  const CertificateRequest sigma_req{spec, divisor, CertificateKind::dirac_sigma};
  const auto sigma = find_certificate(sigma_req);
  if (sigma.feasible()) {
    out.sigma_found = true;
    out.sigma_verified = sigma.certificate->report.passed();
    out.sigma_numerator = sigma.certificate->omega.f.numerator().coeffs();
    out.sigma_coefficient_error =
        scaled_coefficient_error(out.sigma_numerator, {-c * c, 0.0, 1.0});
    out.sigma_consequences =
        assert_consequences(sigma_req, *sigma.certificate, grid, tol);
  }

  const CertificateRequest tau_req{spec, divisor, CertificateKind::dirac_tau};
  const auto tau = find_certificate(tau_req);
  if (tau.feasible()) {
    out.tau_found = true;
    out.tau_verified = tau.certificate->report.passed();
    out.tau_numerator = tau.certificate->omega.f.numerator().coeffs();
    out.tau_coefficient_error =
        scaled_coefficient_error(out.tau_numerator, {c * c, -2.0 * c, 1.0});
    out.tau_consequences =
        assert_consequences(tau_req, *tau.certificate, grid, tol);
  }

  out.passed = out.failed_nodes == 0 &&
               out.max_u_error <= opts.potential_tolerance &&
               out.max_v_error <= opts.potential_tolerance &&
               out.max_psi_error <= opts.psi_tolerance && out.sigma_verified &&
               out.tau_verified &&
               out.sigma_coefficient_error <= opts.coefficient_tolerance &&
               out.tau_coefficient_error <= opts.coefficient_tolerance &&
               out.sigma_consequences.passed && out.tau_consequences.passed;
  return out;
}

}  // namespace fgap
