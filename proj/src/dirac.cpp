#include "fgap/dirac.hpp"

#include <algorithm>
#include <cmath>

#include "fgap/errors.hpp"
#include "fgap/schrodinger.hpp"

namespace fgap {

NumeratorAnsatz dirac_first_ansatz(const PoleDivisor& divisor) {
  const int g = divisor.degree() - 1;
  NumeratorAnsatz a;
  a.fixed = Poly::monomial(g + 1);
  for (int k = 1; k <= g; ++k) a.free_powers.push_back(k);
  a.poles = divisor.entries;
  return a;
}

NumeratorAnsatz dirac_second_ansatz(const PoleDivisor& divisor) {
  const int g = divisor.degree() - 1;
  NumeratorAnsatz a;
  a.fixed = Poly(std::vector<cplx>{Poly::from_roots(divisor.entries)(0.0)});
  for (int k = 1; k <= g; ++k) a.free_powers.push_back(k);
  a.poles = divisor.entries;
  return a;
}

DiracWave::DiracWave(CurveSpec spec, PoleDivisor divisor, Position pos,
                     NumeratorAnsatz first, NumeratorSolution first_solution,
                     NumeratorAnsatz second, NumeratorSolution second_solution)
    : spec_(std::move(spec)),
      divisor_(std::move(divisor)),
      pos_(pos),
      core_(spec_.alpha, spec_.beta, pos),
      ansatz1_(std::move(first)),
      ansatz2_(std::move(second)),
      sol1_(std::move(first_solution)),
      sol2_(std::move(second_solution)),
      r1_(sol1_.numerator(ansatz1_), ansatz1_.poles),
      r2_(sol2_.numerator(ansatz2_), ansatz2_.poles),
      r1_zb_(sol1_.numerator_dzbar(ansatz1_), ansatz1_.poles),
      r2_z_(sol2_.numerator_dz(ansatz2_), ansatz2_.poles) {}

double DiracWave::condition() const {
  return std::max(sol1_.condition, sol2_.condition);
}

// psi_2 = e^{k_+ z} (xi_2^+ / k_+ + ...) near inf_+, with 1/lambda = alpha/k_+.
cplx DiracWave::potential_u() const {
  return -spec_.alpha * r2_.laurent_at_infinity(2)[1];
}

// psi_1 = e^{k_- zbar} (xi_1^- / k_- + ...) near inf_-, lambda = beta / k_-.
cplx DiracWave::potential_v() const {
  return spec_.beta * r1_.derivative()(0.0);
}

cplx DiracWave::xi1_plus() const {
  return spec_.alpha * spec_.beta * core_.zbar() +
         spec_.alpha * r1_.laurent_at_infinity(2)[1];
}

cplx DiracWave::xi2_minus() const {
  return spec_.alpha * spec_.beta * core_.z() +
         spec_.beta * r2_.derivative()(0.0);
}

DiracWave solve_dirac_wave(const CurveSpec& spec, const PoleDivisor& divisor,
                           Position pos, double cutoff) {
  require_admissible(spec, divisor, OperatorKind::dirac);
  const ExponentialCore core(spec.alpha, spec.beta, pos);
  const auto conds = gluing_conditions(spec);
  auto a1 = dirac_first_ansatz(divisor);
  auto a2 = dirac_second_ansatz(divisor);
  auto s1 = solve_numerator(a1, conds, core, cutoff);
  auto s2 = solve_numerator(a2, conds, core, cutoff);
  return DiracWave(spec, divisor, pos, std::move(a1), std::move(s1),
                   std::move(a2), std::move(s2));
}

DiracPotentials extract_dirac_potentials(const DiracWave& wave) {
  return {wave.potential_u(), wave.potential_v(), wave.xi1_plus(),
          wave.xi2_minus()};
}

bool DiracPotentialSample::all_ok() const {
  return std::all_of(status.begin(), status.end(),
                     [](const NodeStatus& s) { return s.ok; });
}

DiracPotentialSample dirac_potential_field(const CurveSpec& spec,
                                           const PoleDivisor& divisor,
                                           const Grid& grid, double cutoff) {
  require_admissible(spec, divisor, OperatorKind::dirac);
  DiracPotentialSample out;
  out.grid = grid;
  const std::size_t n = grid.size();
  out.u.assign(n, cplx{});
  out.v.assign(n, cplx{});
  out.xi1_plus.assign(n, cplx{});
  out.xi2_minus.assign(n, cplx{});
  out.status.assign(n, NodeStatus{});
  parallel_for(n, [&](std::size_t idx) {
    try {
      const auto wave = solve_dirac_wave(spec, divisor, grid.at(idx), cutoff);
      const auto p = extract_dirac_potentials(wave);
      out.u[idx] = p.u;
      out.v[idx] = p.v;
      out.xi1_plus[idx] = p.xi1_plus;
      out.xi2_minus[idx] = p.xi2_minus;
    } catch (const Error& e) {
      out.status[idx] = {false, e.what()};
    }
  });
  return out;
}

double dirac_residual_with_potentials(const DiracWave& wave,
                                      std::span<const cplx> samples, cplx u,
                                      cplx v) {
  check_samples(wave.spec(), wave.divisor(), samples);
  const cplx alpha = wave.spec().alpha;
  const cplx beta = wave.spec().beta;
  double worst = 0.0;
  for (const cplx lam : samples) {
    // Divided by E(lambda).
    const cplx r1 = wave.r1()(lam);
    const cplx r2 = wave.r2()(lam);
    const cplx d_psi2 = alpha * lam * r2 + wave.r2_dz()(lam);
    const cplx dbar_psi1 = beta / lam * r1 + wave.r1_dzbar()(lam);
    const cplx e1 = d_psi2 + u * r1;
    const cplx e2 = -dbar_psi1 + v * r2;
    const double s1 =
        std::max({std::abs(d_psi2), std::abs(u * r1), 1e-300});
    const double s2 =
        std::max({std::abs(dbar_psi1), std::abs(v * r2), 1e-300});
    worst = std::max({worst, std::abs(e1) / s1, std::abs(e2) / s2});
  }
  return worst;
}

double dirac_residual(const CurveSpec& spec, const PoleDivisor& divisor,
                      Position pos, std::span<const cplx> samples) {
  const auto wave = solve_dirac_wave(spec, divisor, pos);
  return dirac_residual_with_potentials(wave, samples, wave.potential_u(),
                                        wave.potential_v());
}

}  // namespace fgap
