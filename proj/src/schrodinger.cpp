#include "fgap/schrodinger.hpp"

#include <algorithm>
#include <cmath>

#include "fgap/errors.hpp"

namespace fgap {

NumeratorAnsatz schrodinger_ansatz(const PoleDivisor& divisor) {
  const int g = divisor.degree();
  NumeratorAnsatz a;
  a.fixed = Poly::monomial(g);
  for (int k = 0; k < g; ++k) a.free_powers.push_back(k);
  a.poles = divisor.entries;
  return a;
}

SchrodingerWave::SchrodingerWave(CurveSpec spec, PoleDivisor divisor,
                                 Position pos, NumeratorAnsatz ansatz,
                                 NumeratorSolution solution)
    : spec_(std::move(spec)),
      divisor_(std::move(divisor)),
      pos_(pos),
      core_(spec_.alpha, spec_.beta, pos),
      ansatz_(std::move(ansatz)),
      solution_(std::move(solution)),
      r_(solution_.numerator(ansatz_), ansatz_.poles),
      r_z_(solution_.numerator_dz(ansatz_), ansatz_.poles),
      r_zb_(solution_.numerator_dzbar(ansatz_), ansatz_.poles),
      r_zzb_(solution_.numerator_dz_dzbar(ansatz_), ansatz_.poles) {}

// At inf_+, E = e^{k_+ z} (1 + alpha beta zbar / k_+ + ...) and
// R = 1 + r_1 / lambda + ... = 1 + alpha r_1 / k_+ + ...
cplx SchrodingerWave::xi() const {
  const cplx ab = spec_.alpha * spec_.beta;
  return ab * core_.zbar() + spec_.alpha * r_.laurent_at_infinity(2)[1];
}

cplx SchrodingerWave::dxi_dzbar() const {
  const cplx ab = spec_.alpha * spec_.beta;
  return ab + spec_.alpha * r_zb_.laurent_at_infinity(2)[1];
}

// At inf_- the factor e^{alpha lambda z} tends to 1, so c = R(0).
cplx SchrodingerWave::c() const { return r_(0.0); }

cplx SchrodingerWave::dc_dz() const { return r_z_(0.0); }

cplx SchrodingerWave::magnetic() const {
  const cplx cv = c();
  if (cv == 0.0)
    throw DegenerateConfig("c(x,y) vanishes: log c is undefined here");
  return -dc_dz() / cv;
}

LinearSystem assemble_gluing_system(const CurveSpec& spec,
                                    const PoleDivisor& divisor, Position pos) {
  require_admissible(spec, divisor, OperatorKind::schrodinger);
  const ExponentialCore core(spec.alpha, spec.beta, pos);
  return assemble_system(schrodinger_ansatz(divisor), gluing_conditions(spec),
                         core);
}

SchrodingerWave solve_wave(const CurveSpec& spec, const PoleDivisor& divisor,
                           Position pos, double cutoff) {
  require_admissible(spec, divisor, OperatorKind::schrodinger);
  const ExponentialCore core(spec.alpha, spec.beta, pos);
  auto ansatz = schrodinger_ansatz(divisor);
  auto sol = solve_numerator(ansatz, gluing_conditions(spec), core, cutoff);
  return SchrodingerWave(spec, divisor, pos, std::move(ansatz), std::move(sol));
}

cplx extract_xi(const SchrodingerWave& wave) { return wave.xi(); }
cplx extract_c(const SchrodingerWave& wave) { return wave.c(); }

bool SchrodingerPotentialSample::all_ok() const {
  return std::all_of(status.begin(), status.end(),
                     [](const NodeStatus& s) { return s.ok; });
}

SchrodingerPotentialSample potential_field(const CurveSpec& spec,
                                           const PoleDivisor& divisor,
                                           const Grid& grid,
                                           DerivativeMode mode, double fd_h,
                                           double cutoff) {
  require_admissible(spec, divisor, OperatorKind::schrodinger);
  SchrodingerPotentialSample out;
  out.grid = grid;
  const std::size_t n = grid.size();
  out.u.assign(n, cplx{});
  out.magnetic.assign(n, cplx{});
  out.xi.assign(n, cplx{});
  out.c.assign(n, cplx{});
  out.status.assign(n, NodeStatus{});

  parallel_for(n, [&](std::size_t idx) {
    const Position pos = grid.at(idx);
    try {
      const auto wave = solve_wave(spec, divisor, pos, cutoff);
      out.xi[idx] = wave.xi();
      out.c[idx] = wave.c();
      if (mode == DerivativeMode::analytic) {
        out.u[idx] = wave.potential();
        out.magnetic[idx] = wave.magnetic();
      } else {
        const auto xi_at = [&](Position p) {
          return solve_wave(spec, divisor, p, cutoff).xi();
        };
        const auto logc_at = [&](Position p) {
          return std::log(solve_wave(spec, divisor, p, cutoff).c());
        };
        out.u[idx] = -richardson_wirtinger(xi_at, pos, fd_h).dzbar;
        // Differences of log c are taken on a branch continuous near pos.
        const cplx log_c0 = std::log(out.c[idx]);
        const auto shifted = [&](Position p) {
          cplx v = logc_at(p) - log_c0;
          const double two_pi = 2.0 * M_PI;
          v.imag(v.imag() - two_pi * std::round(v.imag() / two_pi));
          return v;
        };
        out.magnetic[idx] = -richardson_wirtinger(shifted, pos, fd_h).dz;
      }
    } catch (const Error& e) {
      out.status[idx] = {false, e.what()};
    }
  });
  return out;
}

void check_samples(const CurveSpec& spec, const PoleDivisor& divisor,
                   std::span<const cplx> samples) {
  auto too_close = [](cplx s, cplx p) {
    return std::abs(s - p) < kSampleClearance * std::max(1.0, std::abs(p));
  };
  for (const cplx s : samples) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()) ||
        too_close(s, 0.0))
      throw SampleTooClose("sample too close to a marked point");
    for (const auto& q : all_support_points(spec))
      if (too_close(s, q.point))
        throw SampleTooClose("sample too close to a gluing support point");
    for (const auto& p : divisor.entries)
      if (too_close(s, p.point))
        throw SampleTooClose("sample too close to a divisor point");
  }
}

double residual_with_potentials(const SchrodingerWave& wave,
                                std::span<const cplx> samples, cplx u,
                                cplx magnetic) {
  check_samples(wave.spec(), wave.divisor(), samples);
  const cplx alpha = wave.spec().alpha;
  const cplx beta = wave.spec().beta;
  double worst = 0.0;
  for (const cplx lam : samples) {
    // Everything below is divided by E(lambda).
    const cplx r = wave.prefactor()(lam);
    const cplx rz = wave.prefactor_dz()(lam);
    const cplx rzb = wave.prefactor_dzbar()(lam);
    const cplx rzzb = wave.prefactor_dz_dzbar()(lam);
    const cplx dbar = beta / lam * r + rzb;
    const cplx d_dbar = alpha * beta * r + alpha * lam * rzb + beta / lam * rz +
                        rzzb;
    const cplx lpsi = d_dbar + magnetic * dbar + u * r;
    const double scale = std::max({std::abs(d_dbar), std::abs(magnetic * dbar),
                                   std::abs(u * r), 1e-300});
    worst = std::max(worst, std::abs(lpsi) / scale);
  }
  return worst;
}

double operator_residual(const CurveSpec& spec, const PoleDivisor& divisor,
                         Position pos, std::span<const cplx> samples) {
  const auto wave = solve_wave(spec, divisor, pos);
  return residual_with_potentials(wave, samples, wave.potential(),
                                  wave.magnetic());
}

}  // namespace fgap
