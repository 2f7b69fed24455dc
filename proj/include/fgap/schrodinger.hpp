#pragma once

// Baker-Akhiezer function of the two-dimensional Schroedinger operator
//   L = d dbar + A dbar + u,   d = d/dz, dbar = d/dzbar,
// on a rational curve with glued points:
//   psi(lambda) = E(lambda) * P(lambda) / prod (lambda - p_j)^{n_j},
// P monic of degree g = p_a, its lower coefficients fixed by descent.

#include <span>
#include <vector>

#include "fgap/gluing.hpp"
#include "fgap/grid.hpp"
#include "fgap/spectral_data.hpp"

namespace fgap {

class SchrodingerWave {
 public:
  SchrodingerWave(CurveSpec spec, PoleDivisor divisor, Position pos,
                  NumeratorAnsatz ansatz, NumeratorSolution solution);

  const CurveSpec& spec() const { return spec_; }
  const PoleDivisor& divisor() const { return divisor_; }
  Position position() const { return pos_; }
  const ExponentialCore& core() const { return core_; }
  int genus() const { return static_cast<int>(solution_.coef.size()); }
  const NumeratorSolution& solution() const { return solution_; }
  double condition() const { return solution_.condition; }

  /// R = P / den and its derivatives in z, zbar (z, zbar independent).
  const RationalFunction& prefactor() const { return r_; }
  const RationalFunction& prefactor_dz() const { return r_z_; }
  const RationalFunction& prefactor_dzbar() const { return r_zb_; }
  const RationalFunction& prefactor_dz_dzbar() const { return r_zzb_; }

  cplx psi(cplx lambda) const { return core_.value(lambda) * r_(lambda); }

  cplx xi() const;
  cplx c() const;
  cplx dxi_dzbar() const;
  cplx dc_dz() const;
  /// u = -dbar xi
  cplx potential() const { return -dxi_dzbar(); }
  /// A = -d log c
  cplx magnetic() const;

 private:
  CurveSpec spec_;
  PoleDivisor divisor_;
  Position pos_;
  ExponentialCore core_;
  NumeratorAnsatz ansatz_;
  NumeratorSolution solution_;
  RationalFunction r_, r_z_, r_zb_, r_zzb_;
};

NumeratorAnsatz schrodinger_ansatz(const PoleDivisor& divisor);

LinearSystem assemble_gluing_system(const CurveSpec& spec,
                                    const PoleDivisor& divisor, Position pos);

/// Throws InvalidRequest (inadmissible data), NonGenericDivisor.
SchrodingerWave solve_wave(const CurveSpec& spec, const PoleDivisor& divisor,
                           Position pos, double cutoff = kConditionCutoff);

cplx extract_xi(const SchrodingerWave& wave);
cplx extract_c(const SchrodingerWave& wave);

enum class DerivativeMode { analytic, finite_difference };

struct SchrodingerPotentialSample {
  Grid grid;
  std::vector<cplx> u, magnetic, xi, c;
  std::vector<NodeStatus> status;

  bool all_ok() const;
};

/// Finite-difference mode uses Richardson central differences with step fd_h.
SchrodingerPotentialSample potential_field(
    const CurveSpec& spec, const PoleDivisor& divisor, const Grid& grid,
    DerivativeMode mode = DerivativeMode::analytic, double fd_h = 1e-3,
    double cutoff = kConditionCutoff);

/// Minimum relative distance from samples to 0, supports and poles.
inline constexpr double kSampleClearance = 1e-3;

/// Throws SampleTooClose when a sample is within kSampleClearance of 0, a
/// support point or a pole.
void check_samples(const CurveSpec& spec, const PoleDivisor& divisor,
                   std::span<const cplx> samples);

/// max |L psi| / scale over the samples for given potentials u, A.
double residual_with_potentials(const SchrodingerWave& wave,
                                std::span<const cplx> samples, cplx u,
                                cplx magnetic);

double operator_residual(const CurveSpec& spec, const PoleDivisor& divisor,
                         Position pos, std::span<const cplx> samples);

}  // namespace fgap
