#pragma once

// Two-component Baker-Akhiezer function of the Dirac operator
//   D = [[0, d], [-dbar, 0]] + diag(U, V)
// on a rational curve with glued points. Both components share E(lambda):
//   psi_1 = E * P_1 / den,  P_1 monic of degree g+1 with P_1(0) = 0,
//   psi_2 = E * P_2 / den,  deg P_2 <= g with P_2(0) = den(0),
// where den = prod (lambda - p_j)^{n_j} has degree g + 1.

#include <span>
#include <vector>

#include "fgap/gluing.hpp"
#include "fgap/grid.hpp"
#include "fgap/spectral_data.hpp"

namespace fgap {

class DiracWave {
 public:
  DiracWave(CurveSpec spec, PoleDivisor divisor, Position pos,
            NumeratorAnsatz first, NumeratorSolution first_solution,
            NumeratorAnsatz second, NumeratorSolution second_solution);

  const CurveSpec& spec() const { return spec_; }
  const PoleDivisor& divisor() const { return divisor_; }
  Position position() const { return pos_; }
  const ExponentialCore& core() const { return core_; }
  int genus() const { return divisor_.degree() - 1; }

  const NumeratorSolution& first_solution() const { return sol1_; }
  const NumeratorSolution& second_solution() const { return sol2_; }
  double condition() const;

  const RationalFunction& r1() const { return r1_; }
  const RationalFunction& r2() const { return r2_; }
  const RationalFunction& r1_dzbar() const { return r1_zb_; }
  const RationalFunction& r2_dz() const { return r2_z_; }

  cplx psi1(cplx lambda) const { return core_.value(lambda) * r1_(lambda); }
  cplx psi2(cplx lambda) const { return core_.value(lambda) * r2_(lambda); }

  /// U = -xi_2^+
  cplx potential_u() const;
  /// V = xi_1^-
  cplx potential_v() const;
  cplx xi1_plus() const;
  cplx xi2_minus() const;

 private:
  CurveSpec spec_;
  PoleDivisor divisor_;
  Position pos_;
  ExponentialCore core_;
  NumeratorAnsatz ansatz1_, ansatz2_;
  NumeratorSolution sol1_, sol2_;
  RationalFunction r1_, r2_, r1_zb_, r2_z_;
};

NumeratorAnsatz dirac_first_ansatz(const PoleDivisor& divisor);
NumeratorAnsatz dirac_second_ansatz(const PoleDivisor& divisor);

/// Throws InvalidRequest, NonGenericDivisor.
DiracWave solve_dirac_wave(const CurveSpec& spec, const PoleDivisor& divisor,
                           Position pos, double cutoff = kConditionCutoff);

struct DiracPotentials {
  cplx u, v, xi1_plus, xi2_minus;
};

DiracPotentials extract_dirac_potentials(const DiracWave& wave);

struct DiracPotentialSample {
  Grid grid;
  std::vector<cplx> u, v, xi1_plus, xi2_minus;
  std::vector<NodeStatus> status;

  bool all_ok() const;
};

DiracPotentialSample dirac_potential_field(const CurveSpec& spec,
                                           const PoleDivisor& divisor,
                                           const Grid& grid,
                                           double cutoff = kConditionCutoff);

/// max over samples and both equations of |residual| / scale, where the
/// equations are d psi_2 + U psi_1 = 0 and -dbar psi_1 + V psi_2 = 0.
double dirac_residual_with_potentials(const DiracWave& wave,
                                      std::span<const cplx> samples, cplx u,
                                      cplx v);

double dirac_residual(const CurveSpec& spec, const PoleDivisor& divisor,
                      Position pos, std::span<const cplx> samples);

}  // namespace fgap
