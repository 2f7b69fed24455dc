#pragma once

// One-dimensional degenerations on the rational curve w^2 = E:
// psi(w, x) = e^{wx} (w + a(x)) / (w - p) with a single gluing condition,
// either a cusp-like double point at w = 0 (psi_w(0) = 0) or the pair
// q ~ -q (psi(q) = psi(-q)). Then (d_x^2 + u) psi = w^2 psi with u = -2 a'.

#include <functional>
#include <span>
#include <vector>

#include "fgap/spectral_data.hpp"

namespace fgap {

struct OneDConfig {
  enum class Gluing { double_point, pair };
  Gluing gluing = Gluing::double_point;
  cplx p{1.0, 0.0};
  cplx q{1.0, 0.0};  // pair only
};

/// Throws InvalidInput when p hits a glued point or q = 0.
void validate_1d(const OneDConfig& cfg);

/// a and its first two x-derivatives.
struct OneDWave {
  cplx a, da, dda;

  /// R = 1 + xi_1 / w + O(w^-2)
  cplx xi1(cplx p) const { return a + p; }
};

/// Throws DegeneratePosition when the 1x1 gluing equation degenerates at x.
OneDWave solve_1d_wave(const OneDConfig& cfg, double x);

/// u = -2 d_x xi_1
cplx potential_1d_at(const OneDConfig& cfg, double x);

struct OneDSample {
  std::vector<double> x;
  std::vector<cplx> u;
  std::vector<cplx> xi1;
};

/// n >= 2 equally spaced nodes on [x_min, x_max].
OneDSample potential_1d(const OneDConfig& cfg, double x_min, double x_max,
                        int n);

struct WXSample {
  cplx w;
  double x;
};

/// max |psi'' + u psi - w^2 psi| / scale over the samples.
/// Throws SampleTooClose for w near 0, +-q or p.
double residual_1d(const OneDConfig& cfg, std::span<const WXSample> samples);
/// Same with an externally supplied potential (negative controls).
double residual_1d_with(const OneDConfig& cfg,
                        std::span<const WXSample> samples,
                        const std::function<cplx(double)>& u);

/// Least-squares fit of K sech^2(s x + phi) by Levenberg-Marquardt.
struct Sech2Fit {
  double amplitude = 0.0;
  double rate = 0.0;
  double phase = 0.0;
  /// max |model - data| / max |data|
  double residual = 0.0;
  int iterations = 0;
};

Sech2Fit fit_sech2(std::span<const double> x, std::span<const double> u);

}  // namespace fgap
