#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "fgap/spectral_data.hpp"

namespace fgap::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Point in the annulus r_lo <= |z| <= r_hi at distance >= sep from `taken`.
inline cplx separated_point(Rng& rng, std::vector<cplx>& taken, double sep,
                            double r_lo = 0.4, double r_hi = 2.0) {
  for (;;) {
    const cplx z = std::polar(uniform(rng, r_lo, r_hi), uniform(rng, -M_PI, M_PI));
    bool ok = true;
    for (const cplx t : taken)
      if (std::abs(z - t) < sep) ok = false;
    if (ok) {
      taken.push_back(z);
      return z;
    }
  }
}

struct RandomConfig {
  CurveSpec spec;
  PoleDivisor schrodinger_divisor;  // degree p_a
  PoleDivisor dirac_divisor;        // degree p_a + 1
};

/// 1..max_classes classes, p_a in [1, max_genus], multiplicities <= max_mult,
/// all points pairwise separated by >= sep, D generic.
inline RandomConfig random_config(Rng& rng, int max_classes = 3,
                                  int max_genus = 4, int max_mult = 3,
                                  double sep = 0.3) {
  for (;;) {
    std::vector<cplx> taken = {0.0};
    RandomConfig c;
    c.spec.alpha = std::polar(uniform(rng, 0.6, 1.4), uniform(rng, -M_PI, M_PI));
    c.spec.beta = std::polar(uniform(rng, 0.6, 1.4), uniform(rng, -M_PI, M_PI));
    const int nclasses = uniform_int(rng, 1, max_classes);
    int genus = 0;
    for (int k = 0; k < nclasses; ++k) {
      const int members = uniform_int(rng, 1, 3);
      std::vector<WeightedPoint> pts;
      int degree = 0;
      for (int m = 0; m < members; ++m) {
        const int mult = uniform_int(rng, 1, max_mult);
        pts.push_back({separated_point(rng, taken, sep), mult});
        degree += mult;
      }
      if (degree < 2) {
        pts.front().multiplicity += 1;
        degree += 1;
      }
      genus += degree - 1;
      c.spec.classes.emplace_back(std::move(pts));
    }
    if (genus > max_genus) continue;
    for (int i = 0; i < genus; ++i)
      c.schrodinger_divisor.entries.push_back(
          {separated_point(rng, taken, sep), 1});
    c.dirac_divisor = c.schrodinger_divisor;
    c.dirac_divisor.entries.push_back({separated_point(rng, taken, sep), 1});
    return c;
  }
}

/// Taylor coefficients of an analytic f at x by the trapezoid rule on a
/// circle of radius r (independent of the library's jet arithmetic).
inline std::vector<cplx> contour_jet(const std::function<cplx(cplx)>& f, cplx x,
                                     int len, double r, int nodes = 64) {
  std::vector<cplx> out(len);
  for (int j = 0; j < nodes; ++j) {
    const double th = 2.0 * M_PI * j / nodes;
    const cplx v = f(x + std::polar(r, th));
    for (int k = 0; k < len; ++k)
      out[k] += v * std::polar(1.0, -k * th) / (nodes * std::pow(r, k));
  }
  return out;
}

}  // namespace fgap::testing
