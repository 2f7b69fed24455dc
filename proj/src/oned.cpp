#include "fgap/oned.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "fgap/errors.hpp"
#include "fgap/rational.hpp"

namespace fgap {

namespace {

// L[w^m e^{wx} / (w - p)] for m = 0..3, with the magnitude envelope of each.
struct FunctionalValues {
  cplx value[4];
  double envelope[4];
};

FunctionalValues apply_gluing(const OneDConfig& cfg, double x) {
  FunctionalValues out{};
  if (cfg.gluing == OneDConfig::Gluing::double_point) {
    // d/dw at w = 0.
    const Jet e = {1.0, x};
    const Jet inv = jet_inverse_power(0.0, cfg.p, 1, 2);
    for (int m = 0; m < 4; ++m) {
      const Jet wm = jet_power(0.0, m, 2);
      const Jet prod = jet_mul(jet_mul(wm, e), inv);
      out.value[m] = prod[1];
      out.envelope[m] = std::abs(wm[0]) * (std::abs(e[0]) * std::abs(inv[1]) +
                                           std::abs(e[1]) * std::abs(inv[0])) +
                        std::abs(wm[1]) * std::abs(e[0]) * std::abs(inv[0]);
    }
  } else {
    const cplx q = cfg.q;
    const cplx fp = std::exp(q * x) / (q - cfg.p);
    const cplx fm = std::exp(-q * x) / (-q - cfg.p);
    for (int m = 0; m < 4; ++m) {
      const cplx a = ipow(q, m) * fp;
      const cplx b = ipow(-q, m) * fm;
      out.value[m] = a - b;
      out.envelope[m] = std::abs(a) + std::abs(b);
    }
  }
  return out;
}

bool near(cplx w, cplx pt) {
  return std::abs(w - pt) < 1e-3 * std::max(1.0, std::abs(pt));
}

}  // namespace

void validate_1d(const OneDConfig& cfg) {
  if (!std::isfinite(cfg.p.real()) || !std::isfinite(cfg.p.imag()))
    throw InvalidInput("pole p must be finite");
  if (points_coincide(cfg.p, 0.0))
    throw InvalidInput("pole p must differ from 0");
  if (cfg.gluing == OneDConfig::Gluing::pair) {
    if (points_coincide(cfg.q, 0.0))
      throw InvalidInput("pair gluing needs q != 0");
    if (points_coincide(cfg.p, cfg.q) || points_coincide(cfg.p, -cfg.q))
      throw InvalidInput("pole p must differ from +-q");
  }
}

// The condition is L_1 + a L_0 = 0; d/dx multiplies the integrand by w.
OneDWave solve_1d_wave(const OneDConfig& cfg, double x) {
  validate_1d(cfg);
  const auto f = apply_gluing(cfg, x);
  const cplx l0 = f.value[0];
  if (std::abs(l0) <= 1e-12 * f.envelope[0])
    throw DegeneratePosition("one-dimensional gluing equation degenerates at x = " +
                             std::to_string(x));
  OneDWave w;
  w.a = -f.value[1] / l0;
  w.da = -(f.value[2] + w.a * f.value[1]) / l0;
  w.dda = -(f.value[3] + 2.0 * w.da * f.value[1] + w.a * f.value[2]) / l0;
  return w;
}

cplx potential_1d_at(const OneDConfig& cfg, double x) {
  return -2.0 * solve_1d_wave(cfg, x).da;
}

OneDSample potential_1d(const OneDConfig& cfg, double x_min, double x_max,
                        int n) {
  if (n < 2) throw InvalidInput("potential_1d needs at least 2 nodes");
  OneDSample out;
  for (int i = 0; i < n; ++i) {
    const double x = x_min + (x_max - x_min) * i / (n - 1);
    const auto w = solve_1d_wave(cfg, x);
    out.x.push_back(x);
    out.u.push_back(-2.0 * w.da);
    out.xi1.push_back(w.xi1(cfg.p));
  }
  return out;
}

double residual_1d_with(const OneDConfig& cfg,
                        std::span<const WXSample> samples,
                        const std::function<cplx(double)>& u) {
  double worst = 0.0;
  for (const auto& s : samples) {
    const cplx w = s.w;
    if (near(w, 0.0) || near(w, cfg.p) ||
        (cfg.gluing == OneDConfig::Gluing::pair &&
         (near(w, cfg.q) || near(w, -cfg.q))))
      throw SampleTooClose("1D sample too close to a glued point or the pole");
    const auto wave = solve_1d_wave(cfg, s.x);
    // Divided by e^{wx}.
    const cplx inv = 1.0 / (w - cfg.p);
    const cplx r = (w + wave.a) * inv;
    const cplx d2 = w * w * r + 2.0 * w * wave.da * inv + wave.dda * inv;
    const cplx uv = u(s.x);
    const cplx res = d2 + uv * r - w * w * r;
    const double scale = std::max(
        {std::abs(d2), std::abs(uv * r), std::abs(w * w * r), 1e-300});
    worst = std::max(worst, std::abs(res) / scale);
  }
  return worst;
}

double residual_1d(const OneDConfig& cfg, std::span<const WXSample> samples) {
  return residual_1d_with(cfg, samples,
                          [&](double x) { return potential_1d_at(cfg, x); });
}

Sech2Fit fit_sech2(std::span<const double> x, std::span<const double> u) {
  const std::size_t n = x.size();
  if (n < 4 || u.size() != n)
    throw InvalidInput("fit_sech2 needs at least 4 matching samples");
  std::size_t peak = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(u[i]) > std::abs(u[peak])) peak = i;
  const double umax = std::abs(u[peak]);
  if (umax == 0.0) throw InvalidInput("fit_sech2: data vanish identically");

  // Half-width: sech^2(s d) = 1/2 at s d = acosh(sqrt 2).
  double half = 0.0;
  for (std::size_t k = 1; k < n && half == 0.0; ++k) {
    if (peak + k < n && std::abs(u[peak + k]) <= umax / 2)
      half = x[peak + k] - x[peak];
    else if (peak >= k && std::abs(u[peak - k]) <= umax / 2)
      half = x[peak] - x[peak - k];
  }
  if (half == 0.0) half = (x[n - 1] - x[0]) / 4;

  Eigen::Vector3d th(u[peak], std::acosh(std::sqrt(2.0)) / half, 0.0);
  th(2) = -th(1) * x[peak];

  auto residuals = [&](const Eigen::Vector3d& t, Eigen::VectorXd& r,
                       Eigen::MatrixXd* jac) {
    r.resize(static_cast<Eigen::Index>(n));
    if (jac) jac->resize(static_cast<Eigen::Index>(n), 3);
    for (std::size_t i = 0; i < n; ++i) {
      const double arg = t(1) * x[i] + t(2);
      const double sh = 1.0 / std::cosh(arg);
      const double s2 = sh * sh;
      r(i) = t(0) * s2 - u[i];
      if (jac) {
        const double d = -2.0 * t(0) * s2 * std::tanh(arg);
        (*jac)(i, 0) = s2;
        (*jac)(i, 1) = d * x[i];
        (*jac)(i, 2) = d;
      }
    }
  };

  Sech2Fit fit;
  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  double mu = 1e-3;
  residuals(th, r, &jac);
  double cost = r.squaredNorm();
  for (int it = 0; it < 500; ++it) {
    fit.iterations = it + 1;
    const Eigen::Matrix3d jtj = jac.transpose() * jac;
    const Eigen::Vector3d g = jac.transpose() * r;
    Eigen::Matrix3d lhs = jtj;
    lhs.diagonal() += mu * jtj.diagonal().cwiseMax(1e-300);
    const Eigen::Vector3d step = lhs.ldlt().solve(-g);
    const Eigen::Vector3d trial = th + step;
    Eigen::VectorXd rt;
    residuals(trial, rt, nullptr);
    const double ct = rt.squaredNorm();
    if (ct < cost) {
      th = trial;
      cost = ct;
      mu = std::max(mu / 10, 1e-15);
      residuals(th, r, &jac);
      if (step.norm() <= 1e-15 * (1.0 + th.norm())) break;
    } else {
      mu *= 10;
      if (mu > 1e15) break;
    }
  }
  fit.amplitude = th(0);
  fit.rate = th(1);
  fit.phase = th(2);
  fit.residual = r.cwiseAbs().maxCoeff() / umax;
  return fit;
}

}  // namespace fgap
