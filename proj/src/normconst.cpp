// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

#include "fbnorm/normconst.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <string>

#include "fbnorm/errors.hpp"

namespace fbnorm {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kResidualGate = 1e-8;

// Modeled log of the trapezoid alias error must fall below this before a
// contour distance d is accepted.
constexpr double kErrTarget = -26.0;

// Upper quantization of ||gamma|| so nearby parameter sets share one
// quadrature configuration.
double quantize_gamma_norm(double s) {
  if (s <= 0.0) return 0.0;
  double q = 1.0;
  while (q < s) q *= 2.0;
  return q;
}

// pi^{p/2-1} e^{-t0} e^{-shift} Re(raw), assembled in log scale; raises
// the accuracy gate on a non-positive real part or a large imaginary
// residual.
NormConstResult assemble(const std::complex<double>& raw, std::size_t p,
                         double t0, double shift) {
  double re = raw.real();
  double im = raw.imag();
  double resid = re != 0.0 ? std::abs(im / re)
                           : std::numeric_limits<double>::infinity();
  if (!(re > 0.0)) {
    throw AccuracyError(
        "quadrature sum has non-positive real part; increase N or d", resid);
  }
  if (!(resid < kResidualGate)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", resid);
    throw AccuracyError(std::string("imaginary residual ") + buf +
                            " exceeds the 1e-8 accuracy gate; increase N or d",
                        resid);
  }
  NormConstResult out;
  out.imag_residual = resid;
  out.log_value = (0.5 * static_cast<double>(p) - 1.0) * std::log(kPi) - t0 -
                  shift + std::log(re);
  out.value = std::exp(out.log_value);
  return out;
}

struct RawSums {
  std::complex<double> value{0.0, 0.0};
  std::vector<std::complex<double>> dtheta;
  std::vector<std::complex<double>> dgamma;
};

inline void kahan_add(std::complex<double>& sum, std::complex<double>& comp,
                      const std::complex<double>& v) {
  std::complex<double> y = v - comp;
  std::complex<double> s = sum + y;
  comp = (s - sum) - y;
  sum = s;
}

// One pass over the grid evaluating A(t) e^{-it} and, when requested, the
// per-coordinate derivative factors, sharing the integrand value across
// all 2p partial sums.
RawSums fused_quadrature(const CanonicalParams& cp,
                         const ContourConfig& contour,
                         const EulerConfig& quad, bool want_grad) {
  const std::size_t p = cp.p();
  RawSums out;
  std::complex<double> comp_value(0.0, 0.0);
  std::vector<std::complex<double>> fac_theta, fac_gamma, comp_th, comp_gm;
  if (want_grad) {
    out.dtheta.assign(p, {0.0, 0.0});
    out.dgamma.assign(p, {0.0, 0.0});
    fac_theta.resize(p);
    fac_gamma.resize(p);
    comp_th.assign(p, {0.0, 0.0});
    comp_gm.assign(p, {0.0, 0.0});
  }

  for (long n = -quad.N - 1; n <= quad.N; ++n) {
    double t = static_cast<double>(n) * quad.h;
    double w = euler_weight(std::abs(t), quad);
    std::complex<double> log_a(0.0, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
      std::complex<double> z(cp.theta[i] - contour.t0, -t);
      double g = cp.gamma[i];
      log_a += g * g / (4.0 * z) - 0.5 * std::log(z);
      if (want_grad) {
        fac_theta[i] = -g * g / (4.0 * z * z) - 0.5 / z;
        fac_gamma[i] = g / (2.0 * z);
      }
    }
    std::complex<double> a =
        std::exp(log_a + std::complex<double>(0.0, -t)) * w;
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw NumericalError(
          "non-finite integrand value at node n=" + std::to_string(n), n);
    }
    kahan_add(out.value, comp_value, a);
    if (want_grad) {
      for (std::size_t i = 0; i < p; ++i) {
        kahan_add(out.dtheta[i], comp_th[i], a * fac_theta[i]);
        kahan_add(out.dgamma[i], comp_gm[i], a * fac_gamma[i]);
      }
    }
  }

  out.value *= quad.h;
  for (auto& s : out.dtheta) s *= quad.h;
  for (auto& s : out.dgamma) s *= quad.h;
  return out;
}

}  // namespace

EulerConfig auto_quadrature(const CanonicalParams& params) {
  validate_params(params);
  double s2 = 0.0;
  for (double g : params.gamma) s2 += g * g;
  double s_quant = quantize_gamma_norm(std::sqrt(s2));
  double p = static_cast<double>(params.p());

  // With omega_d = 1, omega_u = 2 the derived step is h = sqrt(6 pi d / N)
  // and the first alias image sits at x* = 2 pi / h - 1; grow d until the
  // modeled tail x*^{p/2} exp(-d x* + ||gamma|| sqrt(x*)) is negligible.
  double d = 1.0;
  long n_points = 200;
  for (;;) {
    n_points = std::max<long>(
        200, static_cast<long>(std::ceil(24.0 * d / kPi)) + 20);
    double h = std::sqrt(6.0 * kPi * d / static_cast<double>(n_points));
    double xs = 2.0 * kPi / h - 1.0;
    double log_err = -d * xs + s_quant * std::sqrt(xs) + 0.5 * p * std::log(xs);
    if (log_err <= kErrTarget || d >= 128.0) break;
    d *= 1.25;
  }
  return derive_quadrature(n_points, 1.0, 2.0, d);
}

NormConstResult norm_const(const CanonicalParams& params,
                           const std::optional<EulerConfig>& quad) {
  validate_params(params);
  ShiftNormalized sn = shift_normalize(params);
  EulerConfig cfg = quad ? *quad : auto_quadrature(sn.params);
  ContourConfig contour = select_contour(sn.params.theta, cfg.d);
  const CanonicalParams& cp = sn.params;
  std::complex<double> raw = weighted_oscillatory_sum(
      [&](double t) {
        return std::exp(detail::log_integrand(t, cp, contour) +
                        std::complex<double>(0.0, -t));
      },
      cfg);
  return assemble(raw, cp.p(), contour.t0, sn.shift);
}

namespace detail {

NormConstLogGradient norm_const_fused(const CanonicalParams& params,
                                      const EulerConfig& quad,
                                      bool want_grad) {
  validate_params(params, 1);
  ShiftNormalized sn = shift_normalize(params);
  ContourConfig contour = select_contour(sn.params.theta, quad.d);
  RawSums sums = fused_quadrature(sn.params, contour, quad, want_grad);

  NormConstLogGradient out;
  out.result = assemble(sums.value, sn.params.p(), contour.t0, sn.shift);
  if (want_grad) {
    double re = sums.value.real();
    out.dlog_theta.resize(sn.params.p());
    out.dlog_gamma.resize(sn.params.p());
    for (std::size_t i = 0; i < sn.params.p(); ++i) {
      out.dlog_theta[i] = sums.dtheta[i].real() / re;
      // Sign flips applied by shift_normalize map back onto the gamma
      // gradient; the theta shift cancels in the C ratios.
      out.dlog_gamma[i] = sn.sign_flips[i] * sums.dgamma[i].real() / re;
    }
  }
  return out;
}

}  // namespace detail

NormConstLogGradient norm_const_log_grad(
    const CanonicalParams& params, const std::optional<EulerConfig>& quad) {
  validate_params(params);
  EulerConfig cfg = quad ? *quad : auto_quadrature(params);
  return detail::norm_const_fused(params, cfg, true);
}

NormConstGradient norm_const_grad(const CanonicalParams& params,
                                  const std::optional<EulerConfig>& quad) {
  NormConstLogGradient lg = norm_const_log_grad(params, quad);
  NormConstGradient out;
  out.dtheta.resize(lg.dlog_theta.size());
  out.dgamma.resize(lg.dlog_gamma.size());
  for (std::size_t i = 0; i < lg.dlog_theta.size(); ++i) {
    out.dtheta[i] = lg.result.value * lg.dlog_theta[i];
    out.dgamma[i] = lg.result.value * lg.dlog_gamma[i];
  }
  return out;
}

Moments moments(const CanonicalParams& params,
                const std::optional<EulerConfig>& quad) {
  NormConstLogGradient lg = norm_const_log_grad(params, quad);
  Moments out;
  out.mean = lg.dlog_gamma;
  out.second.resize(lg.dlog_theta.size());
  for (std::size_t i = 0; i < lg.dlog_theta.size(); ++i) {
    out.second[i] = -lg.dlog_theta[i];
  }
  return out;
}

}  // namespace fbnorm
