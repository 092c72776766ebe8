#include "smovqe/trig_fit.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "smovqe/ansatz.hpp"
#include "smovqe/error.hpp"

namespace smovqe {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
const double kSqrt6 = std::sqrt(6.0);

void check_variance(double sigma_sq) {
  if (!(sigma_sq >= 0.0)) throw InvalidInputError("noise variance must be nonnegative");
}

}  // namespace

double TrigFit::evaluate(double x) const { return b1 + kSqrt2 * (b2 * std::cos(x) + b3 * std::sin(x)); }

TrigFit trig_fit_from_coefficients(double b1, double b2, double b3, double sigma_b_sq) {
  TrigFit fit;
  fit.b1 = b1;
  fit.b2 = b2;
  fit.b3 = b3;
  fit.sigma_b_sq = sigma_b_sq;
  fit.amplitude = std::sqrt(2.0 * b2 * b2 + 2.0 * b3 * b3);
  fit.theta_min = minimizer(fit);
  fit.f_min = b1 - fit.amplitude;
  return fit;
}

TrigFit fit_trig(double f0, double f_plus, double f_minus, double sigma_sq) {
  check_variance(sigma_sq);
  const double b1 = (f0 + f_plus + f_minus) / 3.0;
  const double b2 = (kSqrt2 / 3.0) * (f0 - 0.5 * (f_plus + f_minus));
  const double b3 = (f_plus - f_minus) / kSqrt6;
  return trig_fit_from_coefficients(b1, b2, b3, sigma_sq / 3.0);
}

double minimizer(const TrigFit& fit) {
  // std::atan2(0, 0) is 0, so a flat fit lands on pi.
  return reduce_angle(std::atan2(fit.b3, fit.b2) + std::numbers::pi);
}

BiasEstimate bias_estimate(const TrigFit& fit, double snr_threshold) {
  if (!(snr_threshold > 0.0)) throw InvalidInputError("SNR threshold must be positive");
  BiasEstimate est;
  if (fit.sigma_b_sq == 0.0) {
    est.snr = std::numeric_limits<double>::infinity();
    return est;
  }
  const double sigma_b = std::sqrt(fit.sigma_b_sq);
  est.snr = fit.amplitude / sigma_b;
  if (est.snr >= snr_threshold) {
    est.delta_f_bar = -2.0 * fit.sigma_b_sq / fit.amplitude;
  } else {
    est.regime = SnrRegime::Low;
    const double clamp = 2.0 * sigma_b;
    est.delta_f_bar = fit.amplitude > 0.0 ? -std::min(2.0 * fit.sigma_b_sq / fit.amplitude, clamp) : -clamp;
  }
  return est;
}

CoefficientShift propagate_offset(double offset) {
  return {offset / 3.0, kSqrt2 * offset / 3.0, 0.0};
}

TrigFit remove_shift(const TrigFit& fit, const CoefficientShift& shift) {
  return trig_fit_from_coefficients(fit.b1 - shift.b1, fit.b2 - shift.b2, fit.b3 - shift.b3, fit.sigma_b_sq);
}

double GeneralTrigFit::evaluate(double x) const {
  double s = 0.0;
  for (std::size_t n = 1; n <= order; ++n) {
    const double nx = static_cast<double>(n) * x;
    s += cos_coeffs[n - 1] * std::cos(nx) + sin_coeffs[n - 1] * std::sin(nx);
  }
  return b1 + kSqrt2 * s;
}

double GeneralTrigFit::derivative(double x) const {
  double s = 0.0;
  for (std::size_t n = 1; n <= order; ++n) {
    const double k = static_cast<double>(n);
    s += k * (-cos_coeffs[n - 1] * std::sin(k * x) + sin_coeffs[n - 1] * std::cos(k * x));
  }
  return kSqrt2 * s;
}

double GeneralTrigFit::second_derivative(double x) const {
  double s = 0.0;
  for (std::size_t n = 1; n <= order; ++n) {
    const double k = static_cast<double>(n);
    s -= k * k * (cos_coeffs[n - 1] * std::cos(k * x) + sin_coeffs[n - 1] * std::sin(k * x));
  }
  return kSqrt2 * s;
}

double GeneralTrigFit::minimizer() const {
  const std::size_t grid = 64 * (order + 1);
  double best_x = 0.0;
  double best_f = evaluate(0.0);
  for (std::size_t i = 1; i < grid; ++i) {
    const double x = kTwoPi * static_cast<double>(i) / static_cast<double>(grid);
    const double f = evaluate(x);
    if (f < best_f) {
      best_f = f;
      best_x = x;
    }
  }
  const double half_step = std::numbers::pi / static_cast<double>(grid);
  double x = best_x;
  for (int it = 0; it < 20; ++it) {
    const double curv = second_derivative(x);
    if (!(curv > 0.0)) break;
    const double step = derivative(x) / curv;
    const double next = x - step;
    if (std::abs(next - best_x) > half_step) break;
    x = next;
    if (std::abs(step) < 1e-15) break;
  }
  return reduce_angle(x);
}

GeneralTrigFit fit_trig_general(std::span<const double> values, std::size_t order, double sigma_sq) {
  if (order == 0) throw InvalidInputError("harmonic order must be positive");
  const std::size_t m = 2 * order + 1;
  if (values.size() != m) {
    throw DimensionError("order " + std::to_string(order) + " fit needs " + std::to_string(m) +
                         " values, got " + std::to_string(values.size()));
  }
  check_variance(sigma_sq);

  // Rows of the design matrix are orthogonal with squared norm M, so the
  // least-squares solution is Phi f / M.
  GeneralTrigFit fit;
  fit.order = order;
  fit.cos_coeffs.assign(order, 0.0);
  fit.sin_coeffs.assign(order, 0.0);
  const double md = static_cast<double>(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double x = kTwoPi * static_cast<double>(j) / md;
    fit.b1 += values[j];
    for (std::size_t n = 1; n <= order; ++n) {
      const double nx = static_cast<double>(n) * x;
      fit.cos_coeffs[n - 1] += kSqrt2 * std::cos(nx) * values[j];
      fit.sin_coeffs[n - 1] += kSqrt2 * std::sin(nx) * values[j];
    }
  }
  fit.b1 /= md;
  for (std::size_t n = 0; n < order; ++n) {
    fit.cos_coeffs[n] /= md;
    fit.sin_coeffs[n] /= md;
  }
  fit.sigma_b_sq = sigma_sq / md;
  return fit;
}

double bias_estimate_general(const GeneralTrigFit& fit, double curvature) {
  if (!(curvature > 0.0)) throw InvalidInputError("curvature proxy must be positive");
  const double n = static_cast<double>(fit.order);
  const double sum_sq = n * (n + 1.0) * (2.0 * n + 1.0) / 6.0;
  return -(2.0 * fit.sigma_b_sq / curvature) * sum_sq;
}

}  // namespace smovqe
