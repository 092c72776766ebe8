#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace smovqe {

/// Sampling offset of the two fresh evaluations around the reused point.
inline constexpr double kShift = 2.0 * std::numbers::pi / 3.0;

/// Least-squares fit of f(x) = b1 + sqrt(2) (b2 cos x + b3 sin x) in a local
/// frame where the reused point sits at x = 0 and the fresh evaluations at
/// x = +-2pi/3.
struct TrigFit {
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;
  double sigma_b_sq = 0.0;
  double amplitude = 0.0;  // sqrt(2 b2^2 + 2 b3^2)
  double theta_min = 0.0;  // local-frame minimizer in [0, 2pi)
  double f_min = 0.0;      // b1 - amplitude

  double evaluate(double x) const;
};

/// Builds a fit (with derived amplitude, minimizer, minimum) from coefficients.
TrigFit trig_fit_from_coefficients(double b1, double b2, double b3, double sigma_b_sq);

/// Fit from the reused value f0 and the two shifted evaluations. `sigma_sq`
/// is the per-evaluation noise variance; the coefficient variance is a third
/// of it because the equidistant design has orthogonal rows.
TrigFit fit_trig(double f0, double f_plus, double f_minus, double sigma_sq);

/// atan2(b3, b2) + pi, reduced to [0, 2pi). A flat fit returns pi.
double minimizer(const TrigFit& fit);

enum class SnrRegime { High, Low };

struct BiasEstimate {
  // Leading-order bias of the fitted minimum, -2 sigma_b^2 / R. Never positive.
  double delta_f_bar = 0.0;
  double snr = 0.0;  // R / sigma_b; +inf when noiseless
  SnrRegime regime = SnrRegime::High;

  /// Amount to add to the fitted minimum to remove the bias.
  double correction() const noexcept { return -delta_f_bar; }
};

inline constexpr double kDefaultSnrThreshold = 1.0;

/// Below `snr_threshold` the first-order formula is unreliable, so the
/// magnitude is clamped at 2 sigma_b (R treated as at least sigma_b).
BiasEstimate bias_estimate(const TrigFit& fit, double snr_threshold = kDefaultSnrThreshold);

/// Change of (b1, b2, b3) when only the reused value is shifted by `offset`.
struct CoefficientShift {
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;
};

CoefficientShift propagate_offset(double offset);

/// Fit obtained by subtracting `shift` from the coefficients of `fit`.
TrigFit remove_shift(const TrigFit& fit, const CoefficientShift& shift);

/// Order-N trigonometric fit over 2N+1 equidistant samples in the basis
/// {1, sqrt(2) cos(n x), sqrt(2) sin(n x)}.
struct GeneralTrigFit {
  std::size_t order = 0;
  double b1 = 0.0;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;
  double sigma_b_sq = 0.0;

  double evaluate(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;
  /// Global minimizer in [0, 2pi): dense scan followed by Newton polishing.
  double minimizer() const;
};

/// `values[j]` is sampled at offset 2 pi j / (2N+1) from the reused point.
GeneralTrigFit fit_trig_general(std::span<const double> values, std::size_t order, double sigma_sq);

/// -(2 sigma_b^2 / curvature) * sum_{n<=N} n^2, where `curvature` stands in
/// for the second derivative at the true minimizer.
double bias_estimate_general(const GeneralTrigFit& fit, double curvature);

}  // namespace smovqe
