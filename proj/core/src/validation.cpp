#include "smovqe/validation.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "smovqe/ansatz.hpp"
#include "smovqe/measurement.hpp"
#include "smovqe/pauli.hpp"
#include "smovqe/trig_fit.hpp"

namespace smovqe {

namespace {

std::string describe(double measured, double expected, double tol) {
  std::ostringstream os;
  os.precision(6);
  os << "measured " << measured << ", expected " << expected << ", tolerance " << tol;
  return os.str();
}

ValidationCheck relative_check(std::string name, double measured, double expected, double rel_tol) {
  ValidationCheck c;
  c.name = std::move(name);
  c.measured = measured;
  c.expected = expected;
  c.passed = std::abs(measured - expected) <= rel_tol * std::abs(expected);
  c.detail = describe(measured, expected, rel_tol * std::abs(expected));
  return c;
}

// Landscape f(x) = cos x (b = (0, 1/sqrt 2, 0), amplitude 1, minimum at pi).
double unit_cosine(double x) { return std::cos(x); }

// E[f*(x_hat) - f_hat(x_hat)] at R* = 1 and the given SNR. Adding
// f_hat(x*) - f*(x*), which has zero mean at the fixed angle x* = pi,
// removes the first-order noise and leaves the expectation unchanged.
double mc_first_order_bias(double snr, std::uint64_t trials, Rng& rng) {
  const double sigma_b = 1.0 / snr;
  std::normal_distribution<double> noise(0.0, std::sqrt(3.0) * sigma_b);
  double acc = 0.0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const double f0 = unit_cosine(0.0) + noise(rng);
    const double fp = unit_cosine(kShift) + noise(rng);
    const double fm = unit_cosine(-kShift) + noise(rng);
    const TrigFit fit = fit_trig(f0, fp, fm, 3.0 * sigma_b * sigma_b);
    acc += unit_cosine(fit.theta_min) - fit.f_min + fit.evaluate(std::numbers::pi) - unit_cosine(std::numbers::pi);
  }
  return acc / static_cast<double>(trials);
}

}  // namespace

std::vector<ValidationCheck> run_validation_suite(const ValidationOptions& options) {
  std::vector<ValidationCheck> checks;
  Rng rng(options.seed);
  const std::uint64_t n = options.trials;
  const double nd = static_cast<double>(n);

  {
    const double sigma = 0.1;
    std::normal_distribution<double> noise(0.0, sigma);
    double s2 = 0, s3 = 0, s22 = 0, s33 = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      const TrigFit fit = fit_trig(1.0 + noise(rng), noise(rng), noise(rng), sigma * sigma);
      s2 += fit.b2;
      s3 += fit.b3;
      s22 += fit.b2 * fit.b2;
      s33 += fit.b3 * fit.b3;
    }
    const double target = sigma * sigma / 3.0;
    const double v2 = (s22 - s2 * s2 / nd) / (nd - 1.0);
    const double v3 = (s33 - s3 * s3 / nd) / (nd - 1.0);
    checks.push_back(relative_check("coefficient variance b2 = sigma^2/3", v2, target, 0.03));
    checks.push_back(relative_check("coefficient variance b3 = sigma^2/3", v3, target, 0.03));
  }

  for (const auto& [snr, tol] : {std::pair{5.0, 0.30}, std::pair{10.0, 0.10}, std::pair{20.0, 0.10}}) {
    const double measured = mc_first_order_bias(snr, n, rng);
    std::ostringstream name;
    name << "first-order bias 2 R xi^-2 at xi = " << snr;
    checks.push_back(relative_check(name.str(), measured, 2.0 / (snr * snr), tol));
  }

  {
    // f*(x) = cos x - cos(2x)/4: global minimum at pi with curvature 2.
    auto truth = [](double x) { return std::cos(x) - 0.25 * std::cos(2.0 * x); };
    const double curvature = 2.0;
    const double sigma_b = curvature / 20.0;
    std::normal_distribution<double> noise(0.0, std::sqrt(5.0) * sigma_b);
    double acc = 0.0;
    double formula = 0.0;
    std::vector<double> values(5);
    for (std::uint64_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < 5; ++j) values[j] = truth(kTwoPi * static_cast<double>(j) / 5.0) + noise(rng);
      const GeneralTrigFit fit = fit_trig_general(values, 2, 5.0 * sigma_b * sigma_b);
      const double x = fit.minimizer();
      acc += truth(x) - fit.evaluate(x) + fit.evaluate(std::numbers::pi) - truth(std::numbers::pi);
      if (i == 0) formula = -bias_estimate_general(fit, curvature);
    }
    checks.push_back(relative_check("order-2 harmonic bias (2 sigma_b^2/R) * 5 at xi = 20", acc / nd, formula, 0.15));
  }

  {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double f0 = u(rng), fp = u(rng), fm = u(rng), off = u(rng);
      const TrigFit a = fit_trig(f0 + off, fp, fm, 0.0);
      const TrigFit b = fit_trig(f0, fp, fm, 0.0);
      const CoefficientShift s = propagate_offset(off);
      worst = std::max({worst, std::abs(a.b1 - b.b1 - s.b1), std::abs(a.b2 - b.b2 - s.b2), std::abs(a.b3 - b.b3)});
    }
    ValidationCheck c;
    c.name = "offset propagation (d/3, sqrt2 d/3, 0)";
    c.measured = worst;
    c.expected = 0.0;
    c.passed = worst <= 1e-12;
    c.detail = describe(worst, 0.0, 1e-12);
    checks.push_back(c);
  }

  {
    const Hamiltonian h = build_hamiltonian(Model::TFIM, 3, {});
    std::vector<Complex> amps(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& a : amps) a = {u(rng), u(rng)};
    Statevector psi(3, amps);
    psi.normalize();
    auto empirical_variance = [&](std::uint64_t shots) {
      double s = 0, ss = 0;
      for (std::uint64_t i = 0; i < n; ++i) {
        const double v = measure_energy(h, psi, shots, rng).value;
        s += v;
        ss += v * v;
      }
      return (ss - s * s / nd) / (nd - 1.0);
    };
    const double ratio = empirical_variance(100) / empirical_variance(200);
    checks.push_back(relative_check("shot variance halves when shots double", ratio, 2.0, 0.05));
  }
  return checks;
}

}  // namespace smovqe
