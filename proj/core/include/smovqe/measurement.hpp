#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "smovqe/pauli.hpp"
#include "smovqe/statevector.hpp"

namespace smovqe {

using Rng = std::mt19937_64;

/// One finite- or infinite-shot energy evaluation.
struct EnergyMeasurement {
  double value = 0.0;
  // Estimated variance of `value` (zero in infinite-shot mode).
  double variance = 0.0;
  std::uint64_t shots_total = 0;
  std::uint64_t shots_per_pauli = 0;

  bool finite_shot() const noexcept { return shots_per_pauli > 0; }
};

struct ShotBudgetLedger {
  std::uint64_t cumulative_shots = 0;
  std::uint64_t cumulative_evaluations = 0;

  void record(const EnergyMeasurement& m) {
    cumulative_shots += m.shots_total;
    ++cumulative_evaluations;
  }
};

/// Samples every Pauli term independently with `shots_per_pauli` shots.
/// The per-term outcome count is binomial; the reported variance sums the
/// unbiased (N-1) sample variances of the +-1 outcomes. Requires N >= 2.
EnergyMeasurement measure_energy(const Hamiltonian& h, const Statevector& psi,
                                 std::uint64_t shots_per_pauli, Rng& rng);

/// Exact energy plus Gaussian noise with the analytic per-term variance
/// sum_k c_k^2 (1 - p_k^2) / N. Reports that analytic variance.
EnergyMeasurement measure_energy_gaussian(const Hamiltonian& h, const Statevector& psi,
                                          std::uint64_t shots_per_pauli, Rng& rng);

EnergyMeasurement measure_energy_infinite(const Hamiltonian& h, const Statevector& psi);

/// sum_k c_k^2 (1 - p_k^2) / N: the exact variance of a finite-shot estimate.
double analytic_shot_variance(const Hamiltonian& h, const Statevector& psi, std::uint64_t shots_per_pauli);

/// Average of the two shifted-point variances, used as the homoscedastic
/// noise level of a one-dimensional fit.
double pooled_subspace_variance(const EnergyMeasurement& plus, const EnergyMeasurement& minus);

enum class NoiseModel { Binomial, Gaussian, Exact };

NoiseModel parse_noise_model(std::string_view name);
std::string_view noise_model_name(NoiseModel model);

/// Measurement policy shared by every evaluation of an optimization run.
struct Sampler {
  NoiseModel model = NoiseModel::Binomial;
  std::uint64_t shots_per_pauli = 100;

  static Sampler exact() { return {NoiseModel::Exact, 0}; }
  bool noiseless() const noexcept { return model == NoiseModel::Exact; }

  EnergyMeasurement measure(const Hamiltonian& h, const Statevector& psi, Rng& rng) const;
};

}  // namespace smovqe
