#include "smovqe/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smovqe/error.hpp"

namespace smovqe {

namespace {

void check_dims(const Hamiltonian& h, const Statevector& psi) {
  if (h.num_qubits() != psi.num_qubits()) {
    throw DimensionError("Hamiltonian acts on " + std::to_string(h.num_qubits()) +
                         " qubits but state has " + std::to_string(psi.num_qubits()));
  }
}

double clamp_unit(double p) { return std::clamp(p, -1.0, 1.0); }

}  // namespace

EnergyMeasurement measure_energy(const Hamiltonian& h, const Statevector& psi,
                                 std::uint64_t shots_per_pauli, Rng& rng) {
  check_dims(h, psi);
  if (shots_per_pauli == 0) throw BudgetError("shots_per_pauli must be positive");
  if (shots_per_pauli == 1) throw BudgetError("shots_per_pauli = 1 leaves the sample variance undefined");

  const double n = static_cast<double>(shots_per_pauli);
  EnergyMeasurement m;
  m.shots_per_pauli = shots_per_pauli;
  m.shots_total = shots_per_pauli * h.num_terms();
  for (const auto& term : h.terms()) {
    const double c = term.coefficient();
    if (term.is_identity()) {
      m.value += c;
      continue;
    }
    const double p = clamp_unit(pauli_expectation(term, psi));
    std::binomial_distribution<std::uint64_t> draw(shots_per_pauli, std::clamp(0.5 * (1.0 + p), 0.0, 1.0));
    const double p_hat = 2.0 * static_cast<double>(draw(rng)) / n - 1.0;
    m.value += c * p_hat;
    // s^2 = (1 - p_hat^2) N / (N - 1); Var[c * p_hat] estimate = c^2 s^2 / N.
    m.variance += c * c * (1.0 - p_hat * p_hat) / (n - 1.0);
  }
  return m;
}

double analytic_shot_variance(const Hamiltonian& h, const Statevector& psi, std::uint64_t shots_per_pauli) {
  check_dims(h, psi);
  if (shots_per_pauli == 0) throw BudgetError("shots_per_pauli must be positive");
  double var = 0.0;
  for (const auto& term : h.terms()) {
    if (term.is_identity()) continue;
    const double p = clamp_unit(pauli_expectation(term, psi));
    var += term.coefficient() * term.coefficient() * (1.0 - p * p);
  }
  return var / static_cast<double>(shots_per_pauli);
}

EnergyMeasurement measure_energy_gaussian(const Hamiltonian& h, const Statevector& psi,
                                          std::uint64_t shots_per_pauli, Rng& rng) {
  const double var = analytic_shot_variance(h, psi, shots_per_pauli);
  std::normal_distribution<double> noise(0.0, 1.0);
  EnergyMeasurement m;
  m.value = exact_expectation(h, psi) + std::sqrt(var) * noise(rng);
  m.variance = var;
  m.shots_per_pauli = shots_per_pauli;
  m.shots_total = shots_per_pauli * h.num_terms();
  return m;
}

EnergyMeasurement measure_energy_infinite(const Hamiltonian& h, const Statevector& psi) {
  check_dims(h, psi);
  EnergyMeasurement m;
  m.value = exact_expectation(h, psi);
  return m;
}

double pooled_subspace_variance(const EnergyMeasurement& plus, const EnergyMeasurement& minus) {
  if (plus.finite_shot() != minus.finite_shot()) {
    throw ModeError("cannot pool a finite-shot and an infinite-shot measurement");
  }
  if (plus.shots_per_pauli != minus.shots_per_pauli) {
    throw ModeError("cannot pool measurements with different shots per Pauli term");
  }
  return 0.5 * (plus.variance + minus.variance);
}

NoiseModel parse_noise_model(std::string_view name) {
  if (name == "binomial") return NoiseModel::Binomial;
  if (name == "gaussian") return NoiseModel::Gaussian;
  if (name == "exact" || name == "infinite") return NoiseModel::Exact;
  throw InvalidSpecError("unknown noise model '" + std::string(name) + "'");
}

std::string_view noise_model_name(NoiseModel model) {
  switch (model) {
    case NoiseModel::Binomial: return "binomial";
    case NoiseModel::Gaussian: return "gaussian";
    case NoiseModel::Exact: return "exact";
  }
  return "unknown";
}

EnergyMeasurement Sampler::measure(const Hamiltonian& h, const Statevector& psi, Rng& rng) const {
  switch (model) {
    case NoiseModel::Binomial: return measure_energy(h, psi, shots_per_pauli, rng);
    case NoiseModel::Gaussian: return measure_energy_gaussian(h, psi, shots_per_pauli, rng);
    case NoiseModel::Exact: return measure_energy_infinite(h, psi);
  }
  throw ModeError("unknown noise model");
}

}  // namespace smovqe
