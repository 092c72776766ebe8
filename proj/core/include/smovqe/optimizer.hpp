#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "smovqe/ansatz.hpp"
#include "smovqe/measurement.hpp"
#include "smovqe/pauli.hpp"
#include "smovqe/statevector.hpp"
#include "smovqe/trig_fit.hpp"

namespace smovqe {

enum class Strategy {
  Biased,       // reuse the fitted minimum as-is
  Stabilized,   // re-measure the reused point every N_p iterations
  Corrected,    // add the analytic bias correction to every fitted minimum
  Regularized,  // corrected, then lowered by r(t) before fitting; r removed afterwards
};

Strategy parse_strategy(std::string_view name);
std::string_view strategy_name(Strategy s);

struct StrategyConfig {
  Strategy variant = Strategy::Biased;
  std::uint64_t stabilization_period = 32;
  double tau = 2.0;
  double snr_threshold = kDefaultSnrThreshold;
  // Output label; defaults to the variant name.
  std::string label;

  std::string name() const { return label.empty() ? std::string(strategy_name(variant)) : label; }
  void validate() const;
};

struct OptimizerState {
  ParameterVector theta;
  // Energy estimate at theta as the strategy reports it (bias-corrected for
  // Corrected and Regularized).
  double carried_estimate = 0.0;
  bool carried_is_measured = false;
  std::uint64_t t = 0;            // completed iterations
  std::uint64_t total_steps = 0;  // T = D * N_sweeps
  ShotBudgetLedger ledger;

  std::size_t direction() const { return static_cast<std::size_t>(t % theta.size()); }
  bool finished() const { return t >= total_steps; }
};

struct IterationRecord {
  std::uint64_t t = 0;  // iteration number, 1..T
  std::size_t d = 0;    // direction updated in this iteration
  double carried_estimate = 0.0;
  double true_energy = 0.0;
  double regularization_r = 0.0;
  double bias_correction_applied = 0.0;
  std::uint64_t cumulative_shots = 0;
};

struct StepResult {
  OptimizerState state;
  IterationRecord record;
  Statevector psi;  // state prepared by the updated parameters
};

/// Regularization strength e^tau / N_pp * sqrt(t / n_q) * (1 - exp(-2 t / T)).
double regularization_strength(std::uint64_t t, std::uint64_t total_steps, std::size_t num_qubits,
                               std::uint64_t shots_per_pauli, double tau);

/// Draws theta uniformly on the torus and measures the starting energy.
OptimizerState initial_state(const Hamiltonian& h, const AnsatzSpec& ansatz, const Sampler& sampler,
                             std::uint64_t total_steps, Rng& rng);

/// One SMO iteration along direction t mod D. Throws Error once t == T.
StepResult smo_step(OptimizerState state, const Hamiltonian& h, const AnsatzSpec& ansatz,
                    const StrategyConfig& strategy, const Sampler& sampler, Rng& rng);

struct Trajectory {
  std::vector<IterationRecord> records;
  OptimizerState final_state;
  double initial_true_energy = 0.0;
};

using IterationObserver = std::function<void(const IterationRecord&, const Statevector&)>;

/// Random stream for an optimization run; all strategies sharing a seed start
/// from the same parameters.
Rng make_rng(std::uint64_t seed);

/// Runs exactly D * n_sweeps iterations. `observer`, if set, sees every
/// record together with the state it refers to.
Trajectory run_optimization(const Hamiltonian& h, const AnsatzSpec& ansatz, const StrategyConfig& strategy,
                            const Sampler& sampler, std::uint64_t n_sweeps, std::uint64_t seed,
                            const IterationObserver& observer = {});

}  // namespace smovqe
