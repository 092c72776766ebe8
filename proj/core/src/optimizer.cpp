#include "smovqe/optimizer.hpp"

#include <cmath>
#include <string>

#include "smovqe/error.hpp"

namespace smovqe {

namespace {

// Value at x of the curve change induced by a coefficient shift.
double shift_at(const CoefficientShift& s, double x) {
  return s.b1 + std::numbers::sqrt2 * (s.b2 * std::cos(x) + s.b3 * std::sin(x));
}

}  // namespace

Strategy parse_strategy(std::string_view name) {
  if (name == "biased") return Strategy::Biased;
  if (name == "stabilized") return Strategy::Stabilized;
  if (name == "corrected") return Strategy::Corrected;
  if (name == "regularized") return Strategy::Regularized;
  throw InvalidSpecError("unknown strategy '" + std::string(name) + "'");
}

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Biased: return "biased";
    case Strategy::Stabilized: return "stabilized";
    case Strategy::Corrected: return "corrected";
    case Strategy::Regularized: return "regularized";
  }
  return "unknown";
}

void StrategyConfig::validate() const {
  if (stabilization_period == 0) throw InvalidSpecError("stabilization period must be >= 1");
  if (!(snr_threshold > 0.0)) throw InvalidSpecError("SNR threshold must be positive");
  if (!std::isfinite(tau)) throw InvalidSpecError("tau must be finite");
}

double regularization_strength(std::uint64_t t, std::uint64_t total_steps, std::size_t num_qubits,
                               std::uint64_t shots_per_pauli, double tau) {
  if (total_steps == 0) throw InvalidInputError("total step count must be positive");
  if (num_qubits == 0) throw InvalidInputError("qubit count must be positive");
  if (shots_per_pauli == 0) throw InvalidInputError("shots per Pauli term must be positive");
  const double td = static_cast<double>(t);
  return std::exp(tau) / static_cast<double>(shots_per_pauli) *
         std::sqrt(td / static_cast<double>(num_qubits)) *
         (1.0 - std::exp(-2.0 * td / static_cast<double>(total_steps)));
}

OptimizerState initial_state(const Hamiltonian& h, const AnsatzSpec& ansatz, const Sampler& sampler,
                             std::uint64_t total_steps, Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::vector<double> values(ansatz.num_parameters());
  for (auto& v : values) v = angle(rng);

  OptimizerState state;
  state.theta = ParameterVector(std::move(values));
  state.total_steps = total_steps;
  const auto m = sampler.measure(h, apply_ansatz(ansatz, state.theta), rng);
  state.ledger.record(m);
  state.carried_estimate = m.value;
  state.carried_is_measured = true;
  return state;
}

StepResult smo_step(OptimizerState state, const Hamiltonian& h, const AnsatzSpec& ansatz,
                    const StrategyConfig& strategy, const Sampler& sampler, Rng& rng) {
  if (state.finished()) throw Error("optimization already completed all iterations");
  if (state.theta.size() != ansatz.num_parameters()) throw DimensionError("parameter vector does not match ansatz");

  const std::uint64_t k = state.t + 1;
  const std::size_t d = state.direction();

  const auto m_plus = sampler.measure(h, apply_ansatz(ansatz, state.theta.shifted(d, kShift)), rng);
  const auto m_minus = sampler.measure(h, apply_ansatz(ansatz, state.theta.shifted(d, -kShift)), rng);
  state.ledger.record(m_plus);
  state.ledger.record(m_minus);

  double reused = state.carried_estimate;
  double r = 0.0;
  switch (strategy.variant) {
    case Strategy::Stabilized:
      // A noiseless carried value is already exact; there is nothing to re-anchor.
      if (!sampler.noiseless() && k % strategy.stabilization_period == 0) {
        const auto m0 = sampler.measure(h, apply_ansatz(ansatz, state.theta), rng);
        state.ledger.record(m0);
        reused = m0.value;
      }
      break;
    case Strategy::Regularized:
      if (!sampler.noiseless()) {
        r = regularization_strength(k, state.total_steps, ansatz.num_qubits(), sampler.shots_per_pauli,
                                    strategy.tau);
      }
      reused -= r;
      break;
    case Strategy::Biased:
    case Strategy::Corrected:
      break;
  }

  const double sigma_sq = pooled_subspace_variance(m_plus, m_minus);
  const TrigFit fit = fit_trig(reused, m_plus.value, m_minus.value, sigma_sq);
  state.theta.set(d, state.theta[d] + fit.theta_min);

  double correction = 0.0;
  switch (strategy.variant) {
    case Strategy::Biased:
    case Strategy::Stabilized:
      state.carried_estimate = fit.f_min;
      break;
    case Strategy::Corrected:
      correction = bias_estimate(fit, strategy.snr_threshold).correction();
      state.carried_estimate = fit.f_min + correction;
      break;
    case Strategy::Regularized: {
      // The injected -r is a known offset on the reused value: undo it on the
      // coefficients and read the de-regularized curve at the point we moved to.
      // The selection bias of that point follows the regularized curvature.
      const double deregularized = fit.f_min - shift_at(propagate_offset(-r), fit.theta_min);
      correction = bias_estimate(fit, strategy.snr_threshold).correction();
      state.carried_estimate = deregularized + correction;
      break;
    }
  }
  state.carried_is_measured = false;
  state.t = k;

  Statevector psi = apply_ansatz(ansatz, state.theta);
  IterationRecord rec;
  rec.t = k;
  rec.d = d;
  rec.carried_estimate = state.carried_estimate;
  rec.true_energy = exact_expectation(h, psi);
  rec.regularization_r = r;
  rec.bias_correction_applied = correction;
  rec.cumulative_shots = state.ledger.cumulative_shots;
  return {std::move(state), rec, std::move(psi)};
}

Rng make_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x5eedu};
  return Rng(seq);
}

Trajectory run_optimization(const Hamiltonian& h, const AnsatzSpec& ansatz, const StrategyConfig& strategy,
                            const Sampler& sampler, std::uint64_t n_sweeps, std::uint64_t seed,
                            const IterationObserver& observer) {
  strategy.validate();
  if (h.num_qubits() != ansatz.num_qubits()) throw DimensionError("Hamiltonian and ansatz qubit counts differ");
  const std::uint64_t total = ansatz.num_parameters() * n_sweeps;

  Rng rng = make_rng(seed);
  Trajectory traj;
  traj.final_state = initial_state(h, ansatz, sampler, total, rng);
  traj.initial_true_energy = exact_expectation(h, apply_ansatz(ansatz, traj.final_state.theta));
  traj.records.reserve(total);
  while (!traj.final_state.finished()) {
    auto step = smo_step(std::move(traj.final_state), h, ansatz, strategy, sampler, rng);
    if (observer) observer(step.record, step.psi);
    traj.records.push_back(step.record);
    traj.final_state = std::move(step.state);
  }
  return traj;
}

}  // namespace smovqe
