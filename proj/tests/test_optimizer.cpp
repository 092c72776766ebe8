#include <doctest.h>

#include <cmath>
#include <vector>

#include "smovqe/ansatz.hpp"
#include "smovqe/error.hpp"
#include "smovqe/optimizer.hpp"
#include "smovqe/pauli.hpp"
#include "test_util.hpp"

using namespace smovqe;

namespace {

constexpr Strategy kAllStrategies[] = {Strategy::Biased, Strategy::Stabilized, Strategy::Corrected,
                                       Strategy::Regularized};

StrategyConfig strategy(Strategy s, std::uint64_t period = 32) {
  StrategyConfig c;
  c.variant = s;
  c.stabilization_period = period;
  return c;
}

Sampler binomial(std::uint64_t shots) { return {NoiseModel::Binomial, shots}; }

bool same_records(const std::vector<IterationRecord>& a, const std::vector<IterationRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].t != b[i].t || a[i].d != b[i].d || a[i].carried_estimate != b[i].carried_estimate ||
        a[i].true_energy != b[i].true_energy || a[i].cumulative_shots != b[i].cumulative_shots)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("regularization strength examples") {
  CHECK(regularization_strength(0, 8000, 5, 100, 2.0) == 0.0);
  // e^2 / 100 * sqrt(1600) * (1 - e^-2)
  CHECK(regularization_strength(8000, 8000, 5, 100, 2.0) == doctest::Approx(2.55562).epsilon(1e-5));
  CHECK(regularization_strength(1, 8000, 5, 100, 2.0) == doctest::Approx(8.26e-6).epsilon(1e-3));
  CHECK_THROWS_AS(regularization_strength(1, 0, 5, 100, 2.0), InvalidInputError);
  CHECK_THROWS_AS(regularization_strength(1, 10, 0, 100, 2.0), InvalidInputError);
  CHECK_THROWS_AS(regularization_strength(1, 10, 5, 0, 2.0), InvalidInputError);
}

TEST_CASE("strategy names and validation") {
  for (Strategy s : kAllStrategies) CHECK(parse_strategy(strategy_name(s)) == s);
  CHECK_THROWS_AS(parse_strategy("greedy"), InvalidSpecError);
  StrategyConfig c = strategy(Strategy::Stabilized, 0);
  CHECK_THROWS_AS(c.validate(), InvalidSpecError);
  c = strategy(Strategy::Corrected);
  c.snr_threshold = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidSpecError);
  c.label = "custom";
  CHECK(c.name() == "custom");
}

TEST_CASE("a noiseless step lands on the exact minimum along its direction") {
  const Hamiltonian h = build_hamiltonian(Model::TFIM, 3, {});
  const AnsatzSpec ansatz(3, 1);
  const Sampler exact = Sampler::exact();
  Rng rng = make_rng(4);
  OptimizerState state = initial_state(h, ansatz, exact, ansatz.num_parameters() * 2, rng);
  for (int step = 0; step < 12; ++step) {
    const std::size_t d = state.direction();
    const ParameterVector before = state.theta;
    const double e_before = exact_expectation(h, apply_ansatz(ansatz, before));
    StepResult r = smo_step(state, h, ansatz, strategy(Strategy::Biased), exact, rng);
    double grid_min = e_before;
    for (int i = 0; i < 20000; ++i)
      grid_min = std::min(grid_min, exact_expectation(h, apply_ansatz(ansatz, before.shifted(d, kTwoPi * i / 20000))));
    CHECK(r.record.true_energy <= grid_min + 1e-12);
    CHECK(r.record.true_energy <= e_before + 1e-12);
    CHECK(r.record.carried_estimate == doctest::Approx(r.record.true_energy).epsilon(1e-12));
    CHECK(r.record.d == d);
    for (std::size_t j = 0; j < before.size(); ++j)
      if (j != d) CHECK(r.state.theta[j] == before[j]);
    state = r.state;
  }
}

TEST_CASE("noiseless strategies coincide and descend") {
  const AnsatzSpec ansatz(4, 2);
  for (Model m : {Model::TFIM, Model::XX, Model::XXZ, Model::XXX}) {
    CAPTURE(model_name(m));
    const Hamiltonian h = build_hamiltonian(m, 4, {});
    const Trajectory ref = run_optimization(h, ansatz, strategy(Strategy::Biased), Sampler::exact(), 5, 17);
    double prev = ref.initial_true_energy;
    for (const auto& rec : ref.records) {
      CHECK(rec.true_energy <= prev);
      prev = rec.true_energy;
    }
    for (Strategy s : kAllStrategies) {
      const Trajectory other = run_optimization(h, ansatz, strategy(s, 3), Sampler::exact(), 5, 17);
      CHECK(same_records(ref.records, other.records));
      CHECK(other.final_state.theta == ref.final_state.theta);
    }
  }
}

TEST_CASE("trajectory length and determinism") {
  const Hamiltonian h = build_hamiltonian(Model::TFIM, 3, {});
  const AnsatzSpec ansatz(3, 1);
  for (Strategy s : kAllStrategies) {
    const Trajectory a = run_optimization(h, ansatz, strategy(s, 5), binomial(50), 3, 99);
    const Trajectory b = run_optimization(h, ansatz, strategy(s, 5), binomial(50), 3, 99);
    CHECK(a.records.size() == ansatz.num_parameters() * 3);
    CHECK(a.records.front().t == 1);
    CHECK(a.records.back().t == ansatz.num_parameters() * 3);
    CHECK(same_records(a.records, b.records));
    CHECK(a.final_state.finished());
  }
  const Trajectory c = run_optimization(h, ansatz, strategy(Strategy::Biased), binomial(50), 3, 100);
  const Trajectory d = run_optimization(h, ansatz, strategy(Strategy::Biased), binomial(50), 3, 99);
  CHECK_FALSE(same_records(c.records, d.records));
}

TEST_CASE("strategies sharing a seed start from the same point") {
  const Hamiltonian h = build_hamiltonian(Model::TFIM, 3, {});
  const AnsatzSpec ansatz(3, 1);
  const Trajectory a = run_optimization(h, ansatz, strategy(Strategy::Biased), binomial(100), 1, 5);
  const Trajectory b = run_optimization(h, ansatz, strategy(Strategy::Regularized), binomial(100), 1, 5);
  CHECK(a.initial_true_energy == b.initial_true_energy);
}

TEST_CASE("budget accounting is exact") {
  const Hamiltonian h = build_hamiltonian(Model::TFIM, 3, {});
  const AnsatzSpec ansatz(3, 1);
  const std::uint64_t shots = 20;
  const std::uint64_t per_eval = shots * h.num_terms();
  for (std::uint64_t sweeps : {1, 2, 7}) {
    const std::uint64_t t_total = ansatz.num_parameters() * sweeps;
    for (Strategy s : {Strategy::Biased, Strategy::Corrected, Strategy::Regularized}) {
      const Trajectory tr = run_optimization(h, ansatz, strategy(s), binomial(shots), sweeps, 1);
      CHECK(tr.final_state.ledger.cumulative_shots == (2 * t_total + 1) * per_eval);
      CHECK(tr.final_state.ledger.cumulative_evaluations == 2 * t_total + 1);
    }
    for (std::uint64_t period : {1, 3, 5, 32}) {
      const Trajectory tr = run_optimization(h, ansatz, strategy(Strategy::Stabilized, period), binomial(shots),
                                             sweeps, 1);
      CHECK(tr.final_state.ledger.cumulative_shots == (2 * t_total + 1 + t_total / period) * per_eval);
    }
  }
}

TEST_CASE("per-step ledger growth") {
  const Hamiltonian h = build_hamiltonian(Model::TFIM, 2, {});
  const AnsatzSpec ansatz(2, 1);
  const std::uint64_t per_eval = 10 * h.num_terms();
  Rng rng = make_rng(8);
  OptimizerState state = initial_state(h, ansatz, binomial(10), 16, rng);
  const StrategyConfig stab = strategy(Strategy::Stabilized, 4);
  while (!state.finished()) {
    const std::uint64_t before = state.ledger.cumulative_shots;
    StepResult r = smo_step(state, h, ansatz, stab, binomial(10), rng);
    const std::uint64_t grew = r.state.ledger.cumulative_shots - before;
    CHECK(grew == (r.record.t % 4 == 0 ? 3 : 2) * per_eval);
    CHECK(r.record.cumulative_shots == r.state.ledger.cumulative_shots);
    state = r.state;
  }
  CHECK_THROWS_AS(smo_step(state, h, ansatz, stab, binomial(10), rng), Error);
}

TEST_CASE("regularized records carry the injected strength") {
  const Hamiltonian h = build_hamiltonian(Model::TFIM, 3, {});
  const AnsatzSpec ansatz(3, 1);
  const Trajectory tr = run_optimization(h, ansatz, strategy(Strategy::Regularized), binomial(100), 2, 3);
  const std::uint64_t total = tr.records.size();
  for (const auto& rec : tr.records)
    CHECK(rec.regularization_r == regularization_strength(rec.t, total, 3, 100, 2.0));
}

TEST_CASE("corrected carried value adds a nonnegative correction") {
  const Hamiltonian h = build_hamiltonian(Model::TFIM, 3, {});
  const AnsatzSpec ansatz(3, 1);
  const Trajectory tr = run_optimization(h, ansatz, strategy(Strategy::Corrected), binomial(100), 2, 3);
  for (const auto& rec : tr.records) CHECK(rec.bias_correction_applied >= 0.0);
}

TEST_CASE("dimension checks") {
  const Hamiltonian h = build_hamiltonian(Model::TFIM, 3, {});
  CHECK_THROWS_AS(run_optimization(h, AnsatzSpec(2, 1), strategy(Strategy::Biased), Sampler::exact(), 1, 0),
                  DimensionError);
}

TEST_CASE("biased estimates drift below the true energy") {
  const Hamiltonian h = build_hamiltonian(Model::TFIM, 5, {});
  const AnsatzSpec ansatz(5, 3);
  double acc = 0.0;
  const int seeds = 100;
  for (int seed = 0; seed < seeds; ++seed) {
    const Trajectory tr = run_optimization(h, ansatz, strategy(Strategy::Biased), binomial(100), 100,
                                           static_cast<std::uint64_t>(seed));
    acc += tr.records.back().carried_estimate - tr.records.back().true_energy;
  }
  CHECK(acc / seeds < 0.0);
}
