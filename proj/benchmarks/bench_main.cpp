#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "smovqe/ansatz.hpp"
#include "smovqe/measurement.hpp"
#include "smovqe/optimizer.hpp"
#include "smovqe/pauli.hpp"
#include "smovqe/trig_fit.hpp"

namespace {

using namespace smovqe;

ParameterVector random_parameters(const AnsatzSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  std::vector<double> v(spec.num_parameters());
  for (auto& x : v) x = u(rng);
  return ParameterVector(std::move(v));
}

void BM_ApplyAnsatz(benchmark::State& state) {
  const AnsatzSpec spec(static_cast<std::size_t>(state.range(0)), 3);
  const ParameterVector theta = random_parameters(spec, 1);
  for (auto _ : state) benchmark::DoNotOptimize(apply_ansatz(spec, theta));
}
BENCHMARK(BM_ApplyAnsatz)->Arg(5)->Arg(7)->Arg(10)->Arg(14);

void BM_ExactExpectation(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Hamiltonian h = build_hamiltonian(Model::XXX, n, {});
  const AnsatzSpec spec(n, 3);
  const Statevector psi = apply_ansatz(spec, random_parameters(spec, 2));
  for (auto _ : state) benchmark::DoNotOptimize(exact_expectation(h, psi));
}
BENCHMARK(BM_ExactExpectation)->Arg(5)->Arg(10);

void BM_MeasureEnergy(benchmark::State& state) {
  const Hamiltonian h = build_hamiltonian(Model::TFIM, 5, {});
  const AnsatzSpec spec(5, 3);
  const Statevector psi = apply_ansatz(spec, random_parameters(spec, 3));
  Rng rng(4);
  const auto shots = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(measure_energy(h, psi, shots, rng));
}
BENCHMARK(BM_MeasureEnergy)->Arg(100)->Arg(10000);

void BM_FitTrig(benchmark::State& state) {
  double f0 = 0.3;
  for (auto _ : state) {
    const TrigFit fit = fit_trig(f0, -0.2, 0.5, 0.01);
    benchmark::DoNotOptimize(bias_estimate(fit));
    f0 += 1e-9;
  }
}
BENCHMARK(BM_FitTrig);

void BM_FitTrigGeneral(benchmark::State& state) {
  const std::size_t order = static_cast<std::size_t>(state.range(0));
  std::vector<double> values(2 * order + 1);
  Rng rng(5);
  std::normal_distribution<double> g;
  for (auto& v : values) v = g(rng);
  for (auto _ : state) benchmark::DoNotOptimize(fit_trig_general(values, order, 0.01).minimizer());
}
BENCHMARK(BM_FitTrigGeneral)->Arg(1)->Arg(2)->Arg(4);

void BM_SmoStep(benchmark::State& state) {
  const Hamiltonian h = build_hamiltonian(Model::TFIM, 5, {});
  const AnsatzSpec spec(5, 3);
  StrategyConfig strategy;
  strategy.variant = static_cast<Strategy>(state.range(0));
  const Sampler sampler{NoiseModel::Binomial, 100};
  Rng rng = make_rng(6);
  const OptimizerState start = initial_state(h, spec, sampler, 1u << 30, rng);
  OptimizerState s = start;
  for (auto _ : state) {
    StepResult r = smo_step(std::move(s), h, spec, strategy, sampler, rng);
    s = std::move(r.state);
  }
  state.SetLabel(std::string(strategy_name(strategy.variant)));
}
BENCHMARK(BM_SmoStep)->DenseRange(0, 3);

}  // namespace
BENCHMARK_MAIN();
