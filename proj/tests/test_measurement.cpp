#include <doctest.h>

#include <cmath>
#include <vector>

#include "smovqe/ansatz.hpp"
#include "smovqe/error.hpp"
#include "smovqe/ground_truth.hpp"
#include "smovqe/measurement.hpp"
#include "smovqe/pauli.hpp"
#include "test_util.hpp"

using namespace smovqe;
using smovqe::testing::column_state;
using smovqe::testing::moments;
using smovqe::testing::random_state;

namespace {

Hamiltonian minus_z() { return Hamiltonian(1, {PauliTerm::from_label(-1.0, "Z")}); }

Statevector plus_state() {
  const double s = 1.0 / std::sqrt(2.0);
  return Statevector(1, {s, s});
}

std::vector<double> sample_values(const Hamiltonian& h, const Statevector& psi, std::uint64_t shots, int reps,
                                  Rng& rng, std::vector<double>* variances = nullptr) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(reps));
  for (int i = 0; i < reps; ++i) {
    const EnergyMeasurement m = measure_energy(h, psi, shots, rng);
    out.push_back(m.value);
    if (variances) variances->push_back(m.variance);
  }
  return out;
}

}  // namespace

TEST_CASE("eigenstate measurements are deterministic") {
  Rng rng(1);
  for (std::uint64_t n : {2, 10, 1000}) {
    const EnergyMeasurement m = measure_energy(minus_z(), Statevector(1), n, rng);
    CHECK(m.value == -1.0);
    CHECK(m.variance == 0.0);
  }
}

TEST_CASE("equal superposition has binomial variance 1/N") {
  Rng rng(2);
  const std::uint64_t n = 100000;
  const auto m = moments(sample_values(minus_z(), plus_state(), n, 10000, rng));
  CHECK(std::abs(m.mean) < 0.01);
  CHECK(m.variance == doctest::Approx(1.0 / static_cast<double>(n)).epsilon(0.05));
}

TEST_CASE("tfim(5) with 100 shots per term spends 900 shots") {
  Rng rng(3);
  const Hamiltonian h = build_hamiltonian(Model::TFIM, 5, {});
  const EnergyMeasurement m = measure_energy(h, Statevector(5), 100, rng);
  CHECK(m.shots_total == 900);
  CHECK(m.shots_per_pauli == 100);
  CHECK(m.finite_shot());
}

TEST_CASE("budget errors") {
  Rng rng(4);
  CHECK_THROWS_AS(measure_energy(minus_z(), Statevector(1), 0, rng), BudgetError);
  CHECK_THROWS_AS(measure_energy(minus_z(), Statevector(1), 1, rng), BudgetError);
  CHECK_THROWS_AS(measure_energy(minus_z(), Statevector(2), 10, rng), DimensionError);
}

TEST_CASE("identity terms carry their coefficient without variance") {
  Rng rng(5);
  const Hamiltonian h(1, {PauliTerm::from_label(2.5, "I"), PauliTerm::from_label(-1.0, "Z")});
  const EnergyMeasurement m = measure_energy(h, Statevector(1), 50, rng);
  CHECK(m.value == 1.5);
  CHECK(m.variance == 0.0);
  CHECK(m.shots_total == 100);
}

TEST_CASE("infinite-shot measurement") {
  const EnergyMeasurement m = measure_energy_infinite(minus_z(), Statevector(1));
  CHECK(m.value == -1.0);
  CHECK(m.variance == 0.0);
  CHECK(m.shots_total == 0);
  CHECK_FALSE(m.finite_shot());

  const Hamiltonian h = build_hamiltonian(Model::TFIM, 2, {});
  const Statevector gs = column_state(ground_truth(h).ground_basis, 0, 2);
  CHECK(measure_energy_infinite(h, gs).value == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-12));

  Rng rng(6);
  const Hamiltonian h4 = build_hamiltonian(Model::XXZ, 4, {});
  for (int i = 0; i < 10; ++i) {
    const Statevector psi = random_state(4, rng);
    CHECK(measure_energy_infinite(h4, psi).value == exact_expectation(h4, psi));
  }
}

TEST_CASE("pooled variance") {
  EnergyMeasurement a{0.0, 0.04, 100, 100};
  EnergyMeasurement b{0.0, 0.02, 100, 100};
  CHECK(pooled_subspace_variance(a, b) == doctest::Approx(0.03));
  EnergyMeasurement z{0.0, 0.0, 0, 0};
  CHECK(pooled_subspace_variance(z, z) == 0.0);
  CHECK_THROWS_AS(pooled_subspace_variance(a, z), ModeError);
  EnergyMeasurement c{0.0, 0.02, 200, 200};
  CHECK_THROWS_AS(pooled_subspace_variance(a, c), ModeError);
}

TEST_CASE("pooled variance tracks the analytic per-evaluation variance") {
  Rng rng(7);
  const Hamiltonian h = build_hamiltonian(Model::TFIM, 4, {});
  const Statevector psi = apply_ansatz(AnsatzSpec(4, 1), ParameterVector(std::vector<double>(16, 0.7)));
  const double truth = analytic_shot_variance(h, psi, 100);
  double acc = 0.0;
  const int reps = 10000;
  for (int i = 0; i < reps; ++i) {
    const EnergyMeasurement p = measure_energy(h, psi, 100, rng);
    const EnergyMeasurement m = measure_energy(h, psi, 100, rng);
    acc += pooled_subspace_variance(p, m);
  }
  CHECK(acc / reps == doctest::Approx(truth).epsilon(0.03));
}

TEST_CASE("sampling properties on a generic state") {
  Rng rng(8);
  const Hamiltonian h = build_hamiltonian(Model::TFIM, 3, {});
  const Statevector psi = random_state(3, rng);
  const double exact = exact_expectation(h, psi);
  const int reps = 100000;

  std::vector<double> var_field;
  const auto at_n = moments(sample_values(h, psi, 50, reps, rng, &var_field));
  const auto at_2n = moments(sample_values(h, psi, 100, reps, rng));

  SUBCASE("unbiased") { CHECK(std::abs(at_n.mean - exact) < 4.0 * at_n.standard_error()); }
  SUBCASE("variance halves when shots double") {
    CHECK(at_n.variance / at_2n.variance == doctest::Approx(2.0).epsilon(0.05));
  }
  SUBCASE("variance field is consistent") {
    CHECK(moments(var_field).mean == doctest::Approx(at_n.variance).epsilon(0.03));
    CHECK(moments(var_field).mean == doctest::Approx(analytic_shot_variance(h, psi, 50)).epsilon(0.03));
  }
}

TEST_CASE("same seed gives the same measurement") {
  const Hamiltonian h = build_hamiltonian(Model::XXX, 3, {});
  Rng seed_rng(9);
  const Statevector psi = random_state(3, seed_rng);
  Rng a(42), b(42);
  for (int i = 0; i < 5; ++i) {
    const EnergyMeasurement ma = measure_energy(h, psi, 100, a);
    const EnergyMeasurement mb = measure_energy(h, psi, 100, b);
    CHECK(ma.value == mb.value);
    CHECK(ma.variance == mb.variance);
    CHECK(ma.shots_total == mb.shots_total);
  }
}

TEST_CASE("gaussian surrogate") {
  Rng rng(10);
  const Hamiltonian h = build_hamiltonian(Model::TFIM, 3, {});
  const Statevector psi = random_state(3, rng);
  const double truth = analytic_shot_variance(h, psi, 100);
  std::vector<double> xs;
  for (int i = 0; i < 50000; ++i) {
    const EnergyMeasurement m = measure_energy_gaussian(h, psi, 100, rng);
    CHECK(m.variance == truth);
    xs.push_back(m.value);
  }
  const auto m = moments(xs);
  CHECK(std::abs(m.mean - exact_expectation(h, psi)) < 4.0 * m.standard_error());
  CHECK(m.variance == doctest::Approx(truth).epsilon(0.03));
}

TEST_CASE("sampler dispatch and noise model names") {
  CHECK(parse_noise_model("binomial") == NoiseModel::Binomial);
  CHECK(parse_noise_model("gaussian") == NoiseModel::Gaussian);
  CHECK(parse_noise_model("exact") == NoiseModel::Exact);
  CHECK_THROWS_AS(parse_noise_model("poisson"), InvalidSpecError);
  Rng rng(11);
  const Sampler exact = Sampler::exact();
  CHECK(exact.noiseless());
  const EnergyMeasurement m = exact.measure(minus_z(), plus_state(), rng);
  CHECK(m.variance == 0.0);
  CHECK(m.shots_total == 0);
}

TEST_CASE("ledger accumulates shots and evaluations") {
  ShotBudgetLedger ledger;
  ledger.record({0.0, 0.0, 900, 100});
  ledger.record({0.0, 0.0, 900, 100});
  CHECK(ledger.cumulative_shots == 1800);
  CHECK(ledger.cumulative_evaluations == 2);
}
