#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "smovqe/measurement.hpp"
#include "smovqe/optimizer.hpp"
#include "smovqe/pauli.hpp"

namespace smovqe {

/// One experiment: a Hamiltonian, an ansatz, a shot budget and a set of
/// strategies run over a seed ensemble. `shots_per_pauli == 0` selects
/// infinite-shot evaluation.
struct ExperimentConfig {
  Model model = Model::TFIM;
  Couplings couplings;
  std::size_t num_qubits = 5;
  std::size_t num_layers = 3;
  std::uint64_t shots_per_pauli = 100;
  NoiseModel noise = NoiseModel::Binomial;
  std::uint64_t n_sweeps = 200;
  std::vector<StrategyConfig> strategies;
  std::vector<std::uint64_t> seeds;
  std::filesystem::path output_dir;
  std::uint64_t record_every = 1;
  unsigned threads = 0;  // 0: SMOVQE_THREADS or hardware concurrency

  Sampler sampler() const;
  std::uint64_t total_steps() const { return 2 * num_qubits * (num_layers + 1) * n_sweeps; }
  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// n_q = 5, n_l = 3, 100 shots per Pauli term, 200 sweeps, the four
/// strategies (tau = 2, N_p = 32) and seeds 0..99.
ExperimentConfig default_experiment_config();

/// Overlays the keys present in `doc` on `base`. Unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& doc, ExperimentConfig base = default_experiment_config());
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& config);

struct MetricsRow {
  std::uint64_t seed = 0;
  std::string strategy;
  std::uint64_t t = 0;
  std::size_t d = 0;
  double estimate = 0.0;
  double true_energy = 0.0;
  double delta_energy = 0.0;    // true_energy - E_GS
  double delta_fidelity = 0.0;  // 1 - F
  double estimate_error = 0.0;  // estimate - true_energy
  double regularization_r = 0.0;
  std::uint64_t cumulative_shots = 0;
};

struct SummaryStats {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (n - 1); zero for one value
  double median = 0.0;
};

SummaryStats summarize(std::vector<double> values);

struct AggregateRow {
  std::string strategy;
  std::uint64_t t = 0;
  std::size_t count = 0;
  SummaryStats delta_energy;
  SummaryStats delta_fidelity;
  SummaryStats estimate_error;
  double cumulative_shots_mean = 0.0;
};

struct ExperimentResult {
  double gs_energy = 0.0;
  std::size_t gs_degeneracy = 0;
  std::size_t num_terms = 0;
  std::vector<MetricsRow> rows;
};

inline constexpr std::string_view kMetricsHeader =
    "seed,strategy,t,d,estimate,true_energy,delta_energy,delta_fidelity,estimate_error,regularization_r,"
    "cumulative_shots";
inline constexpr std::string_view kAggregateHeader =
    "strategy,t,count,delta_energy_mean,delta_energy_std,delta_energy_median,delta_fidelity_mean,"
    "delta_fidelity_std,delta_fidelity_median,estimate_error_mean,estimate_error_std,estimate_error_median,"
    "cumulative_shots_mean";
inline constexpr std::string_view kSweepSummaryHeader =
    "model,n_qubits,n_layers,shots_per_pauli,strategy,t,count,delta_energy_mean,delta_energy_std,"
    "delta_energy_median,delta_fidelity_mean,delta_fidelity_std,delta_fidelity_median,estimate_error_mean,"
    "aggregate_file";

/// Runs every (seed, strategy) cell, in parallel when threads allow. Rows are
/// ordered seed-major, then strategy, then t, independent of scheduling.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Per-(strategy, t) statistics over seeds, sorted by strategy name then t.
/// Independent of the input row order. Throws InvalidInputError when empty.
std::vector<AggregateRow> aggregate(std::span<const MetricsRow> rows);

/// Shortest round-trip-exact formatting ("%.17g").
std::string format_double(double v);

void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows);
void write_aggregate_csv(std::ostream& out, std::span<const AggregateRow> rows);

struct ExperimentOutputs {
  std::filesystem::path metrics;
  std::filesystem::path aggregate;
};

/// Writes metrics.csv and aggregate.csv into config.output_dir.
ExperimentOutputs write_experiment_outputs(const ExperimentConfig& config, const ExperimentResult& result);

/// Grid of experiments sharing `base` except for model, n_q, n_l and shots.
struct SweepConfig {
  ExperimentConfig base;
  std::vector<Model> models{Model::TFIM};
  std::vector<std::size_t> qubits{5, 7, 10};
  std::vector<std::size_t> layers{3};
  std::vector<std::uint64_t> shots{50, 100, 150, 200};
  std::filesystem::path output_dir;
  bool write_rows = false;
};

std::string sweep_cell_name(Model model, std::size_t qubits, std::size_t layers, std::uint64_t shots);

/// Writes one aggregate file per grid cell plus sweep_summary.csv with the
/// final-iteration statistics. Returns the aggregate file paths.
std::vector<std::filesystem::path> run_sweep(const SweepConfig& sweep);

/// Resolves a worker count: explicit request, then SMOVQE_THREADS, then the
/// hardware concurrency.
unsigned resolve_thread_count(unsigned requested);

}  // namespace smovqe
