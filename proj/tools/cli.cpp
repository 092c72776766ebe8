#include "cli.hpp"

#include <CLI11.hpp>

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "smovqe/error.hpp"
#include "smovqe/experiment.hpp"
#include "smovqe/ground_truth.hpp"
#include "smovqe/validation.hpp"

namespace smovqe {

namespace {

struct CommonFlags {
  std::optional<std::string> config;
  std::optional<std::string> model;
  std::optional<double> j, h, delta;
  std::optional<std::size_t> layers;
  std::optional<std::string> noise;
  std::optional<std::uint64_t> sweeps;
  std::vector<std::string> strategies;
  std::optional<std::uint64_t> n_seeds;
  std::optional<std::uint64_t> first_seed;
  std::vector<std::uint64_t> seed_list;
  std::optional<double> tau;
  std::optional<std::uint64_t> period;
  std::optional<std::uint64_t> record_every;
  std::optional<unsigned> threads;
  std::string out;
};

void add_common(CLI::App& cmd, CommonFlags& f) {
  cmd.add_option("--config", f.config, "JSON experiment config; flags override its values");
  cmd.add_option("--model", f.model, "tfim | xx | xxz | xxx");
  cmd.add_option("--j", f.j, "nearest-neighbour coupling");
  cmd.add_option("--h", f.h, "field strength (tfim, xxx)");
  cmd.add_option("--delta", f.delta, "ZZ anisotropy (xxz)");
  cmd.add_option("--layers", f.layers, "ansatz entangling layers");
  cmd.add_option("--noise", f.noise, "binomial | gaussian | exact");
  cmd.add_option("--sweeps", f.sweeps, "number of full sweeps (T = D * sweeps)");
  cmd.add_option("--strategies", f.strategies, "biased,stabilized,corrected,regularized")->delimiter(',');
  cmd.add_option("--seeds", f.n_seeds, "number of seeds");
  cmd.add_option("--first-seed", f.first_seed, "first seed when --seeds is given");
  cmd.add_option("--seed-list", f.seed_list, "explicit comma-separated seeds")->delimiter(',');
  cmd.add_option("--tau", f.tau, "regularization exponent");
  cmd.add_option("--stabilization-period", f.period, "re-measurement period N_p");
  cmd.add_option("--record-every", f.record_every, "record every k-th iteration");
  cmd.add_option("--threads", f.threads, "worker threads (default: SMOVQE_THREADS or all cores)");
  cmd.add_option("--out", f.out, "output directory");
}

ExperimentConfig build_config(const CommonFlags& f) {
  ExperimentConfig c = f.config ? load_config(*f.config) : default_experiment_config();
  if (f.model) c.model = parse_model(*f.model);
  if (f.j) c.couplings.j = *f.j;
  if (f.h) c.couplings.h = *f.h;
  if (f.delta) c.couplings.delta = *f.delta;
  if (f.layers) c.num_layers = *f.layers;
  if (f.noise) c.noise = parse_noise_model(*f.noise);
  if (f.sweeps) c.n_sweeps = *f.sweeps;
  if (!f.strategies.empty()) {
    std::vector<StrategyConfig> strategies;
    for (const auto& name : f.strategies) {
      StrategyConfig s;
      s.variant = parse_strategy(name);
      strategies.push_back(s);
    }
    c.strategies = std::move(strategies);
  }
  for (auto& s : c.strategies) {
    if (f.tau) s.tau = *f.tau;
    if (f.period) s.stabilization_period = *f.period;
  }
  if (f.n_seeds) {
    c.seeds.clear();
    const std::uint64_t first = f.first_seed.value_or(0);
    for (std::uint64_t i = 0; i < *f.n_seeds; ++i) c.seeds.push_back(first + i);
  }
  if (!f.seed_list.empty()) c.seeds = f.seed_list;
  if (f.record_every) c.record_every = *f.record_every;
  if (f.threads) c.threads = *f.threads;
  if (!f.out.empty()) c.output_dir = f.out;
  return c;
}

}  // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential minimal optimization VQE laboratory with shot-noise bias analysis", "smovqe"};
  app.require_subcommand(1);
  // --h is the field-strength coupling, so help is long-form only.
  app.set_help_flag("--help", "print this help message and exit");

  CommonFlags run_flags;
  std::optional<std::size_t> run_qubits;
  std::optional<std::uint64_t> run_shots;
  auto* run = app.add_subcommand("run", "run one experiment and write metrics.csv / aggregate.csv");
  run->set_help_flag("--help", "print this help message and exit");
  add_common(*run, run_flags);
  run->add_option("--qubits", run_qubits, "number of qubits");
  run->add_option("--shots", run_shots, "shots per Pauli term (0 = infinite)");

  CommonFlags sweep_flags;
  std::vector<std::string> sweep_models;
  std::vector<std::size_t> sweep_qubits;
  std::vector<std::size_t> sweep_layers;
  std::vector<std::uint64_t> sweep_shots;
  bool with_rows = false;
  auto* sweep = app.add_subcommand("sweep", "grid over models, qubits, layers and shots per Pauli term");
  sweep->set_help_flag("--help", "print this help message and exit");
  add_common(*sweep, sweep_flags);
  sweep->add_option("--models", sweep_models, "models to sweep")->delimiter(',');
  sweep->add_option("--qubits", sweep_qubits, "qubit counts (default 5,7,10)")->delimiter(',');
  sweep->add_option("--layer-grid", sweep_layers, "layer counts (default 3)")->delimiter(',');
  sweep->add_option("--shots", sweep_shots, "shots per Pauli term (default 50,100,150,200)")->delimiter(',');
  sweep->add_flag("--with-rows", with_rows, "also write per-iteration metrics for every cell");

  ValidationOptions vopts;
  auto* validate = app.add_subcommand("validate", "Monte-Carlo checks of the fit statistics and bias formulas");
  validate->set_help_flag("--help", "print this help message and exit");
  validate->add_option("--trials", vopts.trials, "Monte-Carlo trials per check");
  validate->add_option("--seed", vopts.seed, "random seed");

  std::string gs_model = "tfim";
  std::size_t gs_qubits = 5;
  Couplings gs_couplings;
  double gs_tol = kDefaultDegeneracyTolerance;
  auto* gs = app.add_subcommand("gs", "print the exact ground-state energy");
  gs->set_help_flag("--help", "print this help message and exit");
  gs->add_option("--model", gs_model, "tfim | xx | xxz | xxx");
  gs->add_option("--qubits", gs_qubits, "number of qubits");
  gs->add_option("--j", gs_couplings.j, "nearest-neighbour coupling");
  gs->add_option("--h", gs_couplings.h, "field strength");
  gs->add_option("--delta", gs_couplings.delta, "ZZ anisotropy");
  gs->add_option("--tol", gs_tol, "degeneracy tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (run->parsed()) {
      ExperimentConfig cfg = build_config(run_flags);
      if (run_qubits) cfg.num_qubits = *run_qubits;
      if (run_shots) cfg.shots_per_pauli = *run_shots;
      if (cfg.output_dir.empty()) throw ConfigError("output_dir", "no output directory (use --out)");
      const auto result = run_experiment(cfg);
      const auto paths = write_experiment_outputs(cfg, result);
      out << "E_GS " << format_double(result.gs_energy) << "\n"
          << "rows " << result.rows.size() << "\n"
          << "metrics " << paths.metrics.string() << "\n"
          << "aggregate " << paths.aggregate.string() << "\n";
    } else if (sweep->parsed()) {
      SweepConfig sc;
      sc.base = build_config(sweep_flags);
      if (!sweep_models.empty()) {
        sc.models.clear();
        for (const auto& m : sweep_models) sc.models.push_back(parse_model(m));
      }
      if (!sweep_qubits.empty()) sc.qubits = sweep_qubits;
      if (!sweep_layers.empty()) {
        sc.layers = sweep_layers;
      } else if (sweep_flags.layers) {
        sc.layers = {*sweep_flags.layers};
      }
      if (!sweep_shots.empty()) sc.shots = sweep_shots;
      sc.output_dir = sc.base.output_dir;
      sc.write_rows = with_rows;
      if (sc.output_dir.empty()) throw ConfigError("output_dir", "no output directory (use --out)");
      const auto files = run_sweep(sc);
      for (const auto& f : files) out << f.string() << "\n";
    } else if (validate->parsed()) {
      bool all = true;
      for (const auto& check : run_validation_suite(vopts)) {
        out << (check.passed ? "PASS " : "FAIL ") << check.name << " (" << check.detail << ")\n";
        all = all && check.passed;
      }
      return all ? 0 : 1;
    } else if (gs->parsed()) {
      const Hamiltonian h = build_hamiltonian(parse_model(gs_model), gs_qubits, gs_couplings);
      const GroundTruth gt = ground_truth(h, gs_tol);
      out << format_double(gt.gs_energy) << "\n";
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace smovqe
