#include "smovqe/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "smovqe/ansatz.hpp"
#include "smovqe/error.hpp"
#include "smovqe/ground_truth.hpp"

namespace smovqe {

namespace {

using nlohmann::json;

template <typename T>
T get_field(const json& doc, const std::string& key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(key, e.what());
  }
}

StrategyConfig strategy_from_json(const json& item, std::size_t index) {
  const std::string field = "strategies[" + std::to_string(index) + "]";
  StrategyConfig s;
  try {
    if (item.is_string()) {
      s.variant = parse_strategy(item.get<std::string>());
      return s;
    }
    if (!item.is_object()) throw ConfigError(field, "expected a strategy name or object");
    for (const auto& [key, value] : item.items()) {
      if (key == "variant") {
        s.variant = parse_strategy(value.get<std::string>());
      } else if (key == "stabilization_period" || key == "N_p") {
        s.stabilization_period = value.get<std::uint64_t>();
      } else if (key == "tau") {
        s.tau = value.get<double>();
      } else if (key == "snr_threshold") {
        s.snr_threshold = value.get<double>();
      } else if (key == "label") {
        s.label = value.get<std::string>();
      } else {
        throw ConfigError(field + "." + key, "unknown key");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(field, e.what());
  } catch (const InvalidSpecError& e) {
    throw ConfigError(field, e.what());
  }
  return s;
}

std::vector<std::uint64_t> seeds_from_json(const json& value) {
  try {
    if (value.is_array()) return value.get<std::vector<std::uint64_t>>();
    if (value.is_object()) {
      const auto first = value.value("first", std::uint64_t{0});
      const auto count = value.at("count").get<std::uint64_t>();
      std::vector<std::uint64_t> seeds(count);
      for (std::uint64_t i = 0; i < count; ++i) seeds[i] = first + i;
      return seeds;
    }
  } catch (const json::exception& e) {
    throw ConfigError("seeds", e.what());
  }
  throw ConfigError("seeds", "expected an array or {\"first\", \"count\"}");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void ensure_directory(const std::filesystem::path& dir) {
  if (dir.empty()) throw IoError("no output directory given");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'");
  }
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

Sampler ExperimentConfig::sampler() const {
  if (shots_per_pauli == 0 || noise == NoiseModel::Exact) return Sampler::exact();
  return {noise, shots_per_pauli};
}

void ExperimentConfig::validate() const {
  if (num_qubits == 0) throw ConfigError("n_qubits", "must be positive");
  if (num_qubits > kMaxDiagonalizationQubits) {
    throw ConfigError("n_qubits", "exceeds the dense diagonalization cap of " +
                                      std::to_string(kMaxDiagonalizationQubits));
  }
  if (shots_per_pauli == 1) throw ConfigError("shots_per_pauli", "must be 0 (infinite) or at least 2");
  if (n_sweeps == 0) throw ConfigError("n_sweeps", "must be positive");
  if (record_every == 0) throw ConfigError("record_every", "must be positive");
  if (seeds.empty()) throw ConfigError("seeds", "must not be empty");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw ConfigError("seeds", "must be pairwise distinct");
  }
  if (strategies.empty()) throw ConfigError("strategies", "must not be empty");
  std::set<std::string> names;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    try {
      strategies[i].validate();
    } catch (const InvalidSpecError& e) {
      throw ConfigError("strategies[" + std::to_string(i) + "]", e.what());
    }
    if (!names.insert(strategies[i].name()).second) {
      throw ConfigError("strategies", "duplicate label '" + strategies[i].name() + "'");
    }
  }
  try {
    (void)build_hamiltonian(model, num_qubits, couplings);
  } catch (const InvalidSpecError& e) {
    throw ConfigError("model", e.what());
  }
}

ExperimentConfig default_experiment_config() {
  ExperimentConfig c;
  for (auto v : {Strategy::Biased, Strategy::Stabilized, Strategy::Corrected, Strategy::Regularized}) {
    StrategyConfig s;
    s.variant = v;
    c.strategies.push_back(s);
  }
  c.seeds.resize(100);
  for (std::uint64_t i = 0; i < 100; ++i) c.seeds[i] = i;
  return c;
}

ExperimentConfig config_from_json(const json& doc, ExperimentConfig base) {
  if (!doc.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "model") {
      try {
        base.model = parse_model(get_field<std::string>(doc, key));
      } catch (const InvalidSpecError& e) {
        throw ConfigError(key, e.what());
      }
    } else if (key == "couplings") {
      if (!value.is_object()) throw ConfigError(key, "expected an object");
      for (const auto& [ck, cv] : value.items()) {
        if (!cv.is_number()) throw ConfigError("couplings." + ck, "expected a number");
        if (ck == "j") {
          base.couplings.j = cv.get<double>();
        } else if (ck == "h") {
          base.couplings.h = cv.get<double>();
        } else if (ck == "delta") {
          base.couplings.delta = cv.get<double>();
        } else {
          throw ConfigError("couplings." + ck, "unknown coupling");
        }
      }
    } else if (key == "n_qubits") {
      base.num_qubits = get_field<std::size_t>(doc, key);
    } else if (key == "n_layers") {
      base.num_layers = get_field<std::size_t>(doc, key);
    } else if (key == "shots_per_pauli") {
      base.shots_per_pauli = get_field<std::uint64_t>(doc, key);
    } else if (key == "noise") {
      try {
        base.noise = parse_noise_model(get_field<std::string>(doc, key));
      } catch (const InvalidSpecError& e) {
        throw ConfigError(key, e.what());
      }
    } else if (key == "n_sweeps") {
      base.n_sweeps = get_field<std::uint64_t>(doc, key);
    } else if (key == "strategies") {
      if (!value.is_array()) throw ConfigError(key, "expected an array");
      base.strategies.clear();
      for (std::size_t i = 0; i < value.size(); ++i) base.strategies.push_back(strategy_from_json(value[i], i));
    } else if (key == "seeds") {
      base.seeds = seeds_from_json(value);
    } else if (key == "output_dir" || key == "output_path") {
      base.output_dir = get_field<std::string>(doc, key);
    } else if (key == "record_every") {
      base.record_every = get_field<std::uint64_t>(doc, key);
    } else if (key == "threads") {
      base.threads = get_field<unsigned>(doc, key);
    } else {
      throw ConfigError(key, "unknown key");
    }
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("<root>", "'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return config_from_json(doc);
}

json to_json(const ExperimentConfig& c) {
  json strategies = json::array();
  for (const auto& s : c.strategies) {
    json item = {{"variant", strategy_name(s.variant)},
                 {"stabilization_period", s.stabilization_period},
                 {"tau", s.tau},
                 {"snr_threshold", s.snr_threshold}};
    if (!s.label.empty()) item["label"] = s.label;
    strategies.push_back(std::move(item));
  }
  return {{"model", model_name(c.model)},
          {"couplings", {{"j", c.couplings.j}, {"h", c.couplings.h}, {"delta", c.couplings.delta}}},
          {"n_qubits", c.num_qubits},
          {"n_layers", c.num_layers},
          {"shots_per_pauli", c.shots_per_pauli},
          {"noise", noise_model_name(c.noise)},
          {"n_sweeps", c.n_sweeps},
          {"strategies", strategies},
          {"seeds", c.seeds},
          {"output_dir", c.output_dir.string()},
          {"record_every", c.record_every},
          {"threads", c.threads}};
}

unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SMOVQE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const Hamiltonian h = build_hamiltonian(config.model, config.num_qubits, config.couplings);
  const AnsatzSpec ansatz(config.num_qubits, config.num_layers);
  const GroundTruth gt = ground_truth(h);
  const Sampler sampler = config.sampler();
  const std::uint64_t total = config.total_steps();

  const std::size_t n_strat = config.strategies.size();
  const std::size_t n_cells = config.seeds.size() * n_strat;
  std::vector<std::vector<MetricsRow>> cell_rows(n_cells);
  std::vector<std::exception_ptr> cell_errors(n_cells);

  auto run_cell = [&](std::size_t cell) {
    const std::uint64_t seed = config.seeds[cell / n_strat];
    const StrategyConfig& strategy = config.strategies[cell % n_strat];
    const std::string name = strategy.name();
    auto& rows = cell_rows[cell];
    rows.reserve(total / config.record_every + 1);
    auto observer = [&](const IterationRecord& rec, const Statevector& psi) {
      if (rec.t % config.record_every != 0 && rec.t != total) return;
      MetricsRow row;
      row.seed = seed;
      row.strategy = name;
      row.t = rec.t;
      row.d = rec.d;
      row.estimate = rec.carried_estimate;
      row.true_energy = rec.true_energy;
      row.delta_energy = rec.true_energy - gt.gs_energy;
      row.delta_fidelity = 1.0 - fidelity_to_gs(psi, gt);
      row.estimate_error = rec.carried_estimate - rec.true_energy;
      row.regularization_r = rec.regularization_r;
      row.cumulative_shots = rec.cumulative_shots;
      rows.push_back(std::move(row));
    };
    (void)run_optimization(h, ansatz, strategy, sampler, config.n_sweeps, seed, observer);
  };

  const unsigned n_threads = std::min<unsigned>(resolve_thread_count(config.threads),
                                                static_cast<unsigned>(std::max<std::size_t>(n_cells, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t cell = next++; cell < n_cells; cell = next++) {
      try {
        run_cell(cell);
      } catch (...) {
        cell_errors[cell] = std::current_exception();
      }
    }
  };
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  for (const auto& err : cell_errors) {
    if (err) std::rethrow_exception(err);
  }

  ExperimentResult result;
  result.gs_energy = gt.gs_energy;
  result.gs_degeneracy = gt.degeneracy;
  result.num_terms = h.num_terms();
  std::size_t n_rows = 0;
  for (const auto& rows : cell_rows) n_rows += rows.size();
  result.rows.reserve(n_rows);
  for (auto& rows : cell_rows) {
    std::move(rows.begin(), rows.end(), std::back_inserter(result.rows));
  }
  return result;
}

SummaryStats summarize(std::vector<double> values) {
  if (values.empty()) throw InvalidInputError("cannot summarize an empty sample");
  SummaryStats s;
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / (n - 1.0));
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  s.median = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  return s;
}

std::vector<AggregateRow> aggregate(std::span<const MetricsRow> rows) {
  if (rows.empty()) throw InvalidInputError("no metrics rows to aggregate");
  std::vector<const MetricsRow*> sorted;
  sorted.reserve(rows.size());
  for (const auto& r : rows) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const MetricsRow* a, const MetricsRow* b) {
    return std::tie(a->strategy, a->t, a->seed) < std::tie(b->strategy, b->t, b->seed);
  });

  std::vector<AggregateRow> out;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    std::vector<double> de, df, ee;
    double shots = 0.0;
    while (j < sorted.size() && sorted[j]->strategy == sorted[i]->strategy && sorted[j]->t == sorted[i]->t) {
      de.push_back(sorted[j]->delta_energy);
      df.push_back(sorted[j]->delta_fidelity);
      ee.push_back(sorted[j]->estimate_error);
      shots += static_cast<double>(sorted[j]->cumulative_shots);
      ++j;
    }
    AggregateRow row;
    row.strategy = sorted[i]->strategy;
    row.t = sorted[i]->t;
    row.count = j - i;
    row.delta_energy = summarize(std::move(de));
    row.delta_fidelity = summarize(std::move(df));
    row.estimate_error = summarize(std::move(ee));
    row.cumulative_shots_mean = shots / static_cast<double>(row.count);
    out.push_back(std::move(row));
    i = j;
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows) {
  out << kMetricsHeader << '\n';
  for (const auto& r : rows) {
    out << r.seed << ',' << csv_escape(r.strategy) << ',' << r.t << ',' << r.d << ',' << format_double(r.estimate)
        << ',' << format_double(r.true_energy) << ',' << format_double(r.delta_energy) << ','
        << format_double(r.delta_fidelity) << ',' << format_double(r.estimate_error) << ','
        << format_double(r.regularization_r) << ',' << r.cumulative_shots << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, std::span<const AggregateRow> rows) {
  out << kAggregateHeader << '\n';
  for (const auto& r : rows) {
    out << csv_escape(r.strategy) << ',' << r.t << ',' << r.count;
    for (const auto* s : {&r.delta_energy, &r.delta_fidelity, &r.estimate_error}) {
      out << ',' << format_double(s->mean) << ',' << format_double(s->std) << ',' << format_double(s->median);
    }
    out << ',' << format_double(r.cumulative_shots_mean) << '\n';
  }
}

ExperimentOutputs write_experiment_outputs(const ExperimentConfig& config, const ExperimentResult& result) {
  ensure_directory(config.output_dir);
  ExperimentOutputs paths{config.output_dir / "metrics.csv", config.output_dir / "aggregate.csv"};
  {
    auto out = open_for_write(paths.metrics);
    write_metrics_csv(out, result.rows);
    finish_write(out, paths.metrics);
  }
  {
    auto out = open_for_write(paths.aggregate);
    const auto agg = aggregate(result.rows);
    write_aggregate_csv(out, agg);
    finish_write(out, paths.aggregate);
  }
  return paths;
}

std::string sweep_cell_name(Model model, std::size_t qubits, std::size_t layers, std::uint64_t shots) {
  std::ostringstream os;
  os << model_name(model) << "_q" << qubits << "_l" << layers << "_s" << shots;
  return os.str();
}

std::vector<std::filesystem::path> run_sweep(const SweepConfig& sweep) {
  if (sweep.models.empty() || sweep.qubits.empty() || sweep.layers.empty() || sweep.shots.empty()) {
    throw ConfigError("sweep", "every grid axis needs at least one value");
  }
  ensure_directory(sweep.output_dir);
  const auto summary_path = sweep.output_dir / "sweep_summary.csv";
  auto summary = open_for_write(summary_path);
  summary << kSweepSummaryHeader << '\n';

  std::vector<std::filesystem::path> written;
  for (Model model : sweep.models) {
    for (std::size_t q : sweep.qubits) {
      for (std::size_t l : sweep.layers) {
        for (std::uint64_t shots : sweep.shots) {
          ExperimentConfig cfg = sweep.base;
          cfg.model = model;
          cfg.num_qubits = q;
          cfg.num_layers = l;
          cfg.shots_per_pauli = shots;
          const std::string name = sweep_cell_name(model, q, l, shots);
          const ExperimentResult result = run_experiment(cfg);
          const auto agg = aggregate(result.rows);

          const auto agg_path = sweep.output_dir / ("aggregate_" + name + ".csv");
          {
            auto out = open_for_write(agg_path);
            write_aggregate_csv(out, agg);
            finish_write(out, agg_path);
          }
          if (sweep.write_rows) {
            const auto rows_path = sweep.output_dir / ("metrics_" + name + ".csv");
            auto out = open_for_write(rows_path);
            write_metrics_csv(out, result.rows);
            finish_write(out, rows_path);
          }
          written.push_back(agg_path);

          // Final recorded iteration of each strategy.
          std::map<std::string, const AggregateRow*> last;
          for (const auto& row : agg) last[row.strategy] = &row;
          for (const auto& [strategy, row] : last) {
            summary << model_name(model) << ',' << q << ',' << l << ',' << shots << ',' << csv_escape(strategy)
                    << ',' << row->t << ',' << row->count << ',' << format_double(row->delta_energy.mean) << ','
                    << format_double(row->delta_energy.std) << ',' << format_double(row->delta_energy.median)
                    << ',' << format_double(row->delta_fidelity.mean) << ','
                    << format_double(row->delta_fidelity.std) << ','
                    << format_double(row->delta_fidelity.median) << ','
                    << format_double(row->estimate_error.mean) << ',' << agg_path.filename().string() << '\n';
          }
        }
      }
    }
  }
  finish_write(summary, summary_path);
  return written;
}

}  // namespace smovqe
