#include "antijam/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

namespace antijam {

std::string sweep_param_name(SweepParam p) {
  switch (p) {
    case SweepParam::p_avg: return "p_avg";
    case SweepParam::dt_hat: return "dt_hat";
    case SweepParam::t_harvest: return "t_harvest";
  }
  throw std::logic_error("sweep_param_name: unhandled parameter");
}

SweepParam sweep_param_from_name(const std::string& name) {
  if (name == "p_avg") return SweepParam::p_avg;
  if (name == "dt_hat") return SweepParam::dt_hat;
  if (name == "t_harvest") return SweepParam::t_harvest;
  throw ConfigError("sweep: unknown parameter '" + name +
                    "' (expected p_avg, dt_hat, or t_harvest)");
}

const SweepCell* SweepResult::find(double value, const std::string& agent,
                                   const std::string& metric) const {
  for (const auto& row : rows) {
    if (row.value != value) continue;
    for (const auto& cell : row.cells) {
      if (cell.agent == agent && cell.metric == metric) return &cell;
    }
  }
  return nullptr;
}

void mean_stddev(const std::vector<double>& xs, double& mean, double& stddev) {
  if (xs.empty()) throw std::domain_error("mean_stddev: empty sample");
  std::vector<double> sorted(xs);
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  mean = sum / sorted.size();
  if (sorted.size() < 2) {
    stddev = 0.0;
    return;
  }
  double sq = 0.0;
  for (double v : sorted) sq += (v - mean) * (v - mean);
  stddev = std::sqrt(sq / (sorted.size() - 1));
}

namespace {

constexpr const char* kMetrics[] = {"throughput", "loss", "pdr"};

struct CellSample {
  double throughput = 0.0;
  double loss = 0.0;
  double pdr = 0.0;
};

CellSample sample_from(const Metrics& m) {
  return {m.avg_throughput, m.packet_loss_rate, m.pdr};
}

double metric_of(const CellSample& s, int metric) {
  switch (metric) {
    case 0: return s.throughput;
    case 1: return s.loss;
    default: return s.pdr;
  }
}

// Higher is better for throughput and pdr, lower for loss.
bool better(int metric, double a, double b) {
  return metric == 1 ? a < b : a > b;
}

void parallel_for(int n, const std::function<void(int)>& body) {
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers = std::min(n, hw == 0 ? 1 : static_cast<int>(hw));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        if (failed.load()) return;
        try {
          body(i);
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

RunConfig apply_value(const RunConfig& base, SweepParam param, double value) {
  RunConfig cfg = base;
  switch (param) {
    case SweepParam::p_avg:
      if (!cfg.jammer.p_off || !cfg.jammer.p_avg) {
        throw ConfigError("sweep: p_avg sweep requires a p_off/p_avg jammer spec");
      }
      cfg.jammer.p_avg = value;
      break;
    case SweepParam::dt_hat:
      if (value != std::floor(value)) {
        throw ConfigError("sweep: dt_hat values must be integers");
      }
      cfg.env.dt_hat = static_cast<int>(value);
      break;
    case SweepParam::t_harvest:
      if (value != std::floor(value)) {
        throw ConfigError("sweep: t_harvest values must be integers");
      }
      cfg.greedy.t_harvest = static_cast<int>(value);
      break;
  }
  try {
    validate_config(cfg);
  } catch (const ConfigError& e) {
    throw ConfigError("sweep: " + sweep_param_name(param) + "=" +
                      format_double(value) + ": " + e.what());
  }
  return cfg;
}

SweepCell aggregate(const std::string& agent, int metric,
                    const std::vector<CellSample>& samples) {
  std::vector<double> xs;
  xs.reserve(samples.size());
  for (const auto& s : samples) xs.push_back(metric_of(s, metric));
  SweepCell cell;
  cell.agent = agent;
  cell.metric = kMetrics[metric];
  cell.n_seeds = static_cast<int>(samples.size());
  mean_stddev(xs, cell.mean, cell.stddev);
  return cell;
}

}  // namespace

SweepResult sweep(SweepParam param, const std::vector<double>& values,
                  const RunConfig& base) {
  if (values.empty()) throw ConfigError("sweep: no values given");

  SweepResult result;
  result.param = param;
  const int num_values = static_cast<int>(values.size());
  const int seeds = base.seeds;
  const int harvest_options = base.greedy.t_cycle + 1;

  // Validate every point up front so a bad value fails before any training.
  std::vector<RunConfig> configs;
  configs.reserve(num_values);
  for (double v : values) configs.push_back(apply_value(base, param, v));

  // dqn[value][seed]; greedy[value][seed][t_harvest]
  std::vector<std::vector<CellSample>> dqn(num_values,
                                           std::vector<CellSample>(seeds));
  std::vector<std::vector<std::vector<CellSample>>> greedy(
      num_values, std::vector<std::vector<CellSample>>(
                      seeds, std::vector<CellSample>(harvest_options)));

  if (param == SweepParam::t_harvest) {
    // The learner never sees t_harvest, so train once per seed and reuse
    // the result at every swept value.
    std::vector<CellSample> shared_dqn(seeds);
    parallel_for(seeds, [&](int si) {
      const std::uint64_t run_seed = derive_run_seed(base.base_seed, si);
      RunConfig train_cfg = base;
      train_cfg.agent = AgentKind::dqn;
      const TrainResult trained = run_training(train_cfg, run_seed);
      shared_dqn[si] =
          sample_from(evaluate(trained.policy, train_cfg, run_seed, base.eval_slots));
    });
    parallel_for(num_values * seeds, [&](int job) {
      const int vi = job / seeds;
      const int si = job % seeds;
      const std::uint64_t run_seed = derive_run_seed(base.base_seed, si);
      const RunConfig& cfg = configs[vi];
      dqn[vi][si] = shared_dqn[si];
      GreedyConfig gc = cfg.greedy;
      const Metrics m =
          evaluate(greedy_policy(gc), cfg, run_seed, cfg.eval_slots);
      greedy[vi][si][gc.t_harvest] = sample_from(m);
    });
  } else {
    parallel_for(num_values * seeds, [&](int job) {
      const int vi = job / seeds;
      const int si = job % seeds;
      const std::uint64_t run_seed = derive_run_seed(base.base_seed, si);
      RunConfig cfg = configs[vi];
      cfg.agent = AgentKind::dqn;
      const TrainResult trained = run_training(cfg, run_seed);
      dqn[vi][si] =
          sample_from(evaluate(trained.policy, cfg, run_seed, cfg.eval_slots));
      for (int h = 0; h < harvest_options; ++h) {
        GreedyConfig gc{cfg.greedy.t_cycle, h};
        greedy[vi][si][h] = sample_from(
            evaluate(greedy_policy(gc), cfg, run_seed, cfg.eval_slots));
      }
    });
  }

  result.rows.resize(num_values);
  for (int vi = 0; vi < num_values; ++vi) {
    SweepRow& row = result.rows[vi];
    row.value = values[vi];
    for (int metric = 0; metric < 3; ++metric) {
      row.cells.push_back(aggregate("dqn", metric, dqn[vi]));
    }
    const int configured_h = configs[vi].greedy.t_harvest;
    std::vector<CellSample> configured(seeds);
    for (int si = 0; si < seeds; ++si) configured[si] = greedy[vi][si][configured_h];
    for (int metric = 0; metric < 3; ++metric) {
      row.cells.push_back(aggregate("greedy", metric, configured));
    }
  }

  // greedy-best: the strongest harvest split per metric. For the
  // t_harvest sweep the candidates are the swept values themselves, so the
  // best cell is shared by every row.
  if (param == SweepParam::t_harvest) {
    for (int metric = 0; metric < 3; ++metric) {
      int best_vi = 0;
      double best_mean = 0.0;
      SweepCell best_cell;
      for (int vi = 0; vi < num_values; ++vi) {
        const int h = configs[vi].greedy.t_harvest;
        std::vector<CellSample> samples(seeds);
        for (int si = 0; si < seeds; ++si) samples[si] = greedy[vi][si][h];
        SweepCell cell = aggregate("greedy-best", metric, samples);
        if (vi == 0 || better(metric, cell.mean, best_mean)) {
          best_mean = cell.mean;
          best_cell = cell;
          best_vi = vi;
        }
      }
      (void)best_vi;
      for (auto& row : result.rows) row.cells.push_back(best_cell);
    }
  } else {
    for (int vi = 0; vi < num_values; ++vi) {
      for (int metric = 0; metric < 3; ++metric) {
        double best_mean = 0.0;
        SweepCell best_cell;
        for (int h = 0; h < harvest_options; ++h) {
          std::vector<CellSample> samples(seeds);
          for (int si = 0; si < seeds; ++si) samples[si] = greedy[vi][si][h];
          SweepCell cell = aggregate("greedy-best", metric, samples);
          if (h == 0 || better(metric, cell.mean, best_mean)) {
            best_mean = cell.mean;
            best_cell = cell;
          }
        }
        result.rows[vi].cells.push_back(best_cell);
      }
    }
  }

  return result;
}

CsvTable sweep_to_csv(const SweepResult& result) {
  CsvTable table;
  table.header = {"param", "value", "agent", "metric", "mean", "stddev", "n_seeds"};
  const std::string param = sweep_param_name(result.param);
  for (const auto& row : result.rows) {
    for (const auto& cell : row.cells) {
      table.rows.push_back({param, format_double(row.value), cell.agent,
                            cell.metric, format_double(cell.mean),
                            format_double(cell.stddev),
                            std::to_string(cell.n_seeds)});
    }
  }
  return table;
}

}  // namespace antijam
