// Command-line front end: train, eval, sweep, oracle.
// Exit codes: 0 success, 1 configuration problem, 2 runtime failure.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "antijam/csv.hpp"
#include "antijam/sim.hpp"
#include "antijam/svg.hpp"
#include "antijam/sweep.hpp"

namespace {

using namespace antijam;

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Run configuration (JSON)")
      ->required();
  cmd->add_option("--seed", args.seed, "Override base_seed");
  cmd->add_option("--out", args.out_dir, "Override out_dir");
}

RunConfig load(const CommonArgs& args) {
  RunConfig cfg = load_config(args.config_path);
  if (args.seed) cfg.base_seed = *args.seed;
  if (args.out_dir) cfg.out_dir = *args.out_dir;
  std::filesystem::create_directories(cfg.out_dir);
  return cfg;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

CsvTable curve_table(const std::vector<Metrics>& per_seed, const RunConfig& cfg) {
  CsvTable table;
  table.header = {"step", "window_avg_reward", "agent", "seed"};
  const std::string agent = agent_name(cfg.agent);
  for (size_t si = 0; si < per_seed.size(); ++si) {
    const auto& curve = per_seed[si].reward_curve;
    for (size_t w = 0; w < curve.size(); ++w) {
      const long long step = static_cast<long long>(w + 1) * cfg.reward_window;
      table.rows.push_back({std::to_string(step), format_double(curve[w]),
                            agent, std::to_string(si)});
    }
  }
  return table;
}

std::vector<Series> curve_series(const std::vector<Metrics>& per_seed,
                                 const RunConfig& cfg) {
  std::vector<Series> series;
  for (size_t si = 0; si < per_seed.size(); ++si) {
    Series s;
    s.name = "seed " + std::to_string(si);
    const auto& curve = per_seed[si].reward_curve;
    for (size_t w = 0; w < curve.size(); ++w) {
      s.x.push_back(static_cast<double>((w + 1) * cfg.reward_window));
      s.y.push_back(curve[w]);
    }
    if (!s.x.empty()) series.push_back(std::move(s));
  }
  return series;
}

int cmd_train(const CommonArgs& args) {
  const RunConfig cfg = load(args);
  std::vector<Metrics> per_seed;
  for (int si = 0; si < cfg.seeds; ++si) {
    const std::uint64_t run_seed = derive_run_seed(cfg.base_seed, si);
    const TrainResult result = run_training(cfg, run_seed);
    per_seed.push_back(result.metrics);
    if (result.net) {
      save_mlp(*result.net,
               join_path(cfg.out_dir, "dqn_seed" + std::to_string(si) + ".txt"));
    }
    if (result.table) {
      save_qtable(*result.table, join_path(cfg.out_dir,
                                           "qtable_seed" + std::to_string(si) + ".txt"));
    }
    std::printf("seed %d: %lld slots, throughput %.4f, loss %.4f, pdr %.4f\n",
                si, result.metrics.slots, result.metrics.avg_throughput,
                result.metrics.packet_loss_rate, result.metrics.pdr);
  }
  emit_csv(curve_table(per_seed, cfg), join_path(cfg.out_dir, "train_curve.csv"));
  const auto series = curve_series(per_seed, cfg);
  if (!series.empty()) {
    emit_svg(series, "training slot", "mean reward per window",
             agent_name(cfg.agent) + " training reward",
             join_path(cfg.out_dir, "train_curve.svg"));
  }
  std::printf("wrote %s\n", join_path(cfg.out_dir, "train_curve.csv").c_str());
  return 0;
}

int cmd_eval(const CommonArgs& args) {
  const RunConfig cfg = load(args);
  CsvTable table;
  table.header = {"agent", "seed", "throughput", "loss", "pdr",
                  "delivered", "dropped", "arrived", "slots"};
  std::vector<double> thr, loss, pdr;
  for (int si = 0; si < cfg.seeds; ++si) {
    const std::uint64_t run_seed = derive_run_seed(cfg.base_seed, si);
    const TrainResult trained = run_training(cfg, run_seed);
    const Metrics m = evaluate(trained.policy, cfg, run_seed, cfg.eval_slots);
    table.rows.push_back({agent_name(cfg.agent), std::to_string(si),
                          format_double(m.avg_throughput),
                          format_double(m.packet_loss_rate),
                          format_double(m.pdr), std::to_string(m.delivered),
                          std::to_string(m.dropped), std::to_string(m.arrived),
                          std::to_string(m.slots)});
    thr.push_back(m.avg_throughput);
    loss.push_back(m.packet_loss_rate);
    pdr.push_back(m.pdr);
  }
  emit_csv(table, join_path(cfg.out_dir, "eval_metrics.csv"));
  double mean = 0.0, sd = 0.0;
  mean_stddev(thr, mean, sd);
  std::printf("throughput %.4f +- %.4f\n", mean, sd);
  mean_stddev(loss, mean, sd);
  std::printf("loss       %.4f +- %.4f\n", mean, sd);
  mean_stddev(pdr, mean, sd);
  std::printf("pdr        %.4f +- %.4f\n", mean, sd);
  std::printf("wrote %s\n", join_path(cfg.out_dir, "eval_metrics.csv").c_str());
  return 0;
}

std::vector<double> parse_values(const std::vector<std::string>& raw) {
  std::vector<double> values;
  for (const auto& token : raw) {
    size_t start = 0;
    while (start <= token.size()) {
      const size_t comma = token.find(',', start);
      const std::string piece =
          token.substr(start, comma == std::string::npos ? comma : comma - start);
      if (!piece.empty()) {
        try {
          size_t used = 0;
          const double v = std::stod(piece, &used);
          if (used != piece.size()) throw std::invalid_argument(piece);
          values.push_back(v);
        } catch (const std::exception&) {
          throw ConfigError("sweep: bad value '" + piece + "'");
        }
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return values;
}

int cmd_sweep(const CommonArgs& args, const std::string& param_name,
              const std::vector<std::string>& raw_values) {
  const RunConfig cfg = load(args);
  const SweepParam param = sweep_param_from_name(param_name);
  const std::vector<double> values = parse_values(raw_values);
  if (values.empty()) throw ConfigError("sweep: no values given");

  const SweepResult result = sweep(param, values, cfg);
  const std::string stem = "sweep_" + sweep_param_name(param);
  emit_csv(sweep_to_csv(result), join_path(cfg.out_dir, stem + ".csv"));

  const char* metrics[] = {"throughput", "loss", "pdr"};
  const char* y_labels[] = {"delivered packets per slot", "dropped / arrived",
                            "delivered / arrived"};
  for (int mi = 0; mi < 3; ++mi) {
    std::vector<Series> series;
    for (const std::string agent : {"dqn", "greedy", "greedy-best"}) {
      Series s;
      s.name = agent;
      for (const auto& row : result.rows) {
        const SweepCell* cell = result.find(row.value, agent, metrics[mi]);
        if (!cell) continue;
        s.x.push_back(row.value);
        s.y.push_back(cell->mean);
        s.stddev.push_back(cell->stddev);
      }
      if (!s.x.empty()) series.push_back(std::move(s));
    }
    emit_svg(series, sweep_param_name(param), y_labels[mi],
             std::string(metrics[mi]) + " vs " + sweep_param_name(param),
             join_path(cfg.out_dir, stem + "_" + metrics[mi] + ".svg"));
  }
  std::printf("wrote %s\n", join_path(cfg.out_dir, stem + ".csv").c_str());
  return 0;
}

int cmd_oracle(const CommonArgs& args) {
  const RunConfig cfg = load(args);
  const OracleReport report = solve_oracle(cfg);
  if (!report.average.fully_reachable) {
    int reachable = 0;
    for (auto r : report.average.reachable) reachable += r;
    std::fprintf(stderr,
                 "warning: model is reducible; solved the %d-state component "
                 "reachable from the start state\n",
                 reachable);
  }
  std::printf("average-reward gain: %.6f (iterations %d, span %.3g)\n",
              report.average.gain, report.average.iterations,
              report.average.residual);
  std::printf("discounted value at tolerance: iterations %d, residual %.3g\n",
              report.discounted.iterations, report.discounted.residual);
  std::printf("discounted-optimal policy gain: %.6f\n",
              report.discounted_policy_gain);
  write_solution_table(report.average, cfg.env,
                       join_path(cfg.out_dir, "oracle_average.txt"));
  write_solution_table(report.discounted, cfg.env,
                       join_path(cfg.out_dir, "oracle_discounted.txt"));
  std::printf("wrote %s\n", join_path(cfg.out_dir, "oracle_average.txt").c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Backscatter transmitter vs UAV jammer: training, evaluation, "
               "sweeps, and the exact solver"};
  app.require_subcommand(1);

  CommonArgs train_args, eval_args, sweep_args, oracle_args;
  std::string sweep_param;
  std::vector<std::string> sweep_values;

  CLI::App* train = app.add_subcommand("train", "Train the configured agent");
  add_common(train, train_args);
  CLI::App* eval = app.add_subcommand("eval", "Train then score on fresh streams");
  add_common(eval, eval_args);
  CLI::App* swp = app.add_subcommand("sweep", "Sweep one parameter");
  add_common(swp, sweep_args);
  swp->add_option("--param", sweep_param, "p_avg, dt_hat, or t_harvest")->required();
  swp->add_option("--values", sweep_values, "Comma-separated values")->required();
  CLI::App* oracle = app.add_subcommand("oracle", "Solve the exact model");
  add_common(oracle, oracle_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (train->parsed()) return cmd_train(train_args);
    if (eval->parsed()) return cmd_eval(eval_args);
    if (swp->parsed()) return cmd_sweep(sweep_args, sweep_param, sweep_values);
    if (oracle->parsed()) return cmd_oracle(oracle_args);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
