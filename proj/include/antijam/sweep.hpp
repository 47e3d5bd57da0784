#pragma once

#include <string>
#include <vector>

#include "antijam/csv.hpp"
#include "antijam/sim.hpp"

namespace antijam {

enum class SweepParam { p_avg, dt_hat, t_harvest };

std::string sweep_param_name(SweepParam p);
SweepParam sweep_param_from_name(const std::string& name);

struct SweepCell {
  std::string agent;   // "dqn", "greedy-best", "greedy"
  std::string metric;  // "throughput", "loss", "pdr"
  double mean = 0.0;
  double stddev = 0.0;
  int n_seeds = 0;
};

struct SweepRow {
  double value = 0.0;
  std::vector<SweepCell> cells;
};

struct SweepResult {
  SweepParam param = SweepParam::p_avg;
  std::vector<SweepRow> rows;

  const SweepCell* find(double value, const std::string& agent,
                        const std::string& metric) const;
};

// Trains/evaluates the DQN and evaluates the greedy baseline at each value
// of the swept parameter, cfg.seeds seeds per cell. For p_avg and dt_hat
// the greedy baseline is evaluated at every t_harvest in [0, t_cycle] and
// its per-metric best is recorded; for t_harvest the greedy is evaluated
// at the swept value and the DQN (which does not depend on it) is trained
// once per seed. Throws ConfigError for infeasible values.
SweepResult sweep(SweepParam param, const std::vector<double>& values,
                  const RunConfig& cfg);

// param,value,agent,metric,mean,stddev,n_seeds
CsvTable sweep_to_csv(const SweepResult& result);

// Per-seed mean and sample standard deviation; order-invariant.
void mean_stddev(const std::vector<double>& xs, double& mean, double& stddev);

}  // namespace antijam
