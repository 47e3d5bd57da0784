#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "antijam/config.hpp"
#include "antijam/oracle.hpp"

namespace antijam {

struct Metrics {
  double avg_throughput = 0.0;   // delivered packets per slot
  double packet_loss_rate = 0.0; // dropped / arrived
  double pdr = 1.0;              // delivered / arrived (1 when nothing arrived)
  long long delivered = 0;
  long long dropped = 0;
  long long arrived = 0;
  long long slots = 0;
  int initial_buffer = 0;
  int final_buffer = 0;
  std::vector<double> reward_curve;  // mean reward per window
};

// delivered + dropped + (final buffer - initial buffer) == arrived
bool accounting_holds(const Metrics& m);

// A policy maps states to actions; stateful policies (greedy's phase
// counter, random's draws) carry their state in the closure.
using PolicyFn = std::function<Action(const State&, Rng&)>;

struct TrainResult {
  Metrics metrics;
  PolicyFn policy;                   // exploration disabled
  std::shared_ptr<const MLP> net;    // dqn only
  std::shared_ptr<const QTable> table;  // qlearning only
};

// Runs cfg.training_slots slots of the configured learner, fully
// deterministic given run_seed. Learning-free agents (greedy, random,
// oracle-policy) run the same loop without updates.
TrainResult run_training(const RunConfig& cfg, std::uint64_t run_seed);

// Runs cfg.eval_slots slots of a fixed policy on fresh streams.
Metrics evaluate(const PolicyFn& policy, const RunConfig& cfg,
                 std::uint64_t run_seed, long long slots);

// Ready-made policies.
PolicyFn greedy_policy(const GreedyConfig& cfg);
PolicyFn random_policy(int num_ra_levels);
PolicyFn table_policy(std::shared_ptr<const QTable> table, const EnvConfig& env);
PolicyFn net_policy(std::shared_ptr<const MLP> net, const EnvConfig& env);
PolicyFn fixed_policy(std::vector<int> action_per_state, const EnvConfig& env);

// Builds the exact model for cfg and solves it. Used by the oracle-policy
// agent, the oracle CLI command, and the acceptance suite.
struct OracleReport {
  TransitionModel model;
  Solution discounted;  // value iteration at cfg.dqn.discount
  Solution average;     // relative value iteration
  double discounted_policy_gain = 0.0;  // gain of the discounted-optimal policy
};

OracleReport solve_oracle(const RunConfig& cfg);

// Plain-text solution table: gain, then one "j d e action value" row per
// state.
void write_solution_table(const Solution& solution, const EnvConfig& env,
                          const std::string& path);

}  // namespace antijam
