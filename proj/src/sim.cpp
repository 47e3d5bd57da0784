#include "antijam/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace antijam {

namespace {

// Per-run stream labels. Training and evaluation use disjoint labels so a
// policy is never scored on the trace it learned from; jam/arrival streams
// depend only on (run_seed, label), so every agent sees the same
// environment trace for a given seed.
constexpr std::uint64_t kTrainJam = 101;
constexpr std::uint64_t kTrainArrivals = 102;
constexpr std::uint64_t kTrainAgent = 103;
constexpr std::uint64_t kEvalJam = 201;
constexpr std::uint64_t kEvalArrivals = 202;
constexpr std::uint64_t kEvalAgent = 203;

int argmax_lowest(const std::vector<double>& v) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

struct SlotAccumulator {
  Metrics metrics;
  double window_sum = 0.0;
  long long window_fill = 0;
  int window = 1;

  explicit SlotAccumulator(int window_size, int initial_buffer)
      : window(window_size) {
    metrics.initial_buffer = initial_buffer;
  }

  void record(const StepOutcome& outcome) {
    metrics.delivered += outcome.delivered;
    metrics.dropped += outcome.dropped;
    metrics.arrived += outcome.arrived;
    metrics.slots += 1;
    window_sum += outcome.reward;
    if (++window_fill == window) {
      metrics.reward_curve.push_back(window_sum / window);
      window_sum = 0.0;
      window_fill = 0;
    }
  }

  Metrics finish(int final_buffer) {
    metrics.final_buffer = final_buffer;
    if (metrics.slots > 0) {
      metrics.avg_throughput =
          static_cast<double>(metrics.delivered) / metrics.slots;
    }
    if (metrics.arrived > 0) {
      metrics.packet_loss_rate =
          static_cast<double>(metrics.dropped) / metrics.arrived;
      metrics.pdr = static_cast<double>(metrics.delivered) / metrics.arrived;
    } else {
      metrics.packet_loss_rate = 0.0;
      metrics.pdr = 1.0;
    }
    return metrics;
  }
};

State initial_state(const EnvConfig& env, int first_level) {
  return State{first_level > 0 ? 1 : 0, 0, env.e_max / 2};
}

// Learner-facing view of one agent kind; fixed policies go through the
// PolicyFn overload below instead.
template <typename Agent>
Metrics drive(Agent& agent, const RunConfig& cfg, const JammerProcess& jammer,
              std::uint64_t run_seed, long long slots, std::uint64_t jam_label,
              std::uint64_t arrivals_label) {
  Rng jam_rng(derive_run_seed(run_seed, jam_label));
  Rng arrivals_rng(derive_run_seed(run_seed, arrivals_label));

  int level = sample_level(jammer, jam_rng);
  State s = initial_state(cfg.env, level);
  SlotAccumulator acc(cfg.reward_window, s.d);

  for (long long t = 0; t < slots; ++t) {
    const Action a = agent.act(s);
    const int arrivals = sample_arrivals(cfg.env.lambda, arrivals_rng);
    const int next_level = sample_level(jammer, jam_rng);
    const StepOutcome outcome = step(s, a, level, arrivals, next_level, cfg.env);
    agent.observe(s, a, outcome.reward, outcome.next);
    acc.record(outcome);
    s = outcome.next;
    level = next_level;
  }
  return acc.finish(s.d);
}

// Adapts a PolicyFn to the agent interface (no learning).
struct PolicyAgent {
  const PolicyFn& policy;
  Rng& rng;
  Action act(const State& s) { return policy(s, rng); }
  void observe(const State&, const Action&, double, const State&) {}
};

}  // namespace

bool accounting_holds(const Metrics& m) {
  return m.delivered + m.dropped + (m.final_buffer - m.initial_buffer) ==
         m.arrived;
}

PolicyFn greedy_policy(const GreedyConfig& cfg) {
  auto agent = std::make_shared<GreedyAgent>(cfg);
  return [agent](const State& s, Rng&) { return agent->act(s); };
}

PolicyFn random_policy(int num_ra_levels) {
  return [num_ra_levels](const State&, Rng& rng) {
    return random_act(num_ra_levels, rng);
  };
}

PolicyFn table_policy(std::shared_ptr<const QTable> table, const EnvConfig& env) {
  const int m = static_cast<int>(env.ra.levels.size());
  return [table, env, m](const State& s, Rng&) {
    return Action::from_index(table->argmax(state_index(s, env)), m);
  };
}

PolicyFn net_policy(std::shared_ptr<const MLP> net, const EnvConfig& env) {
  const int m = static_cast<int>(env.ra.levels.size());
  return [net, env, m](const State& s, Rng&) {
    const auto q = forward(*net, state_features(s, env));
    return Action::from_index(argmax_lowest(q), m);
  };
}

PolicyFn fixed_policy(std::vector<int> action_per_state, const EnvConfig& env) {
  const int m = static_cast<int>(env.ra.levels.size());
  auto actions = std::make_shared<std::vector<int>>(std::move(action_per_state));
  return [actions, env, m](const State& s, Rng&) {
    return Action::from_index((*actions)[state_index(s, env)], m);
  };
}

TrainResult run_training(const RunConfig& cfg, std::uint64_t run_seed) {
  const JammerProcess jammer = make_jammer(cfg);
  const std::uint64_t agent_seed = derive_run_seed(run_seed, kTrainAgent);
  TrainResult result;

  switch (cfg.agent) {
    case AgentKind::dqn: {
      DQNAgent agent(cfg.env, cfg.dqn, agent_seed);
      result.metrics = drive(agent, cfg, jammer, run_seed, cfg.training_slots,
                             kTrainJam, kTrainArrivals);
      result.net = std::make_shared<MLP>(agent.net());
      result.policy = net_policy(result.net, cfg.env);
      break;
    }
    case AgentKind::qlearning: {
      QLearningAgent agent(cfg.env, cfg.qlearning_alpha, cfg.dqn, agent_seed);
      result.metrics = drive(agent, cfg, jammer, run_seed, cfg.training_slots,
                             kTrainJam, kTrainArrivals);
      result.table = std::make_shared<QTable>(agent.table());
      result.policy = table_policy(result.table, cfg.env);
      break;
    }
    case AgentKind::greedy: {
      PolicyFn policy = greedy_policy(cfg.greedy);
      Rng rng(agent_seed);
      PolicyAgent agent{policy, rng};
      result.metrics = drive(agent, cfg, jammer, run_seed, cfg.training_slots,
                             kTrainJam, kTrainArrivals);
      result.policy = greedy_policy(cfg.greedy);
      break;
    }
    case AgentKind::random: {
      PolicyFn policy = random_policy(static_cast<int>(cfg.env.ra.levels.size()));
      Rng rng(agent_seed);
      PolicyAgent agent{policy, rng};
      result.metrics = drive(agent, cfg, jammer, run_seed, cfg.training_slots,
                             kTrainJam, kTrainArrivals);
      result.policy = policy;
      break;
    }
    case AgentKind::oracle_policy: {
      const OracleReport report = solve_oracle(cfg);
      PolicyFn policy = fixed_policy(report.average.policy, cfg.env);
      Rng rng(agent_seed);
      PolicyAgent agent{policy, rng};
      result.metrics = drive(agent, cfg, jammer, run_seed, cfg.training_slots,
                             kTrainJam, kTrainArrivals);
      result.policy = policy;
      break;
    }
  }
  return result;
}

Metrics evaluate(const PolicyFn& policy, const RunConfig& cfg,
                 std::uint64_t run_seed, long long slots) {
  const JammerProcess jammer = make_jammer(cfg);
  Rng rng(derive_run_seed(run_seed, kEvalAgent));
  PolicyAgent agent{policy, rng};
  return drive(agent, cfg, jammer, run_seed, slots, kEvalJam, kEvalArrivals);
}

OracleReport solve_oracle(const RunConfig& cfg) {
  const JammerProcess jammer = make_jammer(cfg);
  OracleReport report;
  report.model = build_model(cfg.env, jammer);

  const int start_j = jammer.weights()[0] > 0.0 ? 0 : 1;
  const int start =
      state_index(State{start_j, 0, cfg.env.e_max / 2}, cfg.env);

  report.discounted = value_iteration(report.model, cfg.dqn.discount);
  report.average = relative_value_iteration(report.model, 1e-9, 1000000, start);
  report.discounted_policy_gain =
      policy_gain(report.model, report.discounted.policy, 1e-9, 1000000, start);
  return report;
}

void write_solution_table(const Solution& solution, const EnvConfig& env,
                          const std::string& path) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("write_solution_table: cannot open " + path);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", solution.gain);
  file << "gain " << buf << '\n';
  file << "j d e action value\n";
  const int m = static_cast<int>(env.ra.levels.size());
  for (int si = 0; si < static_cast<int>(solution.policy.size()); ++si) {
    const State s = state_from_index(si, env);
    const Action a = Action::from_index(solution.policy[si], m);
    std::snprintf(buf, sizeof(buf), "%.12g", solution.values[si]);
    file << s.j << ' ' << s.d << ' ' << s.e << ' ' << a.name() << ' ' << buf
         << '\n';
  }
  if (!file) throw std::runtime_error("write_solution_table: write failed for " + path);
}

}  // namespace antijam
