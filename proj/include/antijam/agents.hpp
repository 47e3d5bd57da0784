#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "antijam/env.hpp"
#include "antijam/nn.hpp"
#include "antijam/rng.hpp"

namespace antijam {

struct DQNConfig {
  double learning_rate = 0.0001;
  double discount = 0.9;
  int replay_capacity = 10000;
  int batch_size = 32;
  int target_update_period = 5000;
  double eps_start = 1.0;
  double eps_end = 0.01;
  double eps_decay = 0.9999;      // multiplicative, per environment step
  int learn_start = 1000;         // stored transitions before training begins
  std::vector<int> hidden_sizes = {64, 64};
  double grad_clip = 0.0;         // global L2 cap, 0 disables
};

void validate_dqn(const DQNConfig& cfg);

// Epsilon after k decay steps.
double epsilon_at(const DQNConfig& cfg, long long steps);

struct Transition {
  std::array<double, 3> s{};
  int a = 0;
  double r = 0.0;
  std::array<double, 3> s2{};
};

// Fixed-capacity ring; once full the oldest entry is overwritten first.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(int capacity);

  void push(const Transition& t);
  int size() const { return size_; }
  int capacity() const { return capacity_; }
  const Transition& at(int i) const { return storage_[i]; }

  // n uniform draws (with replacement) over the valid entries.
  void sample(int n, Rng& rng, std::vector<const Transition*>& out) const;

 private:
  int capacity_ = 0;
  int size_ = 0;
  int cursor_ = 0;
  std::vector<Transition> storage_;
};

// Epsilon-greedy action from the network's Q-values; exploitation breaks
// ties toward the lowest action index.
Action dqn_act(const MLP& net, const State& s, double epsilon,
               const EnvConfig& env, Rng& rng);

// Bootstrap target for one transition: r + discount * max_a' Q'(s2, a').
double dqn_target(const MLP& target_net, const Transition& t, double discount);

// One mini-batch update. Returns the batch loss, or nullopt when the buffer
// holds fewer than max(batch_size, learn_start) transitions.
std::optional<double> dqn_train_step(MLP& net, const MLP& target_net,
                                     const ReplayBuffer& buffer,
                                     AdamState& opt, const DQNConfig& cfg,
                                     Rng& rng);

// Detached parameter copy.
MLP dqn_sync_target(const MLP& net);

// Complete learner wired the way the training loop drives it: one stored
// transition, one gradient step, periodic target sync, per-step epsilon
// decay.
class DQNAgent {
 public:
  DQNAgent(const EnvConfig& env, const DQNConfig& cfg, std::uint64_t seed);

  Action act(const State& s);
  void observe(const State& s, const Action& a, double reward, const State& s2);

  double epsilon() const { return epsilon_at(cfg_, steps_); }
  long long steps() const { return steps_; }
  long long sync_count() const { return sync_count_; }
  double last_loss() const { return last_loss_; }
  const MLP& net() const { return net_; }
  const EnvConfig& env() const { return env_; }

 private:
  EnvConfig env_;
  DQNConfig cfg_;
  MLP net_;
  MLP target_;
  AdamState opt_;
  ReplayBuffer buffer_;
  Rng rng_;
  long long steps_ = 0;
  long long sync_count_ = 0;
  double last_loss_ = 0.0;
};

// Dense tabular action values.
struct QTable {
  int num_states = 0;
  int num_actions = 0;
  double alpha = 0.1;
  double discount = 0.9;
  std::vector<double> q;  // row-major, state * num_actions + action

  QTable() = default;
  QTable(int states, int actions, double alpha, double discount);

  double& at(int s, int a) { return q[static_cast<size_t>(s) * num_actions + a]; }
  double at(int s, int a) const { return q[static_cast<size_t>(s) * num_actions + a]; }
  int argmax(int s) const;  // lowest index wins ties
  double max(int s) const;
};

// Q(s,a) += alpha * (r + discount * max_a' Q(s',a') - Q(s,a)).
void qlearning_update(QTable& table, int s, int a, double r, int s_next);

// Row-major plain-text dump with a dimension header.
void save_qtable(const QTable& table, const std::string& path);
QTable load_qtable(const std::string& path);

class QLearningAgent {
 public:
  QLearningAgent(const EnvConfig& env, double alpha, const DQNConfig& shared,
                 std::uint64_t seed);

  Action act(const State& s);
  void observe(const State& s, const Action& a, double reward, const State& s2);

  double epsilon() const { return epsilon_at(shared_, steps_); }
  const QTable& table() const { return table_; }

 private:
  EnvConfig env_;
  DQNConfig shared_;  // epsilon schedule and discount shared with DQN
  QTable table_;
  Rng rng_;
  long long steps_ = 0;
};

struct GreedyConfig {
  int t_cycle = 10;
  int t_harvest = 3;
};

void validate_greedy(const GreedyConfig& cfg);

// Clear channel: always AT. Jammed: EH for the first t_harvest slots of
// each t_cycle window, AmBC for the rest. phase_counter counts consecutive
// jammed slots since the burst began.
Action greedy_act(const State& s, int phase_counter, const GreedyConfig& cfg);

// Stateful wrapper that maintains the phase counter (reset on every clear
// slot).
class GreedyAgent {
 public:
  explicit GreedyAgent(const GreedyConfig& cfg) : cfg_(cfg) {}

  Action act(const State& s);
  void reset() { counter_ = 0; }

 private:
  GreedyConfig cfg_;
  int counter_ = 0;
};

// Uniform over the action space.
Action random_act(int num_ra_levels, Rng& rng);

}  // namespace antijam
