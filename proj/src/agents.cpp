#include "antijam/agents.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace antijam {

void validate_dqn(const DQNConfig& cfg) {
  if (cfg.learning_rate <= 0.0) throw std::domain_error("dqn: learning_rate must be > 0");
  if (cfg.discount < 0.0 || cfg.discount >= 1.0) throw std::domain_error("dqn: discount must be in [0, 1)");
  if (cfg.replay_capacity < 1) throw std::domain_error("dqn: replay_capacity must be >= 1");
  if (cfg.batch_size < 1) throw std::domain_error("dqn: batch_size must be >= 1");
  if (cfg.batch_size > cfg.replay_capacity) throw std::domain_error("dqn: batch_size exceeds replay_capacity");
  if (cfg.target_update_period < 1) throw std::domain_error("dqn: target_update_period must be >= 1");
  if (cfg.eps_start < 0.0 || cfg.eps_start > 1.0) throw std::domain_error("dqn: eps_start must be in [0, 1]");
  if (cfg.eps_end < 0.0 || cfg.eps_end > cfg.eps_start) throw std::domain_error("dqn: eps_end must be in [0, eps_start]");
  if (cfg.eps_decay <= 0.0 || cfg.eps_decay > 1.0) throw std::domain_error("dqn: eps_decay must be in (0, 1]");
  if (cfg.learn_start < 0) throw std::domain_error("dqn: learn_start must be >= 0");
  if (cfg.grad_clip < 0.0) throw std::domain_error("dqn: grad_clip must be >= 0");
  if (cfg.hidden_sizes.empty()) throw std::domain_error("dqn: at least one hidden layer required");
  for (int h : cfg.hidden_sizes) {
    if (h < 1) throw std::domain_error("dqn: hidden sizes must be >= 1");
  }
}

double epsilon_at(const DQNConfig& cfg, long long steps) {
  if (steps < 0) throw std::domain_error("epsilon_at: negative step count");
  const double eps = cfg.eps_start * std::pow(cfg.eps_decay, static_cast<double>(steps));
  return std::max(eps, cfg.eps_end);
}

ReplayBuffer::ReplayBuffer(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::domain_error("replay buffer: capacity must be >= 1");
  storage_.resize(capacity);
}

void ReplayBuffer::push(const Transition& t) {
  storage_[cursor_] = t;
  cursor_ = (cursor_ + 1) % capacity_;
  if (size_ < capacity_) ++size_;
}

void ReplayBuffer::sample(int n, Rng& rng, std::vector<const Transition*>& out) const {
  if (size_ == 0) throw std::logic_error("replay buffer: sample from empty buffer");
  out.resize(n);
  for (int i = 0; i < n; ++i) {
    out[i] = &storage_[rng.below(static_cast<std::uint64_t>(size_))];
  }
}

namespace {

int argmax_lowest(const std::vector<double>& v) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

}  // namespace

Action dqn_act(const MLP& net, const State& s, double epsilon,
               const EnvConfig& env, Rng& rng) {
  // The exploration coin is always spent, so greedy evaluation (epsilon 0)
  // and training draw identical stream positions per step.
  const double coin = rng.uniform();
  if (coin < epsilon) {
    return random_act(static_cast<int>(env.ra.levels.size()), rng);
  }
  const auto f = state_features(s, env);
  const auto q = forward(net, f);
  return Action::from_index(argmax_lowest(q), static_cast<int>(env.ra.levels.size()));
}

double dqn_target(const MLP& target_net, const Transition& t, double discount) {
  const auto q2 = forward(target_net, t.s2);
  const double best = *std::max_element(q2.begin(), q2.end());
  return t.r + discount * best;
}

std::optional<double> dqn_train_step(MLP& net, const MLP& target_net,
                                     const ReplayBuffer& buffer,
                                     AdamState& opt, const DQNConfig& cfg,
                                     Rng& rng) {
  const int needed = std::max(cfg.batch_size, cfg.learn_start);
  if (buffer.size() < needed) return std::nullopt;

  static thread_local std::vector<const Transition*> picks;
  static thread_local std::vector<double> x, x2, targets;
  static thread_local std::vector<int> actions;
  static thread_local BatchWorkspace ws, ws2;
  static thread_local Params grad;

  buffer.sample(cfg.batch_size, rng, picks);
  const int n = cfg.batch_size;
  const int in = net.input_size();
  const int out = net.output_size();
  x.resize(static_cast<size_t>(n) * in);
  x2.resize(static_cast<size_t>(n) * in);
  actions.resize(n);
  targets.resize(n);
  for (int b = 0; b < n; ++b) {
    const Transition& t = *picks[b];
    std::copy(t.s.begin(), t.s.end(), x.begin() + static_cast<size_t>(b) * in);
    std::copy(t.s2.begin(), t.s2.end(), x2.begin() + static_cast<size_t>(b) * in);
    actions[b] = t.a;
  }

  const auto& q2 = forward_batch(target_net, x2.data(), n, ws2);
  for (int b = 0; b < n; ++b) {
    const double* row = q2.data() + static_cast<size_t>(b) * out;
    double best = row[0];
    for (int o = 1; o < out; ++o) best = std::max(best, row[o]);
    targets[b] = picks[b]->r + cfg.discount * best;
  }

  const double loss = loss_and_gradient_batch(net, x.data(), actions.data(),
                                              targets.data(), n, grad, ws);
  if (cfg.grad_clip > 0.0) {
    double sq = 0.0;
    for (const auto& w : grad.weights) for (double v : w) sq += v * v;
    for (const auto& b : grad.biases) for (double v : b) sq += v * v;
    const double norm = std::sqrt(sq);
    if (norm > cfg.grad_clip) {
      const double scale = cfg.grad_clip / norm;
      for (auto& w : grad.weights) for (double& v : w) v *= scale;
      for (auto& b : grad.biases) for (double& v : b) v *= scale;
    }
  }
  adam_step(net, grad, opt);
  return loss;
}

MLP dqn_sync_target(const MLP& net) { return net; }

namespace {

std::vector<int> dqn_layer_sizes(const EnvConfig& env, const DQNConfig& cfg) {
  std::vector<int> sizes;
  sizes.push_back(3);
  sizes.insert(sizes.end(), cfg.hidden_sizes.begin(), cfg.hidden_sizes.end());
  sizes.push_back(env.num_actions());
  return sizes;
}

}  // namespace

DQNAgent::DQNAgent(const EnvConfig& env, const DQNConfig& cfg, std::uint64_t seed)
    : env_(env),
      cfg_(cfg),
      net_([&] {
        validate_dqn(cfg);
        Rng init_rng(seed);
        return mlp_init(dqn_layer_sizes(env, cfg), init_rng);
      }()),
      target_(net_),
      opt_(make_adam(net_, cfg.learning_rate)),
      buffer_(cfg.replay_capacity),
      rng_(splitmix64(seed ^ 0x9e3779b97f4a7c15ull)) {}

Action DQNAgent::act(const State& s) {
  return dqn_act(net_, s, epsilon(), env_, rng_);
}

void DQNAgent::observe(const State& s, const Action& a, double reward,
                       const State& s2) {
  Transition t;
  t.s = state_features(s, env_);
  t.a = a.to_index();
  t.r = reward;
  t.s2 = state_features(s2, env_);
  buffer_.push(t);

  if (auto loss = dqn_train_step(net_, target_, buffer_, opt_, cfg_, rng_)) {
    last_loss_ = *loss;
  }
  ++steps_;
  if (steps_ % cfg_.target_update_period == 0) {
    target_ = dqn_sync_target(net_);
    ++sync_count_;
  }
}

QTable::QTable(int states, int actions, double alpha_, double discount_)
    : num_states(states), num_actions(actions), alpha(alpha_), discount(discount_) {
  if (states < 1 || actions < 1) throw std::domain_error("qtable: dimensions must be >= 1");
  if (alpha_ <= 0.0 || alpha_ > 1.0) throw std::domain_error("qtable: alpha must be in (0, 1]");
  if (discount_ < 0.0 || discount_ >= 1.0) throw std::domain_error("qtable: discount must be in [0, 1)");
  q.assign(static_cast<size_t>(states) * actions, 0.0);
}

int QTable::argmax(int s) const {
  const double* row = q.data() + static_cast<size_t>(s) * num_actions;
  int best = 0;
  for (int a = 1; a < num_actions; ++a) {
    if (row[a] > row[best]) best = a;
  }
  return best;
}

double QTable::max(int s) const {
  const double* row = q.data() + static_cast<size_t>(s) * num_actions;
  return *std::max_element(row, row + num_actions);
}

void qlearning_update(QTable& table, int s, int a, double r, int s_next) {
  double& cell = table.at(s, a);
  cell += table.alpha * (r + table.discount * table.max(s_next) - cell);
}

void save_qtable(const QTable& table, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("save_qtable: cannot open " + path);
  file << "qtable " << table.num_states << ' ' << table.num_actions << ' '
       << table.alpha << ' ' << table.discount << '\n';
  char buf[64];
  for (int s = 0; s < table.num_states; ++s) {
    for (int a = 0; a < table.num_actions; ++a) {
      std::snprintf(buf, sizeof(buf), "%.17g", table.at(s, a));
      file << buf << (a + 1 == table.num_actions ? '\n' : ' ');
    }
  }
  if (!file) throw std::runtime_error("save_qtable: write failed for " + path);
}

QTable load_qtable(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("load_qtable: cannot open " + path);
  std::string magic;
  file >> magic;
  if (magic != "qtable") throw std::runtime_error("load_qtable: bad header in " + path);
  int states = 0, actions = 0;
  double alpha = 0.0, discount = 0.0;
  if (!(file >> states >> actions >> alpha >> discount)) {
    throw std::runtime_error("load_qtable: bad header in " + path);
  }
  QTable table(states, actions, alpha, discount);
  for (auto& v : table.q) {
    if (!(file >> v)) throw std::runtime_error("load_qtable: truncated file");
  }
  return table;
}

QLearningAgent::QLearningAgent(const EnvConfig& env, double alpha,
                               const DQNConfig& shared, std::uint64_t seed)
    : env_(env),
      shared_(shared),
      table_(env.num_states(), env.num_actions(), alpha, shared.discount),
      rng_(splitmix64(seed ^ 0x9e3779b97f4a7c15ull)) {
  validate_dqn(shared);
}

Action QLearningAgent::act(const State& s) {
  const double coin = rng_.uniform();
  if (coin < epsilon()) {
    return random_act(static_cast<int>(env_.ra.levels.size()), rng_);
  }
  return Action::from_index(table_.argmax(state_index(s, env_)),
                            static_cast<int>(env_.ra.levels.size()));
}

void QLearningAgent::observe(const State& s, const Action& a, double reward,
                             const State& s2) {
  qlearning_update(table_, state_index(s, env_), a.to_index(), reward,
                   state_index(s2, env_));
  ++steps_;
}

void validate_greedy(const GreedyConfig& cfg) {
  if (cfg.t_cycle < 1) throw std::domain_error("greedy: t_cycle must be >= 1");
  if (cfg.t_harvest < 0 || cfg.t_harvest > cfg.t_cycle) {
    throw std::domain_error("greedy: t_harvest must be in [0, t_cycle]");
  }
}

Action greedy_act(const State& s, int phase_counter, const GreedyConfig& cfg) {
  if (s.j == 0) return Action{ActionKind::at};
  const int phase = phase_counter % cfg.t_cycle;
  if (phase < cfg.t_harvest) return Action{ActionKind::eh};
  return Action{ActionKind::ambc};
}

Action GreedyAgent::act(const State& s) {
  if (s.j == 0) {
    counter_ = 0;
    return greedy_act(s, 0, cfg_);
  }
  const Action a = greedy_act(s, counter_, cfg_);
  ++counter_;
  return a;
}

Action random_act(int num_ra_levels, Rng& rng) {
  const int n = 4 + num_ra_levels;
  return Action::from_index(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))),
                            num_ra_levels);
}

}  // namespace antijam
