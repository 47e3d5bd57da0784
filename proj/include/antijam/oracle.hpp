#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "antijam/channel.hpp"
#include "antijam/env.hpp"

namespace antijam {

// Exact MDP: transition probabilities and expected immediate reward per
// (state, action), with the jamming level and arrivals marginalized out.
struct TransitionModel {
  struct Row {
    std::vector<std::pair<int, double>> next;  // (state index, probability)
    double expected_reward = 0.0;
  };

  int num_states = 0;
  int num_actions = 0;
  std::vector<Row> rows;  // state * num_actions + action

  const Row& row(int s, int a) const {
    return rows[static_cast<size_t>(s) * num_actions + a];
  }
  Row& row(int s, int a) {
    return rows[static_cast<size_t>(s) * num_actions + a];
  }
};

TransitionModel build_model(const EnvConfig& env, const JammerProcess& jammer);

struct Solution {
  std::vector<double> values;
  std::vector<int> policy;
  double gain = 0.0;      // average reward per slot (relative VI only)
  double residual = 0.0;  // final Bellman residual (sup norm or span)
  int iterations = 0;
  std::vector<double> residual_history;
  std::vector<std::uint8_t> reachable;  // per-state reachability mask
  bool fully_reachable = true;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

// States reachable from `start` when every action's support is available.
std::vector<std::uint8_t> reachable_states(const TransitionModel& model, int start);

// Discounted Bellman optimality iteration to sup-norm residual < tol.
// Greedy policy extraction breaks ties toward the lowest action index.
// Throws ConvergenceError when max_iters is exhausted.
Solution value_iteration(const TransitionModel& model, double gamma,
                         double tol = 1e-10, int max_iters = 100000);

// Average-reward solver: returns the optimal gain and a greedy policy.
// Runs on the component reachable from start_state; fully_reachable is
// false (and `reachable` marks the component) when that is a strict subset.
Solution relative_value_iteration(const TransitionModel& model,
                                  double tol = 1e-9, int max_iters = 1000000,
                                  int start_state = 0);

// Discounted values of a fixed policy, iterated to successive-difference
// residual < tol.
std::vector<double> policy_evaluation(const TransitionModel& model,
                                      const std::vector<int>& policy,
                                      double gamma, double tol = 1e-10,
                                      int max_iters = 1000000);

// Average reward per slot of a fixed policy on the component reachable
// from start_state under that policy.
double policy_gain(const TransitionModel& model, const std::vector<int>& policy,
                   double tol = 1e-9, int max_iters = 1000000,
                   int start_state = 0);

}  // namespace antijam
