#include "antijam/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace antijam {

namespace {

// Transformed step weight for the average-reward solvers. Mixing each
// transition with a self-loop makes every policy's chain aperiodic without
// moving the optimal policy; the transformed gain is tau times the true one.
constexpr double kLazyTau = 0.5;

struct LevelDist {
  std::vector<std::pair<int, double>> clear;   // level distribution when j == 0
  std::vector<std::pair<int, double>> jammed;  // conditional on j == 1
  double p_jam_next = 0.0;                     // P(j' = 1), iid across slots
};

LevelDist level_distributions(const JammerProcess& jammer) {
  const auto& weights = jammer.weights();
  LevelDist out;
  out.clear.emplace_back(0, 1.0);
  out.p_jam_next = 1.0 - weights[0];

  double nonzero_mass = 0.0;
  for (size_t k = 1; k < weights.size(); ++k) nonzero_mass += weights[k];
  if (nonzero_mass > 0.0) {
    for (size_t k = 1; k < weights.size(); ++k) {
      if (weights[k] > 0.0) {
        out.jammed.emplace_back(static_cast<int>(k), weights[k] / nonzero_mass);
      }
    }
  } else {
    // The jammer never transmits, so jammed states are unreachable; a
    // uniform conditional keeps their rows well formed anyway.
    const size_t n = weights.size() - 1;
    for (size_t k = 1; k < weights.size(); ++k) {
      out.jammed.emplace_back(static_cast<int>(k), 1.0 / n);
    }
  }
  return out;
}

int greedy_action(const TransitionModel& model, int s,
                  const std::vector<double>& v, double gamma) {
  int best_a = 0;
  double best_q = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < model.num_actions; ++a) {
    const auto& row = model.row(s, a);
    double q = row.expected_reward;
    for (const auto& [s2, p] : row.next) q += gamma * p * v[s2];
    if (q > best_q) {
      best_q = q;
      best_a = a;
    }
  }
  return best_a;
}

}  // namespace

TransitionModel build_model(const EnvConfig& env, const JammerProcess& jammer) {
  const auto& levels = jammer.levels();
  validate_env(env, static_cast<int>(levels.size()));
  if (levels.size() < 2) {
    throw std::domain_error("build_model: jammer needs at least one nonzero level");
  }

  const LevelDist dist = level_distributions(jammer);
  TransitionModel model;
  model.num_states = env.num_states();
  model.num_actions = env.num_actions();
  model.rows.resize(static_cast<size_t>(model.num_states) * model.num_actions);

  std::vector<double> acc(model.num_states, 0.0);
  std::vector<int> touched;

  for (int si = 0; si < model.num_states; ++si) {
    const State s = state_from_index(si, env);
    const auto& level_dist = s.j == 0 ? dist.clear : dist.jammed;
    for (int ai = 0; ai < model.num_actions; ++ai) {
      const Action a = Action::from_index(ai, static_cast<int>(env.ra.levels.size()));
      auto& row = model.row(si, ai);
      touched.clear();

      for (const auto& [level, p_level] : level_dist) {
        const StepOutcome base = step(s, a, level, 0, 0, env);
        row.expected_reward += p_level * base.reward;

        const int headroom = env.d_max - base.next.d;
        const auto pmf = arrival_pmf_truncated(env.lambda, headroom);
        for (int k = 0; k <= headroom; ++k) {
          if (pmf[k] == 0.0) continue;
          const int d2 = base.next.d + k;
          for (int j2 = 0; j2 <= 1; ++j2) {
            const double pj = j2 == 1 ? dist.p_jam_next : 1.0 - dist.p_jam_next;
            if (pj == 0.0) continue;
            const int s2 = state_index(State{j2, d2, base.next.e}, env);
            if (acc[s2] == 0.0) touched.push_back(s2);
            acc[s2] += p_level * pmf[k] * pj;
          }
        }
      }

      std::sort(touched.begin(), touched.end());
      row.next.reserve(touched.size());
      for (int s2 : touched) {
        row.next.emplace_back(s2, acc[s2]);
        acc[s2] = 0.0;
      }
    }
  }
  return model;
}

std::vector<std::uint8_t> reachable_states(const TransitionModel& model, int start) {
  if (start < 0 || start >= model.num_states) {
    throw std::domain_error("reachable_states: start index out of range");
  }
  std::vector<std::uint8_t> seen(model.num_states, 0);
  std::queue<int> frontier;
  seen[start] = 1;
  frontier.push(start);
  while (!frontier.empty()) {
    const int s = frontier.front();
    frontier.pop();
    for (int a = 0; a < model.num_actions; ++a) {
      for (const auto& [s2, p] : model.row(s, a).next) {
        if (p > 0.0 && !seen[s2]) {
          seen[s2] = 1;
          frontier.push(s2);
        }
      }
    }
  }
  return seen;
}

Solution value_iteration(const TransitionModel& model, double gamma,
                         double tol, int max_iters) {
  if (gamma < 0.0 || gamma >= 1.0) {
    throw std::domain_error("value_iteration: gamma must be in [0, 1)");
  }
  if (tol <= 0.0) throw std::domain_error("value_iteration: tol must be > 0");

  Solution sol;
  sol.values.assign(model.num_states, 0.0);
  sol.reachable.assign(model.num_states, 1);
  std::vector<double> next(model.num_states, 0.0);

  for (int iter = 0; iter < max_iters; ++iter) {
    double residual = 0.0;
    for (int s = 0; s < model.num_states; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < model.num_actions; ++a) {
        const auto& row = model.row(s, a);
        double q = row.expected_reward;
        for (const auto& [s2, p] : row.next) q += gamma * p * sol.values[s2];
        best = std::max(best, q);
      }
      next[s] = best;
      residual = std::max(residual, std::abs(best - sol.values[s]));
    }
    sol.values.swap(next);
    sol.residual = residual;
    sol.residual_history.push_back(residual);
    sol.iterations = iter + 1;
    if (residual < tol) {
      sol.policy.resize(model.num_states);
      for (int s = 0; s < model.num_states; ++s) {
        sol.policy[s] = greedy_action(model, s, sol.values, gamma);
      }
      return sol;
    }
  }
  throw ConvergenceError("value_iteration: residual did not reach tolerance", sol.residual);
}

Solution relative_value_iteration(const TransitionModel& model, double tol,
                                  int max_iters, int start_state) {
  if (tol <= 0.0) throw std::domain_error("relative_value_iteration: tol must be > 0");

  Solution sol;
  sol.reachable = reachable_states(model, start_state);
  sol.fully_reachable =
      std::all_of(sol.reachable.begin(), sol.reachable.end(), [](auto r) { return r != 0; });
  sol.values.assign(model.num_states, 0.0);

  const double tau = kLazyTau;
  std::vector<double> next(model.num_states, 0.0);
  double gain_tau = 0.0;

  for (int iter = 0; iter < max_iters; ++iter) {
    double delta_max = -std::numeric_limits<double>::infinity();
    double delta_min = std::numeric_limits<double>::infinity();
    for (int s = 0; s < model.num_states; ++s) {
      if (!sol.reachable[s]) continue;
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < model.num_actions; ++a) {
        const auto& row = model.row(s, a);
        double q = row.expected_reward;
        for (const auto& [s2, p] : row.next) q += p * sol.values[s2];
        best = std::max(best, q);
      }
      const double lazy = tau * best + (1.0 - tau) * sol.values[s];
      next[s] = lazy;
      const double delta = lazy - sol.values[s];
      delta_max = std::max(delta_max, delta);
      delta_min = std::min(delta_min, delta);
    }
    gain_tau = 0.5 * (delta_max + delta_min);
    const double span = delta_max - delta_min;

    // Re-anchoring at the start state keeps the iterates bounded.
    const double ref = next[start_state];
    for (int s = 0; s < model.num_states; ++s) {
      if (sol.reachable[s]) sol.values[s] = next[s] - ref;
    }
    sol.residual = span;
    sol.residual_history.push_back(span);
    sol.iterations = iter + 1;
    if (span < tol) {
      sol.gain = gain_tau / tau;
      sol.policy.resize(model.num_states);
      for (int s = 0; s < model.num_states; ++s) {
        sol.policy[s] = greedy_action(model, s, sol.values, 1.0);
      }
      return sol;
    }
  }
  throw ConvergenceError("relative_value_iteration: span did not reach tolerance",
                         sol.residual);
}

std::vector<double> policy_evaluation(const TransitionModel& model,
                                      const std::vector<int>& policy,
                                      double gamma, double tol, int max_iters) {
  if (gamma < 0.0 || gamma >= 1.0) {
    throw std::domain_error("policy_evaluation: gamma must be in [0, 1)");
  }
  if (static_cast<int>(policy.size()) != model.num_states) {
    throw std::domain_error("policy_evaluation: policy length mismatch");
  }
  std::vector<double> v(model.num_states, 0.0);
  std::vector<double> next(model.num_states, 0.0);
  double residual = 0.0;
  for (int iter = 0; iter < max_iters; ++iter) {
    residual = 0.0;
    for (int s = 0; s < model.num_states; ++s) {
      const auto& row = model.row(s, policy[s]);
      double q = row.expected_reward;
      for (const auto& [s2, p] : row.next) q += gamma * p * v[s2];
      next[s] = q;
      residual = std::max(residual, std::abs(q - v[s]));
    }
    v.swap(next);
    if (residual < tol) return v;
  }
  throw ConvergenceError("policy_evaluation: residual did not reach tolerance", residual);
}

double policy_gain(const TransitionModel& model, const std::vector<int>& policy,
                   double tol, int max_iters, int start_state) {
  if (static_cast<int>(policy.size()) != model.num_states) {
    throw std::domain_error("policy_gain: policy length mismatch");
  }
  if (start_state < 0 || start_state >= model.num_states) {
    throw std::domain_error("policy_gain: start index out of range");
  }

  // Reachability under the fixed policy only.
  std::vector<std::uint8_t> seen(model.num_states, 0);
  std::queue<int> frontier;
  seen[start_state] = 1;
  frontier.push(start_state);
  while (!frontier.empty()) {
    const int s = frontier.front();
    frontier.pop();
    for (const auto& [s2, p] : model.row(s, policy[s]).next) {
      if (p > 0.0 && !seen[s2]) {
        seen[s2] = 1;
        frontier.push(s2);
      }
    }
  }

  const double tau = kLazyTau;
  std::vector<double> v(model.num_states, 0.0);
  std::vector<double> next(model.num_states, 0.0);
  double span = 0.0;
  for (int iter = 0; iter < max_iters; ++iter) {
    double delta_max = -std::numeric_limits<double>::infinity();
    double delta_min = std::numeric_limits<double>::infinity();
    for (int s = 0; s < model.num_states; ++s) {
      if (!seen[s]) continue;
      const auto& row = model.row(s, policy[s]);
      double q = row.expected_reward;
      for (const auto& [s2, p] : row.next) q += p * v[s2];
      const double lazy = tau * q + (1.0 - tau) * v[s];
      next[s] = lazy;
      const double delta = lazy - v[s];
      delta_max = std::max(delta_max, delta);
      delta_min = std::min(delta_min, delta);
    }
    span = delta_max - delta_min;
    const double ref = next[start_state];
    for (int s = 0; s < model.num_states; ++s) {
      if (seen[s]) v[s] = next[s] - ref;
    }
    if (span < tol) return 0.5 * (delta_max + delta_min) / tau;
  }
  throw ConvergenceError("policy_gain: span did not reach tolerance", span);
}

}  // namespace antijam
