#pragma once

#include <array>
#include <string>
#include <vector>

#include "antijam/rng.hpp"

namespace antijam {

// Transmitter state: jamming flag, buffered packets, stored energy units.
struct State {
  int j = 0;
  int d = 0;
  int e = 0;

  bool operator==(const State&) const = default;
};

enum class ActionKind { idle, at, eh, ambc, at_ra };

// One of Idle / AT / EH / AmBC / AT-RA_m. Indexing is fixed:
// 0 Idle, 1 AT, 2 EH, 3 AmBC, 3+m AT-RA_m for m in [1, M].
struct Action {
  ActionKind kind = ActionKind::idle;
  int ra_level = 0;  // 1..M when kind == at_ra, 0 otherwise

  static Action from_index(int index, int num_ra_levels);
  int to_index() const;
  std::string name() const;

  bool operator==(const Action&) const = default;
};

struct RALevel {
  int packets = 0;      // packets delivered when the attempt succeeds
  int energy_cost = 0;  // energy units consumed by the attempt
};

struct RASpec {
  std::vector<RALevel> levels;  // indexed 1..M externally, 0-based here
};

struct EnvConfig {
  int d_max = 0;
  int e_max = 0;
  double lambda = 0.0;
  int dt_hat = 0;
  int at_cost_per_packet = 0;
  std::vector<int> eh_table;    // harvested units per jamming level index
  std::vector<int> ambc_table;  // backscatterable packets per level index
  RASpec ra;
  bool at_under_jamming_wastes_energy = true;

  int num_actions() const { return 4 + static_cast<int>(ra.levels.size()); }
  int num_states() const { return 2 * (d_max + 1) * (e_max + 1); }
};

// Throws std::domain_error when the config is unusable with a level set of
// the given size.
void validate_env(const EnvConfig& cfg, int num_levels);

// Bijection between states and [0, num_states).
int state_index(const State& s, const EnvConfig& cfg);
State state_from_index(int index, const EnvConfig& cfg);

// Network inputs in [0, 1]: (j, d / d_max, e / e_max).
std::array<double, 3> state_features(const State& s, const EnvConfig& cfg);

// Full accounting of one slot.
struct StepOutcome {
  State next;
  int reward = 0;  // equals delivered
  int delivered = 0;
  int dropped = 0;
  int arrived = 0;
  int energy_spent = 0;
  int energy_harvested = 0;
};

// One-slot transition. Event order: resolve the action at the current jam
// level, apply delivery and the energy delta, add arrivals (dropping
// overflow), then set the next jamming flag from next_jam_level.
// jam_level must be 0 exactly when s.j == 0.
StepOutcome step(const State& s, const Action& a, int jam_level, int arrivals,
                 int next_jam_level, const EnvConfig& cfg);

// Poisson packet arrivals for one slot.
int sample_arrivals(double lambda, Rng& rng);

// Poisson pmf truncated at `headroom`: exact for k < headroom, all tail mass
// lumped onto k = headroom. Returns headroom + 1 entries summing to 1.
std::vector<double> arrival_pmf_truncated(double lambda, int headroom);

}  // namespace antijam
