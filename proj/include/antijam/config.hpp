#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "antijam/agents.hpp"
#include "antijam/channel.hpp"
#include "antijam/env.hpp"

namespace antijam {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// How the jamming level process is specified: explicit weights, a
// (p_off, p_avg) pair solved by weights_for_mean, or a geometric scenario
// mapped through the channel model.
struct JammerSpec {
  std::vector<double> levels;
  std::optional<std::vector<double>> weights;
  std::optional<double> p_off;
  std::optional<double> p_avg;
  std::optional<std::vector<JammerGeometry>> scenario;
  std::optional<double> scenario_tx_power;
};

enum class AgentKind { dqn, qlearning, greedy, random, oracle_policy };

std::string agent_name(AgentKind kind);
AgentKind agent_from_name(const std::string& name);

struct RunConfig {
  EnvConfig env;
  JammerSpec jammer;
  std::optional<ChannelParams> channel;
  AgentKind agent = AgentKind::dqn;
  DQNConfig dqn;
  double qlearning_alpha = 0.1;
  GreedyConfig greedy;
  long long training_slots = 0;
  long long eval_slots = 0;
  int seeds = 5;
  std::uint64_t base_seed = 1;
  int reward_window = 1000;
  std::string out_dir = "out";
};

// Parses and validates a JSON run configuration. Throws ConfigError with
// the offending key in the message.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

// Resolves the jammer spec into a concrete level process.
JammerProcess make_jammer(const RunConfig& cfg);

// Full validation of a parsed config (also called by load_config).
void validate_config(const RunConfig& cfg);

}  // namespace antijam
