#include "antijam/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace antijam {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

const json& require(const json& obj, const std::string& key, const std::string& scope) {
  auto it = obj.find(key);
  if (it == obj.end()) fail("config: missing key " + scope + key);
  return *it;
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& scope) {
  if (!obj.is_object()) fail("config: " + scope + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) fail("config: unknown key " + scope + it.key());
  }
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail("config: " + where + " must be a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail("config: " + where + " must be an integer");
  return v.get<int>();
}

long long as_long(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail("config: " + where + " must be an integer");
  return v.get<long long>();
}

bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) fail("config: " + where + " must be a boolean");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail("config: " + where + " must be a string");
  return v.get<std::string>();
}

std::vector<double> as_number_list(const json& v, const std::string& where) {
  if (!v.is_array()) fail("config: " + where + " must be an array");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(as_number(e, where + "[]"));
  return out;
}

std::vector<int> as_int_list(const json& v, const std::string& where) {
  if (!v.is_array()) fail("config: " + where + " must be an array");
  std::vector<int> out;
  for (const auto& e : v) out.push_back(as_int(e, where + "[]"));
  return out;
}

EnvConfig parse_env(const json& obj) {
  check_keys(obj,
             {"d_max", "e_max", "lambda", "dt_hat", "at_cost_per_packet",
              "eh_table", "ambc_table", "ra_levels",
              "at_under_jamming_wastes_energy"},
             "env.");
  EnvConfig env;
  env.d_max = as_int(require(obj, "d_max", "env."), "env.d_max");
  env.e_max = as_int(require(obj, "e_max", "env."), "env.e_max");
  env.lambda = as_number(require(obj, "lambda", "env."), "env.lambda");
  env.dt_hat = as_int(require(obj, "dt_hat", "env."), "env.dt_hat");
  env.at_cost_per_packet =
      as_int(require(obj, "at_cost_per_packet", "env."), "env.at_cost_per_packet");
  env.eh_table = as_int_list(require(obj, "eh_table", "env."), "env.eh_table");
  env.ambc_table = as_int_list(require(obj, "ambc_table", "env."), "env.ambc_table");

  const json& ra = require(obj, "ra_levels", "env.");
  if (!ra.is_array()) fail("config: env.ra_levels must be an array");
  for (const auto& level : ra) {
    check_keys(level, {"packets", "energy_cost"}, "env.ra_levels[].");
    RALevel parsed;
    parsed.packets = as_int(require(level, "packets", "env.ra_levels[]."),
                            "env.ra_levels[].packets");
    parsed.energy_cost = as_int(require(level, "energy_cost", "env.ra_levels[]."),
                                "env.ra_levels[].energy_cost");
    env.ra.levels.push_back(parsed);
  }
  if (auto it = obj.find("at_under_jamming_wastes_energy"); it != obj.end()) {
    env.at_under_jamming_wastes_energy = as_bool(*it, "env.at_under_jamming_wastes_energy");
  }
  return env;
}

JammerSpec parse_jammer(const json& obj) {
  check_keys(obj,
             {"levels", "weights", "p_off", "p_avg", "scenario", "scenario_tx_power"},
             "jammer.");
  JammerSpec spec;
  spec.levels = as_number_list(require(obj, "levels", "jammer."), "jammer.levels");
  if (auto it = obj.find("weights"); it != obj.end()) {
    spec.weights = as_number_list(*it, "jammer.weights");
  }
  if (auto it = obj.find("p_off"); it != obj.end()) {
    spec.p_off = as_number(*it, "jammer.p_off");
  }
  if (auto it = obj.find("p_avg"); it != obj.end()) {
    spec.p_avg = as_number(*it, "jammer.p_avg");
  }
  if (auto it = obj.find("scenario"); it != obj.end()) {
    if (!it->is_array()) fail("config: jammer.scenario must be an array");
    std::vector<JammerGeometry> geometries;
    for (const auto& g : *it) {
      check_keys(g, {"distance_m", "elevation_deg", "prob"}, "jammer.scenario[].");
      JammerGeometry geo;
      geo.distance_m = as_number(require(g, "distance_m", "jammer.scenario[]."),
                                 "jammer.scenario[].distance_m");
      geo.elevation_deg = as_number(require(g, "elevation_deg", "jammer.scenario[]."),
                                    "jammer.scenario[].elevation_deg");
      geo.prob = as_number(require(g, "prob", "jammer.scenario[]."),
                           "jammer.scenario[].prob");
      geometries.push_back(geo);
    }
    spec.scenario = std::move(geometries);
  }
  if (auto it = obj.find("scenario_tx_power"); it != obj.end()) {
    spec.scenario_tx_power = as_number(*it, "jammer.scenario_tx_power");
  }
  return spec;
}

ChannelParams parse_channel(const json& obj) {
  check_keys(obj, {"alpha", "beta_los", "beta_nlos", "phi", "psi", "sigma2"},
             "channel.");
  ChannelParams ch;
  ch.alpha = as_number(require(obj, "alpha", "channel."), "channel.alpha");
  ch.beta_los = as_number(require(obj, "beta_los", "channel."), "channel.beta_los");
  ch.beta_nlos = as_number(require(obj, "beta_nlos", "channel."), "channel.beta_nlos");
  ch.phi = as_number(require(obj, "phi", "channel."), "channel.phi");
  ch.psi = as_number(require(obj, "psi", "channel."), "channel.psi");
  ch.sigma2 = as_number(require(obj, "sigma2", "channel."), "channel.sigma2");
  return ch;
}

DQNConfig parse_dqn(const json& obj, DQNConfig base) {
  check_keys(obj,
             {"learning_rate", "discount", "replay_capacity", "batch_size",
              "target_update_period", "eps_start", "eps_end", "eps_decay",
              "learn_start", "hidden_sizes", "grad_clip"},
             "dqn.");
  if (auto it = obj.find("learning_rate"); it != obj.end())
    base.learning_rate = as_number(*it, "dqn.learning_rate");
  if (auto it = obj.find("discount"); it != obj.end())
    base.discount = as_number(*it, "dqn.discount");
  if (auto it = obj.find("replay_capacity"); it != obj.end())
    base.replay_capacity = as_int(*it, "dqn.replay_capacity");
  if (auto it = obj.find("batch_size"); it != obj.end())
    base.batch_size = as_int(*it, "dqn.batch_size");
  if (auto it = obj.find("target_update_period"); it != obj.end())
    base.target_update_period = as_int(*it, "dqn.target_update_period");
  if (auto it = obj.find("eps_start"); it != obj.end())
    base.eps_start = as_number(*it, "dqn.eps_start");
  if (auto it = obj.find("eps_end"); it != obj.end())
    base.eps_end = as_number(*it, "dqn.eps_end");
  if (auto it = obj.find("eps_decay"); it != obj.end())
    base.eps_decay = as_number(*it, "dqn.eps_decay");
  if (auto it = obj.find("learn_start"); it != obj.end())
    base.learn_start = as_int(*it, "dqn.learn_start");
  if (auto it = obj.find("hidden_sizes"); it != obj.end())
    base.hidden_sizes = as_int_list(*it, "dqn.hidden_sizes");
  if (auto it = obj.find("grad_clip"); it != obj.end())
    base.grad_clip = as_number(*it, "dqn.grad_clip");
  return base;
}

GreedyConfig parse_greedy(const json& obj, GreedyConfig base) {
  check_keys(obj, {"t_cycle", "t_harvest"}, "greedy.");
  if (auto it = obj.find("t_cycle"); it != obj.end())
    base.t_cycle = as_int(*it, "greedy.t_cycle");
  if (auto it = obj.find("t_harvest"); it != obj.end())
    base.t_harvest = as_int(*it, "greedy.t_harvest");
  return base;
}

}  // namespace

std::string agent_name(AgentKind kind) {
  switch (kind) {
    case AgentKind::dqn: return "dqn";
    case AgentKind::qlearning: return "qlearning";
    case AgentKind::greedy: return "greedy";
    case AgentKind::random: return "random";
    case AgentKind::oracle_policy: return "oracle-policy";
  }
  throw std::logic_error("agent_name: unhandled kind");
}

AgentKind agent_from_name(const std::string& name) {
  if (name == "dqn") return AgentKind::dqn;
  if (name == "qlearning") return AgentKind::qlearning;
  if (name == "greedy") return AgentKind::greedy;
  if (name == "random") return AgentKind::random;
  if (name == "oracle-policy") return AgentKind::oracle_policy;
  fail("config: unknown agent '" + name +
       "' (expected dqn, qlearning, greedy, random, or oracle-policy)");
}

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(std::string("config: invalid JSON: ") + e.what());
  }
  check_keys(root,
             {"env", "jammer", "channel", "agent", "dqn", "qlearning_alpha",
              "greedy", "training_slots", "eval_slots", "seeds", "base_seed",
              "reward_window", "out_dir"},
             "");

  RunConfig cfg;
  cfg.env = parse_env(require(root, "env", ""));
  cfg.jammer = parse_jammer(require(root, "jammer", ""));
  if (auto it = root.find("channel"); it != root.end()) {
    cfg.channel = parse_channel(*it);
  }
  if (auto it = root.find("agent"); it != root.end()) {
    cfg.agent = agent_from_name(as_string(*it, "agent"));
  }
  if (auto it = root.find("dqn"); it != root.end()) {
    cfg.dqn = parse_dqn(*it, cfg.dqn);
  }
  if (auto it = root.find("qlearning_alpha"); it != root.end()) {
    cfg.qlearning_alpha = as_number(*it, "qlearning_alpha");
  }
  if (auto it = root.find("greedy"); it != root.end()) {
    cfg.greedy = parse_greedy(*it, cfg.greedy);
  }
  if (auto it = root.find("training_slots"); it != root.end()) {
    cfg.training_slots = as_long(*it, "training_slots");
  }
  if (auto it = root.find("eval_slots"); it != root.end()) {
    cfg.eval_slots = as_long(*it, "eval_slots");
  }
  if (auto it = root.find("seeds"); it != root.end()) {
    cfg.seeds = as_int(*it, "seeds");
  }
  if (auto it = root.find("base_seed"); it != root.end()) {
    const long long seed = as_long(*it, "base_seed");
    if (seed < 0) fail("config: base_seed must be >= 0");
    cfg.base_seed = static_cast<std::uint64_t>(seed);
  }
  if (auto it = root.find("reward_window"); it != root.end()) {
    cfg.reward_window = as_int(*it, "reward_window");
  }
  if (auto it = root.find("out_dir"); it != root.end()) {
    cfg.out_dir = as_string(*it, "out_dir");
  }

  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) fail("config: cannot open " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_config(buf.str());
}

JammerProcess make_jammer(const RunConfig& cfg) {
  const JammerSpec& spec = cfg.jammer;
  const int modes = (spec.weights ? 1 : 0) +
                    (spec.p_off || spec.p_avg ? 1 : 0) +
                    (spec.scenario ? 1 : 0);
  if (modes != 1) {
    fail("config: jammer needs exactly one of weights, p_off+p_avg, or scenario");
  }
  try {
    if (spec.weights) {
      return JammerProcess(spec.levels, *spec.weights);
    }
    if (spec.p_off || spec.p_avg) {
      if (!spec.p_off || !spec.p_avg) {
        fail("config: jammer.p_off and jammer.p_avg must be given together");
      }
      return JammerProcess(spec.levels,
                           weights_for_mean(spec.levels, *spec.p_off, *spec.p_avg));
    }
    if (!spec.scenario_tx_power) {
      fail("config: jammer.scenario requires jammer.scenario_tx_power");
    }
    if (!cfg.channel) {
      fail("config: jammer.scenario requires a channel block");
    }
    return scenario_to_process(*spec.scenario, *spec.scenario_tx_power,
                               *cfg.channel, spec.levels);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(std::string("config: jammer: ") + e.what());
  }
}

void validate_config(const RunConfig& cfg) {
  try {
    validate_env(cfg.env, static_cast<int>(cfg.jammer.levels.size()));
    validate_dqn(cfg.dqn);
    validate_greedy(cfg.greedy);
    if (cfg.channel) validate_channel(*cfg.channel);
  } catch (const std::exception& e) {
    fail(std::string("config: ") + e.what());
  }
  if (cfg.qlearning_alpha <= 0.0 || cfg.qlearning_alpha > 1.0) {
    fail("config: qlearning_alpha must be in (0, 1]");
  }
  if (cfg.training_slots < 0) fail("config: training_slots must be >= 0");
  if (cfg.eval_slots < 1) fail("config: eval_slots must be >= 1");
  if (cfg.seeds < 1) fail("config: seeds must be >= 1");
  if (cfg.reward_window < 1) fail("config: reward_window must be >= 1");
  if (cfg.out_dir.empty()) fail("config: out_dir must not be empty");
  make_jammer(cfg);  // surfaces level/weight problems with their own messages
}

}  // namespace antijam
