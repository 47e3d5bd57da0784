#include "antijam/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace antijam {

Action Action::from_index(int index, int num_ra_levels) {
  switch (index) {
    case 0: return {ActionKind::idle, 0};
    case 1: return {ActionKind::at, 0};
    case 2: return {ActionKind::eh, 0};
    case 3: return {ActionKind::ambc, 0};
    default:
      if (index >= 4 && index < 4 + num_ra_levels) {
        return {ActionKind::at_ra, index - 3};
      }
      throw std::domain_error("Action::from_index: index out of range");
  }
}

int Action::to_index() const {
  switch (kind) {
    case ActionKind::idle: return 0;
    case ActionKind::at: return 1;
    case ActionKind::eh: return 2;
    case ActionKind::ambc: return 3;
    case ActionKind::at_ra: return 3 + ra_level;
  }
  throw std::domain_error("Action::to_index: invalid kind");
}

std::string Action::name() const {
  switch (kind) {
    case ActionKind::idle: return "Idle";
    case ActionKind::at: return "AT";
    case ActionKind::eh: return "EH";
    case ActionKind::ambc: return "AmBC";
    case ActionKind::at_ra: return "AT-RA" + std::to_string(ra_level);
  }
  return "?";
}

void validate_env(const EnvConfig& cfg, int num_levels) {
  if (cfg.d_max < 1) throw std::domain_error("env: d_max must be >= 1");
  if (cfg.e_max < 1) throw std::domain_error("env: e_max must be >= 1");
  if (cfg.lambda < 0.0) throw std::domain_error("env: lambda must be >= 0");
  if (cfg.dt_hat < 0) throw std::domain_error("env: dt_hat must be >= 0");
  if (cfg.at_cost_per_packet < 0) throw std::domain_error("env: at_cost_per_packet must be >= 0");
  if (static_cast<int>(cfg.eh_table.size()) != num_levels) {
    throw std::domain_error("env: eh_table needs one entry per jamming level");
  }
  if (static_cast<int>(cfg.ambc_table.size()) != num_levels) {
    throw std::domain_error("env: ambc_table needs one entry per jamming level");
  }
  if (cfg.eh_table[0] != 0 || cfg.ambc_table[0] != 0) {
    throw std::domain_error("env: level 0 must yield no energy and no backscattered packets");
  }
  for (int v : cfg.eh_table) {
    if (v < 0) throw std::domain_error("env: eh_table entries must be >= 0");
  }
  for (int v : cfg.ambc_table) {
    if (v < 0) throw std::domain_error("env: ambc_table entries must be >= 0");
  }
  for (const auto& lv : cfg.ra.levels) {
    if (lv.packets < 0 || lv.energy_cost < 0) {
      throw std::domain_error("env: rate-adaptation packets and costs must be >= 0");
    }
  }
}

int state_index(const State& s, const EnvConfig& cfg) {
  return s.j * (cfg.d_max + 1) * (cfg.e_max + 1) + s.d * (cfg.e_max + 1) + s.e;
}

State state_from_index(int index, const EnvConfig& cfg) {
  const int plane = (cfg.d_max + 1) * (cfg.e_max + 1);
  State s;
  s.j = index / plane;
  index %= plane;
  s.d = index / (cfg.e_max + 1);
  s.e = index % (cfg.e_max + 1);
  return s;
}

std::array<double, 3> state_features(const State& s, const EnvConfig& cfg) {
  return {static_cast<double>(s.j),
          static_cast<double>(s.d) / cfg.d_max,
          static_cast<double>(s.e) / cfg.e_max};
}

StepOutcome step(const State& s, const Action& a, int jam_level, int arrivals,
                 int next_jam_level, const EnvConfig& cfg) {
  if (s.j != 0 && s.j != 1) throw std::invalid_argument("step: jamming flag must be 0 or 1");
  if (s.d < 0 || s.d > cfg.d_max || s.e < 0 || s.e > cfg.e_max) {
    throw std::invalid_argument("step: state out of bounds");
  }
  const int num_levels = static_cast<int>(cfg.eh_table.size());
  if (jam_level < 0 || jam_level >= num_levels) {
    throw std::domain_error("step: jam_level out of range");
  }
  if (next_jam_level < 0 || next_jam_level >= num_levels) {
    throw std::domain_error("step: next_jam_level out of range");
  }
  if ((jam_level == 0) != (s.j == 0)) {
    throw std::invalid_argument("step: jam_level inconsistent with the jamming flag");
  }
  if (arrivals < 0) throw std::domain_error("step: arrivals must be >= 0");

  int delivered = 0, spent = 0, harvested = 0;
  switch (a.kind) {
    case ActionKind::idle:
      break;
    case ActionKind::at: {
      const int affordable =
          cfg.at_cost_per_packet > 0 ? s.e / cfg.at_cost_per_packet : cfg.dt_hat;
      const int attempt = std::min({s.d, cfg.dt_hat, affordable});
      if (s.j == 0) {
        delivered = attempt;
        spent = attempt * cfg.at_cost_per_packet;
      } else if (cfg.at_under_jamming_wastes_energy) {
        // The attempt is jammed: energy burns, packets stay buffered.
        spent = attempt * cfg.at_cost_per_packet;
      }
      break;
    }
    case ActionKind::eh:
      if (s.j == 1) harvested = std::min(cfg.eh_table[jam_level], cfg.e_max - s.e);
      break;
    case ActionKind::ambc:
      if (s.j == 1) delivered = std::min(s.d, cfg.ambc_table[jam_level]);
      break;
    case ActionKind::at_ra: {
      if (a.ra_level < 1 || a.ra_level > static_cast<int>(cfg.ra.levels.size())) {
        throw std::domain_error("step: rate-adaptation level out of range");
      }
      const RALevel& lv = cfg.ra.levels[a.ra_level - 1];
      if (s.j == 1 && s.e >= lv.energy_cost) {
        delivered = std::min(s.d, lv.packets);
        spent = lv.energy_cost;
      }
      break;
    }
  }

  StepOutcome out;
  const int d_after = s.d - delivered + arrivals;
  out.dropped = std::max(0, d_after - cfg.d_max);
  out.next.d = std::clamp(d_after, 0, cfg.d_max);
  out.next.e = std::clamp(s.e - spent + harvested, 0, cfg.e_max);
  out.next.j = next_jam_level > 0 ? 1 : 0;
  out.delivered = delivered;
  out.reward = delivered;
  out.arrived = arrivals;
  out.energy_spent = spent;
  out.energy_harvested = harvested;
  return out;
}

int sample_arrivals(double lambda, Rng& rng) {
  if (lambda < 0.0) throw std::domain_error("sample_arrivals: lambda must be >= 0");
  return rng.poisson(lambda);
}

std::vector<double> arrival_pmf_truncated(double lambda, int headroom) {
  if (headroom < 0) throw std::domain_error("arrival_pmf_truncated: headroom must be >= 0");
  std::vector<double> pmf(headroom + 1, 0.0);
  if (headroom == 0) {
    pmf[0] = 1.0;
    return pmf;
  }
  double p = std::exp(-lambda);
  double cumulative = 0.0;
  for (int k = 0; k < headroom; ++k) {
    pmf[k] = p;
    cumulative += p;
    p *= lambda / (k + 1);
  }
  pmf[headroom] = std::max(0.0, 1.0 - cumulative);
  return pmf;
}

}  // namespace antijam
