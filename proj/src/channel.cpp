#include "antijam/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace antijam {

namespace {

void check_levels(const std::vector<double>& levels) {
  if (levels.size() < 2) {
    throw std::invalid_argument("jammer levels: need at least the zero level and one nonzero level");
  }
  if (levels[0] != 0.0) {
    throw std::invalid_argument("jammer levels: level 0 must be exactly 0 W");
  }
  for (size_t i = 1; i < levels.size(); ++i) {
    if (!(levels[i] > levels[i - 1])) {
      throw std::invalid_argument("jammer levels: levels must be strictly increasing");
    }
  }
}

}  // namespace

std::vector<std::string> validate_channel(const ChannelParams& p) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) {
      throw std::domain_error(std::string("channel: ") + name + " must be > 0");
    }
  };
  positive(p.alpha, "alpha");
  positive(p.beta_los, "beta_los");
  positive(p.beta_nlos, "beta_nlos");
  positive(p.phi, "phi");
  positive(p.psi, "psi");
  positive(p.sigma2, "sigma2");

  std::vector<std::string> warnings;
  if (p.beta_nlos > p.beta_los) {
    warnings.push_back("channel: beta_nlos > beta_los (NLoS links are usually weaker)");
  }
  return warnings;
}

JammerProcess::JammerProcess(std::vector<double> levels, std::vector<double> weights)
    : levels_(std::move(levels)), weights_(std::move(weights)) {
  check_levels(levels_);
  if (weights_.size() != levels_.size()) {
    throw std::invalid_argument("jammer weights: one weight per level required");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (w < 0.0) throw std::invalid_argument("jammer weights: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("jammer weights: must sum to 1");
  }
  p_avg_ = 0.0;
  for (size_t i = 0; i < levels_.size(); ++i) p_avg_ += weights_[i] * levels_[i];
}

double path_loss(double distance, bool los, const ChannelParams& params) {
  if (!(distance > 0.0)) {
    throw std::domain_error("path_loss: distance must be > 0");
  }
  const double beta = los ? params.beta_los : params.beta_nlos;
  return beta * std::pow(distance, -params.alpha);
}

double p_los(double theta_deg, const ChannelParams& params) {
  if (!(theta_deg >= 0.0 && theta_deg <= 90.0)) {
    throw std::domain_error("p_los: elevation angle must be in [0, 90] degrees");
  }
  return 1.0 / (1.0 + params.phi * std::exp(-params.psi * (theta_deg - params.phi)));
}

double sinr(double p_r, double p_j_eff, double sigma2) {
  if (p_r < 0.0 || p_j_eff < 0.0) {
    throw std::domain_error("sinr: powers must be nonnegative");
  }
  if (!(sigma2 > 0.0)) {
    throw std::domain_error("sinr: noise power must be > 0");
  }
  return p_r / (p_j_eff + sigma2);
}

std::vector<double> weights_for_mean(const std::vector<double>& levels,
                                     double p_off, double target_mean) {
  check_levels(levels);
  if (!(p_off >= 0.0 && p_off < 1.0)) {
    throw std::domain_error("weights_for_mean: p_off must be in [0, 1)");
  }
  const size_t n = levels.size() - 1;  // nonzero levels
  const double on = 1.0 - p_off;
  const double lo = on * levels[1];
  const double hi = on * levels.back();
  if (!(target_mean > lo && target_mean < hi)) {
    std::ostringstream oss;
    oss << "weights_for_mean: target mean " << target_mean
        << " infeasible; must lie strictly inside (" << lo << ", " << hi << ")";
    throw std::range_error(oss.str());
  }

  // Conditional mean over the nonzero levels under tilt q_k ~ exp(kappa * k).
  const double cond_target = target_mean / on;
  auto cond_mean = [&](double kappa) {
    double zmax = -std::numeric_limits<double>::infinity();
    for (size_t k = 1; k <= n; ++k) zmax = std::max(zmax, kappa * static_cast<double>(k));
    double norm = 0.0, acc = 0.0;
    for (size_t k = 1; k <= n; ++k) {
      const double q = std::exp(kappa * static_cast<double>(k) - zmax);
      norm += q;
      acc += q * levels[k];
    }
    return acc / norm;
  };

  // cond_mean is strictly increasing in kappa; expand until bracketed.
  double klo = -1.0, khi = 1.0;
  while (cond_mean(klo) > cond_target && klo > -1e6) klo *= 2.0;
  while (cond_mean(khi) < cond_target && khi < 1e6) khi *= 2.0;
  for (int it = 0; it < 500; ++it) {
    const double mid = 0.5 * (klo + khi);
    if (cond_mean(mid) < cond_target) klo = mid; else khi = mid;
    if (khi - klo < 1e-15 * std::max(1.0, std::abs(klo))) break;
  }
  const double kappa = 0.5 * (klo + khi);

  double zmax = -std::numeric_limits<double>::infinity();
  for (size_t k = 1; k <= n; ++k) zmax = std::max(zmax, kappa * static_cast<double>(k));
  std::vector<double> weights(levels.size(), 0.0);
  double norm = 0.0;
  for (size_t k = 1; k <= n; ++k) {
    weights[k] = std::exp(kappa * static_cast<double>(k) - zmax);
    norm += weights[k];
  }
  weights[0] = p_off;
  for (size_t k = 1; k <= n; ++k) weights[k] *= on / norm;

  double mean = 0.0;
  for (size_t k = 0; k < levels.size(); ++k) mean += weights[k] * levels[k];
  if (std::abs(mean - target_mean) > 1e-9) {
    throw std::runtime_error("weights_for_mean: bisection failed to reach the target mean");
  }
  return weights;
}

int sample_level(const JammerProcess& process, Rng& rng) {
  const double u = rng.uniform();
  double cdf = 0.0;
  const auto& w = process.weights();
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    cdf += w[i];
    if (u < cdf) return static_cast<int>(i);
  }
  return static_cast<int>(w.size()) - 1;
}

int quantize_power(double p_eff, const std::vector<double>& levels) {
  check_levels(levels);
  int best = 0;
  double best_dist = std::abs(p_eff - levels[0]);
  for (size_t i = 1; i < levels.size(); ++i) {
    const double dist = std::abs(p_eff - levels[i]);
    if (dist < best_dist) {
      best = static_cast<int>(i);
      best_dist = dist;
    }
  }
  return best;
}

JammerProcess scenario_to_process(const std::vector<JammerGeometry>& geometries,
                                  double tx_power_of_jammer,
                                  const ChannelParams& params,
                                  const std::vector<double>& levels) {
  if (geometries.empty()) {
    throw std::domain_error("scenario_to_process: empty geometry list");
  }
  if (tx_power_of_jammer < 0.0) {
    throw std::domain_error("scenario_to_process: negative jammer transmit power");
  }
  double psum = 0.0;
  for (const auto& g : geometries) {
    if (g.prob < 0.0) throw std::domain_error("scenario_to_process: negative geometry probability");
    psum += g.prob;
  }
  if (std::abs(psum - 1.0) > 1e-9) {
    throw std::domain_error("scenario_to_process: geometry probabilities must sum to 1");
  }

  std::vector<double> weights(levels.size(), 0.0);
  for (const auto& g : geometries) {
    const double pl = p_los(g.elevation_deg, params);
    const double gain = pl * path_loss(g.distance_m, true, params) +
                        (1.0 - pl) * path_loss(g.distance_m, false, params);
    const double expected = tx_power_of_jammer * gain;
    weights[quantize_power(expected, levels)] += g.prob;
  }
  // psum was only 1 within 1e-9; renormalize so the process invariant holds
  // exactly.
  for (double& w : weights) w /= psum;
  return JammerProcess(levels, weights);
}

}  // namespace antijam
