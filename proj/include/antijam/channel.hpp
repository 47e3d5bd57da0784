#pragma once

#include <string>
#include <vector>

#include "antijam/rng.hpp"

namespace antijam {

// Air-to-ground link parameters. All values come from the run configuration;
// there are no built-in defaults.
struct ChannelParams {
  double alpha = 0.0;      // path-loss exponent
  double beta_los = 0.0;   // LoS attenuation factor
  double beta_nlos = 0.0;  // NLoS attenuation factor
  double phi = 0.0;        // LoS-probability environment constant
  double psi = 0.0;        // LoS-probability environment constant
  double sigma2 = 0.0;     // AWGN power, watts
};

// Throws std::domain_error if any field is non-positive. Returns warnings
// (e.g. beta_nlos > beta_los) without rejecting.
std::vector<std::string> validate_channel(const ChannelParams& params);

// Per-slot distribution over discrete jamming power levels. Level 0 is
// always 0 W and means "no jamming".
class JammerProcess {
 public:
  JammerProcess(std::vector<double> levels, std::vector<double> weights);

  const std::vector<double>& levels() const { return levels_; }
  const std::vector<double>& weights() const { return weights_; }
  int num_levels() const { return static_cast<int>(levels_.size()); }
  double p_avg() const { return p_avg_; }

 private:
  std::vector<double> levels_;
  std::vector<double> weights_;
  double p_avg_ = 0.0;
};

// Large-scale path loss at distance d (meters). Strictly decreasing in d.
double path_loss(double distance, bool los, const ChannelParams& params);

// LoS probability at elevation angle theta_deg in [0, 90] degrees.
double p_los(double theta_deg, const ChannelParams& params);

// Received SINR for signal power p_r under effective jamming power p_j_eff.
double sinr(double p_r, double p_j_eff, double sigma2);

// Builds level weights with weights[0] = p_off and an exponential tilt over
// the nonzero levels, chosen so the overall mean equals target_mean within
// 1e-9. Throws std::range_error (message includes the feasible interval)
// when target_mean is infeasible.
std::vector<double> weights_for_mean(const std::vector<double>& levels,
                                     double p_off, double target_mean);

// Draws a level index i.i.d. from the process weights.
int sample_level(const JammerProcess& process, Rng& rng);

// Index of the level nearest to p_eff; ties break toward the lower index.
int quantize_power(double p_eff, const std::vector<double>& levels);

// One candidate UAV position with its selection probability.
struct JammerGeometry {
  double distance_m = 0.0;
  double elevation_deg = 0.0;
  double prob = 0.0;
};

// Maps a set of candidate jammer geometries to a level process: expected
// received jam power per geometry is quantized onto the level grid and the
// geometry probabilities accumulate into level weights.
JammerProcess scenario_to_process(const std::vector<JammerGeometry>& geometries,
                                  double tx_power_of_jammer,
                                  const ChannelParams& params,
                                  const std::vector<double>& levels);

}  // namespace antijam
