#pragma once

#include <span>
#include <string>
#include <vector>

#include "antijam/rng.hpp"

namespace antijam {

// Layer-shaped parameter block. weights[l] is (out x in) row-major,
// biases[l] has `out` entries.
struct Params {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;

  void fill(double value);
  static Params shaped_like(const Params& other, double value = 0.0);
};

// Fully connected network with rectifier hidden units and an identity
// output layer. Copyable by value (target-network cloning relies on it).
struct MLP {
  std::vector<int> layer_sizes;
  Params params;

  int input_size() const { return layer_sizes.front(); }
  int output_size() const { return layer_sizes.back(); }
  int num_layers() const { return static_cast<int>(layer_sizes.size()) - 1; }
};

// Weights uniform with variance 1/fan_in, biases zero. Deterministic per
// seed. Throws std::domain_error for fewer than 2 sizes or any size < 1.
MLP mlp_init(const std::vector<int>& layer_sizes, Rng& rng);

// Single-input evaluation; returns one value per output unit.
std::vector<double> forward(const MLP& net, std::span<const double> features);

struct TrainSample {
  std::vector<double> features;
  int action = 0;
  double target = 0.0;
};

// Mean squared error over the batch between target and the selected
// action's output, plus its analytic gradient. grad is resized to match
// the network. Throws std::domain_error on an empty batch.
double loss_and_gradient(const MLP& net, std::span<const TrainSample> batch,
                         Params& grad);

// Reusable buffers for the batched training path.
struct BatchWorkspace {
  std::vector<std::vector<double>> activations;   // per layer, batch x width
  std::vector<std::vector<double>> deltas;        // per layer, batch x width
  std::vector<std::vector<double>> transposed;    // per layer, in x out
};

// Batched evaluation: x is batch x input_size row-major. Outputs land in
// ws.activations.back(). Returns a pointer to that buffer.
const std::vector<double>& forward_batch(const MLP& net, const double* x,
                                         int batch, BatchWorkspace& ws);

// Batched loss/gradient on (x, actions, targets). Same math as
// loss_and_gradient, laid out for the training loop.
double loss_and_gradient_batch(const MLP& net, const double* x,
                               const int* actions, const double* targets,
                               int batch, Params& grad, BatchWorkspace& ws);

struct AdamState {
  Params m;
  Params v;
  long long t = 0;
  double step_size = 0.0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

AdamState make_adam(const MLP& net, double step_size);

// Standard bias-corrected update; increments the step counter. Throws
// std::domain_error on shape mismatch.
void adam_step(MLP& net, const Params& grad, AdamState& opt);

// Plain-text checkpoint: header with layer sizes, then per-layer weight
// matrices (row-major) and biases, 17 significant digits so doubles
// round-trip exactly.
void save_mlp(const MLP& net, const std::string& path);
MLP load_mlp(const std::string& path);

}  // namespace antijam
