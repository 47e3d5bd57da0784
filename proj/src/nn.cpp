#include "antijam/nn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace antijam {

namespace {

void check_shapes(const MLP& net) {
  const int layers = net.num_layers();
  if (layers < 1) throw std::domain_error("mlp: need at least 2 layer sizes");
  if (static_cast<int>(net.params.weights.size()) != layers ||
      static_cast<int>(net.params.biases.size()) != layers) {
    throw std::domain_error("mlp: parameter block does not match layer count");
  }
  for (int l = 0; l < layers; ++l) {
    const size_t in = net.layer_sizes[l];
    const size_t out = net.layer_sizes[l + 1];
    if (net.params.weights[l].size() != in * out ||
        net.params.biases[l].size() != out) {
      throw std::domain_error("mlp: parameter shape mismatch");
    }
  }
}

bool same_shape(const Params& a, const Params& b) {
  if (a.weights.size() != b.weights.size() || a.biases.size() != b.biases.size()) {
    return false;
  }
  for (size_t l = 0; l < a.weights.size(); ++l) {
    if (a.weights[l].size() != b.weights[l].size()) return false;
    if (a.biases[l].size() != b.biases[l].size()) return false;
  }
  return true;
}

}  // namespace

void Params::fill(double value) {
  for (auto& w : weights) std::fill(w.begin(), w.end(), value);
  for (auto& b : biases) std::fill(b.begin(), b.end(), value);
}

Params Params::shaped_like(const Params& other, double value) {
  Params p;
  p.weights.reserve(other.weights.size());
  p.biases.reserve(other.biases.size());
  for (const auto& w : other.weights) p.weights.emplace_back(w.size(), value);
  for (const auto& b : other.biases) p.biases.emplace_back(b.size(), value);
  return p;
}

MLP mlp_init(const std::vector<int>& layer_sizes, Rng& rng) {
  if (layer_sizes.size() < 2) throw std::domain_error("mlp_init: need at least 2 layer sizes");
  for (int s : layer_sizes) {
    if (s < 1) throw std::domain_error("mlp_init: layer sizes must be >= 1");
  }
  MLP net;
  net.layer_sizes = layer_sizes;
  for (size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    const int in = layer_sizes[l];
    const int out = layer_sizes[l + 1];
    // Uniform with variance exactly 1/fan_in.
    const double lim = std::sqrt(3.0 / in);
    std::vector<double> w(static_cast<size_t>(in) * out);
    for (double& v : w) v = rng.range(-lim, lim);
    net.params.weights.push_back(std::move(w));
    net.params.biases.emplace_back(out, 0.0);
  }
  return net;
}

std::vector<double> forward(const MLP& net, std::span<const double> features) {
  check_shapes(net);
  if (static_cast<int>(features.size()) != net.input_size()) {
    throw std::domain_error("forward: feature vector length mismatch");
  }
  std::vector<double> cur(features.begin(), features.end());
  std::vector<double> next;
  const int layers = net.num_layers();
  for (int l = 0; l < layers; ++l) {
    const int in = net.layer_sizes[l];
    const int out = net.layer_sizes[l + 1];
    const double* w = net.params.weights[l].data();
    next.assign(net.params.biases[l].begin(), net.params.biases[l].end());
    for (int o = 0; o < out; ++o) {
      double acc = 0.0;
      const double* row = w + static_cast<size_t>(o) * in;
      for (int i = 0; i < in; ++i) acc += row[i] * cur[i];
      next[o] += acc;
    }
    if (l + 1 < layers) {
      for (double& v : next) v = std::max(v, 0.0);
    }
    cur.swap(next);
  }
  return cur;
}

const std::vector<double>& forward_batch(const MLP& net, const double* x,
                                         int batch, BatchWorkspace& ws) {
  const int layers = net.num_layers();
  ws.activations.resize(layers + 1);
  ws.transposed.resize(layers);

  ws.activations[0].assign(x, x + static_cast<size_t>(batch) * net.input_size());
  for (int l = 0; l < layers; ++l) {
    const int in = net.layer_sizes[l];
    const int out = net.layer_sizes[l + 1];
    const double* w = net.params.weights[l].data();

    // Transposed copy keeps the inner loops contiguous in both passes.
    auto& wt = ws.transposed[l];
    wt.resize(static_cast<size_t>(in) * out);
    for (int o = 0; o < out; ++o) {
      for (int i = 0; i < in; ++i) {
        wt[static_cast<size_t>(i) * out + o] = w[static_cast<size_t>(o) * in + i];
      }
    }

    const double* h = ws.activations[l].data();
    auto& y = ws.activations[l + 1];
    y.resize(static_cast<size_t>(batch) * out);
    const double* bias = net.params.biases[l].data();
    for (int b = 0; b < batch; ++b) {
      double* yb = y.data() + static_cast<size_t>(b) * out;
      std::copy(bias, bias + out, yb);
      const double* hb = h + static_cast<size_t>(b) * in;
      for (int i = 0; i < in; ++i) {
        const double hv = hb[i];
        const double* wrow = wt.data() + static_cast<size_t>(i) * out;
        for (int o = 0; o < out; ++o) yb[o] += hv * wrow[o];
      }
    }
    if (l + 1 < layers) {
      for (double& v : y) v = std::max(v, 0.0);
    }
  }
  return ws.activations[layers];
}

double loss_and_gradient_batch(const MLP& net, const double* x,
                               const int* actions, const double* targets,
                               int batch, Params& grad, BatchWorkspace& ws) {
  if (batch < 1) throw std::domain_error("loss_and_gradient: empty batch");
  const int layers = net.num_layers();
  const int out_size = net.output_size();

  const auto& q = forward_batch(net, x, batch, ws);

  if (!same_shape(grad, net.params)) grad = Params::shaped_like(net.params);
  grad.fill(0.0);

  ws.deltas.resize(layers);
  auto& dout = ws.deltas[layers - 1];
  dout.assign(static_cast<size_t>(batch) * out_size, 0.0);

  double loss = 0.0;
  const double inv_batch = 1.0 / batch;
  for (int b = 0; b < batch; ++b) {
    const int a = actions[b];
    if (a < 0 || a >= out_size) throw std::domain_error("loss_and_gradient: action index out of range");
    const double diff = targets[b] - q[static_cast<size_t>(b) * out_size + a];
    loss += diff * diff;
    // d/dq of mean (y - q_a)^2: only the chosen entry carries gradient.
    dout[static_cast<size_t>(b) * out_size + a] = -2.0 * diff * inv_batch;
  }
  loss *= inv_batch;

  for (int l = layers - 1; l >= 0; --l) {
    const int in = net.layer_sizes[l];
    const int out = net.layer_sizes[l + 1];
    const double* w = net.params.weights[l].data();
    const double* h = ws.activations[l].data();
    const auto& delta = ws.deltas[l];
    double* gw = grad.weights[l].data();
    double* gb = grad.biases[l].data();

    for (int b = 0; b < batch; ++b) {
      const double* db = delta.data() + static_cast<size_t>(b) * out;
      const double* hb = h + static_cast<size_t>(b) * in;
      for (int o = 0; o < out; ++o) {
        const double d = db[o];
        if (d == 0.0) continue;
        gb[o] += d;
        double* grow = gw + static_cast<size_t>(o) * in;
        for (int i = 0; i < in; ++i) grow[i] += d * hb[i];
      }
    }

    if (l > 0) {
      auto& dprev = ws.deltas[l - 1];
      dprev.assign(static_cast<size_t>(batch) * in, 0.0);
      for (int b = 0; b < batch; ++b) {
        const double* db = delta.data() + static_cast<size_t>(b) * out;
        double* dpb = dprev.data() + static_cast<size_t>(b) * in;
        for (int o = 0; o < out; ++o) {
          const double d = db[o];
          if (d == 0.0) continue;
          const double* wrow = w + static_cast<size_t>(o) * in;
          for (int i = 0; i < in; ++i) dpb[i] += d * wrow[i];
        }
        // Rectifier gate: activations are post-rectifier, so h > 0 marks
        // the active units.
        const double* hb2 = h + static_cast<size_t>(b) * in;
        for (int i = 0; i < in; ++i) {
          if (hb2[i] <= 0.0) dpb[i] = 0.0;
        }
      }
    }
  }
  return loss;
}

double loss_and_gradient(const MLP& net, std::span<const TrainSample> batch,
                         Params& grad) {
  check_shapes(net);
  if (batch.empty()) throw std::domain_error("loss_and_gradient: empty batch");
  const int in = net.input_size();
  std::vector<double> x;
  std::vector<int> actions;
  std::vector<double> targets;
  x.reserve(batch.size() * in);
  for (const auto& sample : batch) {
    if (static_cast<int>(sample.features.size()) != in) {
      throw std::domain_error("loss_and_gradient: feature vector length mismatch");
    }
    x.insert(x.end(), sample.features.begin(), sample.features.end());
    actions.push_back(sample.action);
    targets.push_back(sample.target);
  }
  BatchWorkspace ws;
  return loss_and_gradient_batch(net, x.data(), actions.data(), targets.data(),
                                 static_cast<int>(batch.size()), grad, ws);
}

AdamState make_adam(const MLP& net, double step_size) {
  AdamState opt;
  opt.m = Params::shaped_like(net.params);
  opt.v = Params::shaped_like(net.params);
  opt.step_size = step_size;
  return opt;
}

void adam_step(MLP& net, const Params& grad, AdamState& opt) {
  if (!same_shape(grad, net.params) || !same_shape(opt.m, net.params)) {
    throw std::domain_error("adam_step: shape mismatch");
  }
  opt.t += 1;
  const double b1 = opt.beta1, b2 = opt.beta2;
  const double bc1 = 1.0 - std::pow(b1, static_cast<double>(opt.t));
  const double bc2 = 1.0 - std::pow(b2, static_cast<double>(opt.t));
  const double lr = opt.step_size;

  auto update = [&](std::vector<double>& theta, std::vector<double>& m,
                    std::vector<double>& v, const std::vector<double>& g) {
    const size_t n = theta.size();
    for (size_t i = 0; i < n; ++i) {
      m[i] = b1 * m[i] + (1.0 - b1) * g[i];
      v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
      const double mhat = m[i] / bc1;
      const double vhat = v[i] / bc2;
      theta[i] -= lr * mhat / (std::sqrt(vhat) + opt.eps);
    }
  };
  for (size_t l = 0; l < net.params.weights.size(); ++l) {
    update(net.params.weights[l], opt.m.weights[l], opt.v.weights[l], grad.weights[l]);
    update(net.params.biases[l], opt.m.biases[l], opt.v.biases[l], grad.biases[l]);
  }
}

void save_mlp(const MLP& net, const std::string& path) {
  check_shapes(net);
  std::ofstream file(path);
  if (!file) throw std::runtime_error("save_mlp: cannot open " + path);
  file << "mlp";
  for (int s : net.layer_sizes) file << ' ' << s;
  file << '\n';
  char buf[64];
  auto write_block = [&](const std::vector<double>& vals) {
    for (size_t i = 0; i < vals.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", vals[i]);
      file << buf << ((i + 1) % 8 == 0 ? '\n' : ' ');
    }
    file << '\n';
  };
  for (size_t l = 0; l < net.params.weights.size(); ++l) {
    write_block(net.params.weights[l]);
    write_block(net.params.biases[l]);
  }
  if (!file) throw std::runtime_error("save_mlp: write failed for " + path);
}

MLP load_mlp(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("load_mlp: cannot open " + path);
  std::string line;
  if (!std::getline(file, line)) throw std::runtime_error("load_mlp: empty file");
  std::istringstream header(line);
  std::string magic;
  header >> magic;
  if (magic != "mlp") throw std::runtime_error("load_mlp: bad header in " + path);
  MLP net;
  int size = 0;
  while (header >> size) net.layer_sizes.push_back(size);
  if (net.layer_sizes.size() < 2) throw std::runtime_error("load_mlp: bad layer sizes");

  auto read_block = [&](size_t count) {
    std::vector<double> vals(count);
    for (size_t i = 0; i < count; ++i) {
      if (!(file >> vals[i])) throw std::runtime_error("load_mlp: truncated file");
    }
    return vals;
  };
  for (size_t l = 0; l + 1 < net.layer_sizes.size(); ++l) {
    const size_t in = net.layer_sizes[l];
    const size_t out = net.layer_sizes[l + 1];
    net.params.weights.push_back(read_block(in * out));
    net.params.biases.push_back(read_block(out));
  }
  check_shapes(net);
  return net;
}

}  // namespace antijam
