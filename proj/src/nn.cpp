// Copyright 2026 The seiropt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "seiropt/nn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace seiropt::nn {
namespace {

std::vector<int> layer_sizes(const NetworkSpec& spec) {
  std::vector<int> sizes;
  sizes.push_back(spec.input_size);
  for (int h : spec.hidden_sizes) sizes.push_back(h);
  sizes.push_back(spec.output_size);
  return sizes;
}

void check_spec(const NetworkSpec& spec) {
  if (spec.input_size < 1 || spec.output_size < 1) {
    throw std::invalid_argument("network sizes must be >= 1");
  }
  for (int h : spec.hidden_sizes) {
    if (h < 1) throw std::invalid_argument("network sizes must be >= 1");
  }
}

std::vector<Layer> shaped_like(const Network& net) {
  std::vector<Layer> out(net.layer_count());
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    out[l].in = net.layer(l).in;
    out[l].out = net.layer(l).out;
    out[l].weights.assign(net.layer(l).weights.size(), 0.0);
    out[l].bias.assign(net.layer(l).bias.size(), 0.0);
  }
  return out;
}

// Four-chain dot product; breaking the FP dependency chain roughly doubles
// throughput, and the combine order is fixed so results stay deterministic.
double dot(const double* a, const double* b, int n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  int j = 0;
  for (; j + 4 <= n; j += 4) {
    s0 += a[j] * b[j];
    s1 += a[j + 1] * b[j + 1];
    s2 += a[j + 2] * b[j + 2];
    s3 += a[j + 3] * b[j + 3];
  }
  for (; j < n; ++j) s0 += a[j] * b[j];
  return (s0 + s1) + (s2 + s3);
}

// y = W x + b, optionally relu.
void affine(const Layer& layer, const double* x, double* y, bool relu) {
  for (int k = 0; k < layer.out; ++k) {
    const double acc =
        layer.bias[k] + dot(layer.weights.data() + static_cast<std::size_t>(k) * layer.in, x,
                            layer.in);
    y[k] = relu && acc < 0.0 ? 0.0 : acc;
  }
}

}  // namespace

void Gradients::zero() {
  for (Layer& l : layers) {
    std::fill(l.weights.begin(), l.weights.end(), 0.0);
    std::fill(l.bias.begin(), l.bias.end(), 0.0);
  }
}

void Gradients::scale(double factor) {
  for (Layer& l : layers) {
    for (double& w : l.weights) w *= factor;
    for (double& b : l.bias) b *= factor;
  }
}

Network Network::glorot(const NetworkSpec& spec, Rng& rng) {
  check_spec(spec);
  const std::vector<int> sizes = layer_sizes(spec);
  std::vector<Layer> layers(sizes.size() - 1);
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    Layer& layer = layers[l];
    layer.in = sizes[l];
    layer.out = sizes[l + 1];
    layer.weights.resize(static_cast<std::size_t>(layer.in) * layer.out);
    layer.bias.assign(layer.out, 0.0);
    const double limit = std::sqrt(6.0 / (layer.in + layer.out));
    for (double& w : layer.weights) w = (2.0 * rng.unit() - 1.0) * limit;
  }
  return from_layers(spec, std::move(layers));
}

Network Network::from_layers(NetworkSpec spec, std::vector<Layer> layers) {
  check_spec(spec);
  const std::vector<int> sizes = layer_sizes(spec);
  if (layers.size() != sizes.size() - 1) {
    throw std::invalid_argument("layer count does not match the network spec");
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const Layer& layer = layers[l];
    if (layer.in != sizes[l] || layer.out != sizes[l + 1] ||
        layer.weights.size() != static_cast<std::size_t>(layer.in) * layer.out ||
        layer.bias.size() != static_cast<std::size_t>(layer.out)) {
      throw std::invalid_argument("layer shapes do not match the network spec");
    }
  }
  Network net;
  net.spec_ = std::move(spec);
  net.layers_ = std::move(layers);
  return net;
}

std::size_t Network::parameter_count() const {
  std::size_t n = 0;
  for (const Layer& l : layers_) n += l.weights.size() + l.bias.size();
  return n;
}

void Network::forward(std::span<const double> input, std::span<double> output) const {
  if (static_cast<int>(input.size()) != spec_.input_size) {
    throw std::invalid_argument("forward: input size mismatch");
  }
  if (static_cast<int>(output.size()) != spec_.output_size) {
    throw std::invalid_argument("forward: output size mismatch");
  }
  std::vector<double> a(input.begin(), input.end());
  std::vector<double> b;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const bool hidden = l + 1 < layers_.size();
    b.resize(layers_[l].out);
    affine(layers_[l], a.data(), b.data(), hidden);
    a.swap(b);
  }
  for (int k = 0; k < spec_.output_size; ++k) {
    if (!std::isfinite(a[k])) throw NumericalError("forward produced a non-finite output");
    output[k] = a[k];
  }
}

void Network::forward(std::span<const double> input, ForwardCache& cache) const {
  if (static_cast<int>(input.size()) != spec_.input_size) {
    throw std::invalid_argument("forward: input size mismatch");
  }
  cache.activations.resize(layers_.size() + 1);
  cache.activations[0].assign(input.begin(), input.end());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const bool hidden = l + 1 < layers_.size();
    cache.activations[l + 1].resize(layers_[l].out);
    affine(layers_[l], cache.activations[l].data(), cache.activations[l + 1].data(), hidden);
  }
}

Gradients gradients_like(const Network& net) {
  Gradients g;
  g.layers = shaped_like(net);
  return g;
}

double mse_loss(std::span<const double> predicted, std::span<const double> target,
                std::span<double> gradient) {
  if (predicted.size() != target.size()) {
    throw std::invalid_argument("mse_loss: length mismatch");
  }
  if (!gradient.empty() && gradient.size() != predicted.size()) {
    throw std::invalid_argument("mse_loss: gradient length mismatch");
  }
  const double inv = 1.0 / static_cast<double>(predicted.size());
  double loss = 0.0;
  for (std::size_t k = 0; k < predicted.size(); ++k) {
    const double diff = predicted[k] - target[k];
    loss += diff * diff;
    if (!gradient.empty()) gradient[k] = 2.0 * diff * inv;
  }
  return loss * inv;
}

void backward(const Network& net, const ForwardCache& cache,
              std::span<const double> output_gradient, Gradients& grads,
              BackpropScratch& scratch) {
  const std::size_t layers = net.layer_count();
  if (cache.activations.size() != layers + 1) {
    throw std::invalid_argument("backward: forward cache missing or stale");
  }
  if (static_cast<int>(output_gradient.size()) != net.output_size()) {
    throw std::invalid_argument("backward: output gradient size mismatch");
  }
  if (grads.layers.size() != layers) {
    throw std::invalid_argument("backward: gradient shapes do not match the network");
  }

  scratch.delta.assign(output_gradient.begin(), output_gradient.end());
  for (std::size_t l = layers; l-- > 0;) {
    const Layer& layer = net.layer(l);
    Layer& grad = grads.layers[l];
    const std::vector<double>& a_in = cache.activations[l];

    for (int k = 0; k < layer.out; ++k) {
      const double d = scratch.delta[k];
      grad.bias[k] += d;
      if (d == 0.0) continue;
      double* row = grad.weights.data() + static_cast<std::size_t>(k) * layer.in;
      const double* x = a_in.data();
      for (int j = 0; j < layer.in; ++j) row[j] += d * x[j];
    }

    if (l == 0) break;
    scratch.delta_prev.assign(layer.in, 0.0);
    for (int k = 0; k < layer.out; ++k) {
      const double d = scratch.delta[k];
      if (d == 0.0) continue;
      const double* row = layer.weights.data() + static_cast<std::size_t>(k) * layer.in;
      double* dp = scratch.delta_prev.data();
      for (int j = 0; j < layer.in; ++j) dp[j] += row[j] * d;
    }
    // relu subgradient: the upstream layer's output was a_in, zero where the
    // unit was clipped (including at exactly 0).
    for (int j = 0; j < layer.in; ++j) {
      if (a_in[j] <= 0.0) scratch.delta_prev[j] = 0.0;
    }
    scratch.delta.swap(scratch.delta_prev);
  }
}

AdamState adam_like(const Network& net) {
  AdamState st;
  st.m = shaped_like(net);
  st.v = shaped_like(net);
  return st;
}

void adam_update(Network& net, const Gradients& grads, AdamState& state) {
  if (grads.layers.size() != net.layer_count() || state.m.size() != net.layer_count()) {
    throw std::invalid_argument("adam_update: shape mismatch");
  }
  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  // theta -= lr * (m/bc1) / (sqrt(v/bc2) + eps), with the corrections folded
  // into the constants so the loop does a single divide.
  const double lr_t = state.learning_rate * std::sqrt(bc2) / bc1;
  const double eps_t = state.epsilon * std::sqrt(bc2);

  double probe = 0.0;  // non-finite values poison the sum
  auto update_span = [&](std::span<double> params, std::span<const double> g,
                         std::span<double> m, std::span<double> v) {
    for (std::size_t k = 0; k < params.size(); ++k) {
      m[k] = state.beta1 * m[k] + (1.0 - state.beta1) * g[k];
      v[k] = state.beta2 * v[k] + (1.0 - state.beta2) * g[k] * g[k];
      params[k] -= lr_t * m[k] / (std::sqrt(v[k]) + eps_t);
      probe += params[k];
    }
  };

  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    update_span(net.layer(l).weights, grads.layers[l].weights, state.m[l].weights,
                state.v[l].weights);
    update_span(net.layer(l).bias, grads.layers[l].bias, state.m[l].bias, state.v[l].bias);
  }
  if (!std::isfinite(probe)) {
    throw NumericalError("adam_update produced a non-finite parameter");
  }
}

std::string checkpoint_text(const Network& net) {
  std::ostringstream out;
  out << "seiropt-net 1\n";
  out << "input " << net.spec().input_size << "\n";
  out << "hidden";
  for (int h : net.spec().hidden_sizes) out << ' ' << h;
  out << "\n";
  out << "output " << net.spec().output_size << "\n";
  char buf[48];
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const Layer& layer = net.layer(l);
    out << "layer " << l << ' ' << layer.in << ' ' << layer.out << "\n";
    out << "w";
    for (double w : layer.weights) {
      std::snprintf(buf, sizeof buf, " %a", w);
      out << buf;
    }
    out << "\nb";
    for (double b : layer.bias) {
      std::snprintf(buf, sizeof buf, " %a", b);
      out << buf;
    }
    out << "\n";
  }
  return out.str();
}

Network network_from_checkpoint_text(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  int version = 0;
  if (!(in >> word >> version) || word != "seiropt-net" || version != 1) {
    throw CheckpointError("unrecognized checkpoint header");
  }
  NetworkSpec spec;
  spec.hidden_sizes.clear();
  if (!(in >> word >> spec.input_size) || word != "input") {
    throw CheckpointError("checkpoint missing input size");
  }
  if (!(in >> word) || word != "hidden") throw CheckpointError("checkpoint missing hidden sizes");
  // hidden sizes run until the "output" keyword
  while (in >> word && word != "output") {
    try {
      spec.hidden_sizes.push_back(std::stoi(word));
    } catch (const std::exception&) {
      throw CheckpointError("bad hidden size '" + word + "'");
    }
  }
  if (word != "output" || !(in >> spec.output_size)) {
    throw CheckpointError("checkpoint missing output size");
  }

  auto read_values = [&](const char* tag, std::vector<double>& dst, std::size_t count) {
    if (!(in >> word) || word != tag) {
      throw CheckpointError(std::string("checkpoint missing '") + tag + "' block");
    }
    dst.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
      if (!(in >> word)) throw CheckpointError("checkpoint truncated");
      char* end = nullptr;
      dst[k] = std::strtod(word.c_str(), &end);
      if (end == word.c_str() || *end != '\0') {
        throw CheckpointError("bad value '" + word + "' in checkpoint");
      }
    }
  };

  const std::size_t layer_count = spec.hidden_sizes.size() + 1;
  std::vector<Layer> layers(layer_count);
  for (std::size_t l = 0; l < layer_count; ++l) {
    std::size_t idx = 0;
    Layer& layer = layers[l];
    if (!(in >> word >> idx >> layer.in >> layer.out) || word != "layer" || idx != l) {
      throw CheckpointError("checkpoint layer " + std::to_string(l) + " header malformed");
    }
    read_values("w", layer.weights, static_cast<std::size_t>(layer.in) * layer.out);
    read_values("b", layer.bias, static_cast<std::size_t>(layer.out));
  }
  return Network::from_layers(std::move(spec), std::move(layers));
}

void save_checkpoint(const Network& net, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw CheckpointError("cannot open checkpoint for writing: " + path.string());
  out << checkpoint_text(net);
  if (!out) throw CheckpointError("failed writing checkpoint: " + path.string());
}

Network load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CheckpointError("cannot open checkpoint: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return network_from_checkpoint_text(buf.str());
}

}  // namespace seiropt::nn
