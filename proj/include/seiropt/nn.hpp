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

#ifndef SEIROPT_NN_HPP_
#define SEIROPT_NN_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "seiropt/rng.hpp"

namespace seiropt::nn {

struct NetworkSpec {
  int input_size = 25;
  std::vector<int> hidden_sizes{64, 128, 128};
  int output_size = 4;
};

// One dense layer; weights are out x in, row-major.
struct Layer {
  int in = 0;
  int out = 0;
  std::vector<double> weights;
  std::vector<double> bias;
};

// activations[0] is the input copy, activations[l+1] the output of layer l.
struct ForwardCache {
  std::vector<std::vector<double>> activations;
};

// Scratch for backward(); keeping it outside the call avoids reallocating
// delta buffers in training loops.
struct BackpropScratch {
  std::vector<double> delta;
  std::vector<double> delta_prev;
};

// Parameter-shaped accumulator (gradients, Adam moments reuse Layer storage).
struct Gradients {
  std::vector<Layer> layers;

  void zero();
  void scale(double factor);
};

// Dense feed-forward net: relu on hidden layers, identity on the output.
class Network {
 public:
  Network() = default;

  // Glorot-uniform weights (limit sqrt(6/(fan_in+fan_out))), zero biases.
  static Network glorot(const NetworkSpec& spec, Rng& rng);

  const NetworkSpec& spec() const { return spec_; }
  int input_size() const { return spec_.input_size; }
  int output_size() const { return spec_.output_size; }
  std::size_t layer_count() const { return layers_.size(); }
  Layer& layer(std::size_t l) { return layers_[l]; }
  const Layer& layer(std::size_t l) const { return layers_[l]; }
  std::size_t parameter_count() const;

  // Convenience forward; allocates its own scratch.
  void forward(std::span<const double> input, std::span<double> output) const;

  // Forward that records every activation; the output lives in
  // cache.activations.back(). Buffers are reused across calls.
  void forward(std::span<const double> input, ForwardCache& cache) const;

  static Network from_layers(NetworkSpec spec, std::vector<Layer> layers);

 private:
  NetworkSpec spec_;
  std::vector<Layer> layers_;
};

Gradients gradients_like(const Network& net);

// loss = mean((predicted - target)^2); gradient[i] = 2*(p_i - t_i)/len.
// `gradient` may be empty to skip gradient output.
double mse_loss(std::span<const double> predicted, std::span<const double> target,
                std::span<double> gradient);

// Reverse-mode gradients for the forward pass recorded in `cache`,
// accumulated (+=) into `grads`. relu uses subgradient 0 at exactly 0.
void backward(const Network& net, const ForwardCache& cache,
              std::span<const double> output_gradient, Gradients& grads,
              BackpropScratch& scratch);

struct AdamState {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  long step = 0;
  std::vector<Layer> m;  // first moments
  std::vector<Layer> v;  // second moments
};

AdamState adam_like(const Network& net);

// Bias-corrected Adam step. Throws NumericalError on a non-finite update.
void adam_update(Network& net, const Gradients& grads, AdamState& state);

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Versioned text checkpoint; values are hexfloats, so a load reproduces the
// parameters bit-for-bit.
std::string checkpoint_text(const Network& net);
Network network_from_checkpoint_text(const std::string& text);
void save_checkpoint(const Network& net, const std::filesystem::path& path);
Network load_checkpoint(const std::filesystem::path& path);

}  // namespace seiropt::nn

#endif  // SEIROPT_NN_HPP_
