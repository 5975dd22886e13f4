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

#ifndef SEIROPT_DQN_HPP_
#define SEIROPT_DQN_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "seiropt/nn.hpp"
#include "seiropt/rng.hpp"
#include "seiropt/scenario.hpp"

namespace seiropt::dqn {

struct DqnConfig {
  int episodes = 1000;
  int window = 25;          // days of infectious history fed to the network
  double discount = 0.95;   // Bellman gamma
  double epsilon_start = 1.0;
  double epsilon_decay = 0.99;  // per episode
  double epsilon_min = 0.02;
  int replay_capacity = 10000;
  int minibatch_size = 32;
  int eval_every = 10;  // episodes between greedy evaluations
  std::uint64_t rng_seed = 0;
  // Ablation only: appends the normalized day and DFA state to the network
  // input. Off by default; the canonical state is the infectious window.
  bool state_augmentation = false;
};

void validate(const DqnConfig& cfg);

struct Transition {
  std::vector<double> state;
  int action = 0;
  double reward = 0.0;
  std::vector<double> next_state;
  bool terminal = false;
};

// Fixed-capacity FIFO ring; at(0) is the oldest stored transition.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  std::size_t size() const { return size_; }
  std::size_t capacity() const { return slots_.size(); }
  const Transition& at(std::size_t index) const;

 private:
  std::vector<Transition> slots_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
};

// The `window` most recent infectious percentages (fraction * 100) ending at
// `day`, oldest first, zero-padded on the left for early days.
// infectious_history[d] holds the fraction after day d, entry 0 the initial
// value; the padding treats days < 1 as zero.
std::vector<double> encode_state(std::span<const double> infectious_history, int day, int window);
void encode_state_into(std::span<const double> infectious_history, int day, int window,
                       std::span<double> out);

// Epsilon-greedy over the Q row; greedy ties go to the lowest index. Consumes
// no randomness when epsilon is 0.
int select_action(std::span<const double> q_values, double epsilon, Rng& rng);

// Reusable buffers for train_step.
struct TrainScratch {
  nn::ForwardCache cache;
  nn::BackpropScratch back;
  nn::Gradients grads;
  std::vector<double> q_next;
  std::vector<double> target;
  std::vector<double> out_grad;
  std::vector<const Transition*> batch;
};

TrainScratch train_scratch_for(const nn::Network& net);

// One Bellman regression step: per transition the target is the current Q(s)
// row with the taken action's entry replaced by r, or r + discount * max
// Q(s') when non-terminal; a single Adam step on the minibatch MSE. Returns
// the pre-step loss.
double train_step(nn::Network& net, nn::AdamState& adam,
                  std::span<const Transition* const> minibatch, double discount,
                  TrainScratch& scratch);

struct EpisodeResult {
  scenario::ActionSequence actions;
  double total_reward = 0.0;
};

// Training plumbing threaded through run_episode.
struct Learner {
  nn::AdamState adam;
  double discount = 0.95;
  int minibatch_size = 32;
  TrainScratch scratch;
  double last_loss = 0.0;
};

// One epsilon-greedy episode over the full horizon: encode, act, step the
// environment, store the transition, and (when `learner` is set) run one
// train_step per day once the buffer holds a minibatch.
EpisodeResult run_episode(const scenario::Scenario& sc, nn::Network& net, double epsilon,
                          ReplayBuffer& buffer, Rng& rng, const DqnConfig& cfg,
                          Learner* learner);

// Pure evaluation rollout: epsilon 0, no learning, no buffer writes.
EpisodeResult greedy_rollout(const scenario::Scenario& sc, const nn::Network& net,
                             const DqnConfig& cfg);

struct TrainReport {
  struct EvalPoint {
    int episode = 0;
    double total_reward = 0.0;
  };
  std::vector<EvalPoint> greedy_curve;  // episode 0 is the untrained rollout
  scenario::ActionSequence best_actions;
  scenario::EvaluationResult best_evaluation;
  int best_episode = 0;
  double final_epsilon = 0.0;
  double wall_time_sec = 0.0;
};

// Full training loop; epsilon for episode k (1-based) is
// max(epsilon_min, epsilon_start * epsilon_decay^(k-1)).
TrainReport train(const DqnConfig& cfg, const scenario::Scenario& sc);

}  // namespace seiropt::dqn

#endif  // SEIROPT_DQN_HPP_
