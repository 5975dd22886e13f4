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

#include "seiropt/dqn.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace seiropt::dqn {
namespace {

int state_size(const DqnConfig& cfg) { return cfg.window + (cfg.state_augmentation ? 2 : 0); }

nn::NetworkSpec network_spec(const DqnConfig& cfg) {
  nn::NetworkSpec spec;
  spec.input_size = state_size(cfg);
  spec.hidden_sizes = {64, 128, 128};
  spec.output_size = scenario::kPhaseCount;
  return spec;
}

// Augmented inputs append day/horizon and the DFA state scaled into [0, 1].
void append_augmentation(const scenario::Scenario& sc, const scenario::RolloutEnv& env,
                         std::vector<double>& state) {
  state.push_back(static_cast<double>(env.day()) / static_cast<double>(sc.horizon));
  state.push_back(static_cast<double>(env.dfa()) / 5.0);
}

std::vector<double> observed_state(const scenario::Scenario& sc, const scenario::RolloutEnv& env,
                                   const DqnConfig& cfg) {
  std::vector<double> state = encode_state(env.infectious_history(), env.day(), cfg.window);
  if (cfg.state_augmentation) append_augmentation(sc, env, state);
  return state;
}

// Uniform sample with replacement into a reusable pointer batch.
void scratch_sample(const ReplayBuffer& buffer, int count, Rng& rng,
                    std::vector<const Transition*>& batch) {
  batch.resize(count);
  for (int k = 0; k < count; ++k) batch[k] = &buffer.at(rng.below(buffer.size()));
}

}  // namespace

void validate(const DqnConfig& cfg) {
  if (cfg.episodes < 0) throw std::invalid_argument("episodes must be >= 0");
  if (cfg.window < 1) throw std::invalid_argument("window must be >= 1");
  if (!(cfg.discount > 0.0) || !(cfg.discount < 1.0)) {
    throw std::invalid_argument("discount must lie in (0, 1)");
  }
  if (!(cfg.epsilon_start >= 0.0) || cfg.epsilon_start > 1.0 || cfg.epsilon_min < 0.0 ||
      cfg.epsilon_min > cfg.epsilon_start) {
    throw std::invalid_argument("epsilon schedule must satisfy 0 <= min <= start <= 1");
  }
  if (!(cfg.epsilon_decay > 0.0) || cfg.epsilon_decay > 1.0) {
    throw std::invalid_argument("epsilon_decay must lie in (0, 1]");
  }
  if (cfg.minibatch_size < 1) throw std::invalid_argument("minibatch_size must be >= 1");
  if (cfg.replay_capacity < cfg.minibatch_size) {
    throw std::invalid_argument("replay_capacity must hold at least one minibatch");
  }
  if (cfg.eval_every < 1) throw std::invalid_argument("eval_every must be >= 1");
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : slots_(capacity) {
  if (capacity == 0) throw std::invalid_argument("replay capacity must be >= 1");
}

void ReplayBuffer::push(Transition t) {
  if (size_ < slots_.size()) {
    slots_[(head_ + size_) % slots_.size()] = std::move(t);
    ++size_;
  } else {
    slots_[head_] = std::move(t);  // overwrite the oldest
    head_ = (head_ + 1) % slots_.size();
  }
}

const Transition& ReplayBuffer::at(std::size_t index) const {
  if (index >= size_) throw std::out_of_range("replay index out of range");
  return slots_[(head_ + index) % slots_.size()];
}

std::vector<double> encode_state(std::span<const double> infectious_history, int day,
                                 int window) {
  std::vector<double> out(window);
  encode_state_into(infectious_history, day, window, out);
  return out;
}

void encode_state_into(std::span<const double> infectious_history, int day, int window,
                       std::span<double> out) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (static_cast<int>(out.size()) != window) {
    throw std::invalid_argument("encode_state output size mismatch");
  }
  if (day > 0 && static_cast<std::size_t>(day) >= infectious_history.size()) {
    throw std::invalid_argument("infectious history does not cover day " + std::to_string(day));
  }
  for (int k = 0; k < window; ++k) {
    const int d = day - (window - 1) + k;
    out[k] = d >= 1 ? infectious_history[d] * 100.0 : 0.0;
  }
}

int select_action(std::span<const double> q_values, double epsilon, Rng& rng) {
  if (q_values.empty()) throw std::invalid_argument("empty Q row");
  if (epsilon < 0.0 || epsilon > 1.0) throw std::invalid_argument("epsilon must lie in [0, 1]");
  if (rng.bernoulli(epsilon)) return rng.below_int(static_cast<int>(q_values.size()));
  int best = 0;
  for (int a = 1; a < static_cast<int>(q_values.size()); ++a) {
    if (q_values[a] > q_values[best]) best = a;
  }
  return best;
}

TrainScratch train_scratch_for(const nn::Network& net) {
  TrainScratch s;
  s.grads = nn::gradients_like(net);
  s.q_next.resize(net.output_size());
  s.target.resize(net.output_size());
  s.out_grad.resize(net.output_size());
  return s;
}

double train_step(nn::Network& net, nn::AdamState& adam,
                  std::span<const Transition* const> minibatch, double discount,
                  TrainScratch& scratch) {
  if (minibatch.empty()) throw std::invalid_argument("train_step needs a non-empty minibatch");
  scratch.grads.zero();
  const double inv = 1.0 / static_cast<double>(minibatch.size());
  double loss_sum = 0.0;
  for (const Transition* t : minibatch) {
    net.forward(t->state, scratch.cache);
    const std::vector<double>& q = scratch.cache.activations.back();
    double target_value = t->reward;
    if (!t->terminal) {
      net.forward(t->next_state, std::span<double>(scratch.q_next));
      target_value += discount * *std::max_element(scratch.q_next.begin(), scratch.q_next.end());
    }
    scratch.target.assign(q.begin(), q.end());
    scratch.target[t->action] = target_value;
    loss_sum += nn::mse_loss(q, scratch.target, scratch.out_grad);
    // fold the batch mean into the upstream gradient (cheaper than scaling
    // every parameter gradient afterwards)
    for (double& g : scratch.out_grad) g *= inv;
    nn::backward(net, scratch.cache, scratch.out_grad, scratch.grads, scratch.back);
  }
  const double loss = loss_sum * inv;
  if (!std::isfinite(loss)) {
    throw nn::NumericalError("training loss diverged (non-finite)");
  }
  nn::adam_update(net, scratch.grads, adam);
  return loss;
}

EpisodeResult run_episode(const scenario::Scenario& sc, nn::Network& net, double epsilon,
                          ReplayBuffer& buffer, Rng& rng, const DqnConfig& cfg,
                          Learner* learner) {
  validate(cfg);
  if (net.input_size() != state_size(cfg)) {
    throw std::invalid_argument("network input does not match the configured state size");
  }

  scenario::RolloutEnv env(sc);
  EpisodeResult result;
  result.actions.reserve(sc.horizon);

  std::vector<double> state = observed_state(sc, env, cfg);
  std::vector<double> q(net.output_size());

  for (int day = 1; day <= sc.horizon; ++day) {
    net.forward(state, std::span<double>(q));
    const int action = select_action(q, epsilon, rng);
    const scenario::RolloutEnv::DayOutcome out = env.step(action);
    std::vector<double> next_state = observed_state(sc, env, cfg);

    Transition t;
    t.state = state;
    t.action = action;
    t.reward = out.reward;
    t.next_state = next_state;
    t.terminal = day == sc.horizon;
    buffer.push(std::move(t));

    result.actions.push_back(action);
    result.total_reward += out.reward;

    if (learner != nullptr && buffer.size() >= static_cast<std::size_t>(learner->minibatch_size)) {
      scratch_sample(buffer, learner->minibatch_size, rng, learner->scratch.batch);
      try {
        learner->last_loss = train_step(net, learner->adam, learner->scratch.batch,
                                        learner->discount, learner->scratch);
      } catch (const nn::NumericalError& err) {
        throw nn::NumericalError(std::string(err.what()) + " on day " + std::to_string(day));
      }
    }
    state = std::move(next_state);
  }
  return result;
}

EpisodeResult greedy_rollout(const scenario::Scenario& sc, const nn::Network& net,
                             const DqnConfig& cfg) {
  validate(cfg);
  if (net.input_size() != state_size(cfg)) {
    throw std::invalid_argument("network input does not match the configured state size");
  }
  scenario::RolloutEnv env(sc);
  EpisodeResult result;
  result.actions.reserve(sc.horizon);
  std::vector<double> state = observed_state(sc, env, cfg);
  std::vector<double> q(net.output_size());
  Rng unused(0);  // epsilon 0 never draws
  for (int day = 1; day <= sc.horizon; ++day) {
    net.forward(state, std::span<double>(q));
    const int action = select_action(q, 0.0, unused);
    const scenario::RolloutEnv::DayOutcome out = env.step(action);
    result.actions.push_back(action);
    result.total_reward += out.reward;
    state = observed_state(sc, env, cfg);
  }
  return result;
}

TrainReport train(const DqnConfig& cfg, const scenario::Scenario& sc) {
  validate(cfg);
  scenario::validate(sc);
  const auto t0 = std::chrono::steady_clock::now();

  Rng rng(cfg.rng_seed);
  nn::Network net = nn::Network::glorot(network_spec(cfg), rng);
  ReplayBuffer buffer(cfg.replay_capacity);
  Learner learner;
  learner.adam = nn::adam_like(net);
  learner.discount = cfg.discount;
  learner.minibatch_size = cfg.minibatch_size;
  learner.scratch = train_scratch_for(net);

  TrainReport report;
  bool have_best = false;
  auto record_eval = [&](int episode) {
    const EpisodeResult eval = greedy_rollout(sc, net, cfg);
    report.greedy_curve.push_back({episode, eval.total_reward});
    if (!have_best || eval.total_reward > report.best_evaluation.total_reward) {
      report.best_actions = eval.actions;
      report.best_episode = episode;
      report.best_evaluation.total_reward = eval.total_reward;  // refined below
      have_best = true;
    }
  };

  record_eval(0);
  double epsilon = cfg.epsilon_start;
  for (int episode = 1; episode <= cfg.episodes; ++episode) {
    try {
      run_episode(sc, net, epsilon, buffer, rng, cfg, &learner);
    } catch (const nn::NumericalError& err) {
      throw nn::NumericalError(std::string(err.what()) + " in episode " +
                               std::to_string(episode));
    }
    if (episode % cfg.eval_every == 0 || episode == cfg.episodes) record_eval(episode);
    epsilon = std::max(cfg.epsilon_min,
                       cfg.epsilon_start * std::pow(cfg.epsilon_decay, static_cast<double>(episode)));
  }

  report.best_evaluation = scenario::evaluate_sequence(sc, report.best_actions);
  report.final_epsilon = epsilon;
  report.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace seiropt::dqn
