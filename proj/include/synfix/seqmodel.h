// Copyright 2026 The SynFix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SYNFIX_SEQMODEL_H_
#define SYNFIX_SEQMODEL_H_

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "synfix/vocab.h"

namespace synfix {

enum class Arch { kRnn, kLstm };

std::string_view ArchName(Arch arch);
Arch ParseArch(std::string_view name);  // "rnn" | "lstm"; InvalidArgument

struct ModelConfig {
  Arch arch = Arch::kRnn;
  int num_layers = 1;
  int hidden_units = 128;
  int vocab_size = 2;
  std::uint64_t seed = 0;

  void Validate() const;  // throws InvalidArgument
  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

struct TrainHyper {
  double learning_rate = 0.002;
  int seq_length = 10;
  int batch_size = 50;
  double rmsprop_decay = 0.97;
  double clip_threshold = 5.0;
  int max_epochs = 40;

  void Validate() const;  // throws InvalidArgument
  friend bool operator==(const TrainHyper&, const TrainHyper&) = default;
};

// Named, shaped parameter tensors. Also used for gradients and for the
// rmsprop cache, which share the parameters' names and shapes.
struct Parameters {
  std::vector<std::string> names;
  std::vector<Eigen::MatrixXd> tensors;

  std::size_t size() const { return tensors.size(); }
  Parameters ZerosLike() const;
  void SetZero();
  bool SameShape(const Parameters& other) const;
  std::size_t NumScalars() const;
  // Index of the tensor called `name`; throws InvalidArgument if absent.
  std::size_t IndexOf(std::string_view name) const;
};

bool operator==(const Parameters& a, const Parameters& b);

// Per-layer recurrent state. `c` is empty for the plain RNN.
struct LayerState {
  Eigen::VectorXd h;
  Eigen::VectorXd c;
};

struct HiddenState {
  std::vector<LayerState> layers;
};

struct StepResult {
  HiddenState next;
  Eigen::VectorXd dist;  // softmax over the vocabulary
};

// Numerically stable softmax (max-shifted).
Eigen::VectorXd Softmax(const Eigen::VectorXd& z);

// A training window: `target` is `input` shifted left by one. `weight`
// scales the window's contribution to the loss.
struct Window {
  std::vector<TokenId> input;
  std::vector<TokenId> target;
  double weight = 1.0;
};

// RNN:  s_t = tanh(W x_t + V s_{t-1} + b), one set per layer; layer l > 0
//       takes layer l-1's state as x_t.
// LSTM: gates [i; f; o; g] = W x_t + V h_{t-1} + b stacked in that row order,
//       c_t = f*c_{t-1} + i*g, h_t = o*tanh(c_t).
// Both: dist_t = softmax(U s_top + b_out).
//
// Tensor names: "layer<k>.W", "layer<k>.V", "layer<k>.b", "output.U",
// "output.b".
class SequenceModel {
 public:
  SequenceModel() = default;
  // All-zero parameters.
  explicit SequenceModel(const ModelConfig& config);
  // Parameters drawn uniformly from [-0.08, 0.08] using config.seed.
  static SequenceModel Initialized(const ModelConfig& config);
  // Adopts existing tensors; throws ShapeMismatch if they do not fit config.
  static SequenceModel FromParameters(const ModelConfig& config,
                                      Parameters params);

  const ModelConfig& config() const { return config_; }
  const Parameters& params() const { return params_; }
  Parameters& mutable_params() { return params_; }

  HiddenState ZeroState() const;

  StepResult Step(TokenId input, const HiddenState& prev) const;
  // `one_hot` must have exactly one entry, equal to 1, and length vocab_size.
  StepResult Step(const Eigen::VectorXd& one_hot, const HiddenState& prev) const;

  // Mean over positions of -ln dist[target_t], from the zero state.
  double SequenceLoss(std::span<const TokenId> input,
                      std::span<const TokenId> target) const;

 private:
  void CheckId(TokenId id) const;
  void CheckState(const HiddenState& state) const;

  ModelConfig config_;
  Parameters params_;
};

Parameters MakeParameterShapes(const ModelConfig& config);

// Weighted mean cross-entropy over every position of `windows` and its exact
// gradient by backpropagation through time, truncated at window boundaries.
// All windows must share one length. Returns the loss and writes `grads`
// (resized to the model's shapes).
double BpttGradients(const SequenceModel& model, std::span<const Window> windows,
                     Parameters& grads);

// Loss only; same definition as BpttGradients.
double BatchLoss(const SequenceModel& model, std::span<const Window> windows);

// Elementwise-clipped rmsprop.
class RmsProp {
 public:
  RmsProp() = default;
  explicit RmsProp(const Parameters& like) : cache_(like.ZerosLike()) {}

  static constexpr double kEpsilon = 1e-8;

  // g <- clip(g, +-clip); cache <- decay*cache + (1-decay)*g^2;
  // theta <- theta - lr*g/sqrt(cache + eps).
  void Update(Parameters& params, const Parameters& grads,
              const TrainHyper& hyper);

  const Parameters& cache() const { return cache_; }
  Parameters& mutable_cache() { return cache_; }

 private:
  Parameters cache_;
};

// Consecutive, non-overlapping windows of `seq_length` over `stream` with
// shifted targets. Throws CorpusTooSmall if no full window fits.
std::vector<Window> MakeWindows(std::span<const TokenId> stream,
                                int seq_length);

struct TrainResult {
  SequenceModel model;
  RmsProp optimizer;
  double initial_loss = 0.0;        // before any update
  std::vector<double> epoch_loss;   // mean training loss per epoch
};

using EpochCallback = std::function<void(int epoch, double loss)>;

// Trains from a seeded initialization over sequential windows grouped into
// batches; one rmsprop step per batch. `on_epoch` sees epoch 0 (the initial
// loss) and then every completed epoch.
TrainResult Train(std::span<const TokenId> stream, const ModelConfig& config,
                  const TrainHyper& hyper, const EpochCallback& on_epoch = {});

// Mean loss over all windows of `stream`, each run from the zero state.
double StreamLoss(const SequenceModel& model, std::span<const TokenId> stream,
                  int seq_length);

// Index of the largest entry; ties go to the lowest index.
TokenId Argmax(const Eigen::VectorXd& dist);

// Greedy decoding: runs the prefix from the zero state, then emits k argmax
// tokens feeding each back in. Throws EmptyPrefix.
std::vector<TokenId> PredictNext(const SequenceModel& model,
                                 std::span<const TokenId> prefix, int k);

struct LinePrediction {
  std::vector<TokenId> tokens;
  bool complete = false;  // ended with `newline_id`
};

// Greedy decoding until `newline_id` is emitted (inclusive) or `max_len`
// tokens have been produced.
LinePrediction PredictUntilNewline(const SequenceModel& model,
                                   std::span<const TokenId> prefix,
                                   TokenId newline_id, int max_len);

}  // namespace synfix

#endif  // SYNFIX_SEQMODEL_H_
