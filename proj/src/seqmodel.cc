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

#include "synfix/seqmodel.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "synfix/errors.h"

namespace synfix {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInitScale = 0.08;

std::size_t WIndex(int layer) { return 3 * static_cast<std::size_t>(layer); }
std::size_t VIndex(int layer) { return WIndex(layer) + 1; }
std::size_t BIndex(int layer) { return WIndex(layer) + 2; }
std::size_t UIndex(const ModelConfig& c) { return WIndex(c.num_layers); }
std::size_t OutBiasIndex(const ModelConfig& c) { return UIndex(c) + 1; }

int GateRows(const ModelConfig& c) {
  return c.arch == Arch::kLstm ? 4 * c.hidden_units : c.hidden_units;
}

MatrixXd Sigmoid(const MatrixXd& x) {
  return (1.0 + (-x.array()).exp()).inverse().matrix();
}

// Everything the backward pass needs from one layer at one time step.
struct LayerStep {
  MatrixXd h;       // H x B
  MatrixXd c;       // LSTM only
  MatrixXd gates;   // LSTM only: activated [i; f; o; g]
  MatrixXd tanh_c;  // LSTM only
};

// Forward for one layer. Layer 0 reads token ids, deeper layers `x`.
void LayerForward(const Parameters& p, const ModelConfig& cfg, int layer,
                  std::span<const TokenId> ids, const MatrixXd* x,
                  const MatrixXd& h_prev, const MatrixXd& c_prev,
                  LayerStep& out) {
  const MatrixXd& W = p.tensors[WIndex(layer)];
  const MatrixXd& V = p.tensors[VIndex(layer)];
  const MatrixXd& b = p.tensors[BIndex(layer)];
  const Eigen::Index batch = h_prev.cols();
  MatrixXd pre(W.rows(), batch);
  if (layer == 0) {
    for (Eigen::Index j = 0; j < batch; ++j) {
      pre.col(j) = W.col(ids[static_cast<std::size_t>(j)]);
    }
  } else {
    pre.noalias() = W * (*x);
  }
  pre.noalias() += V * h_prev;
  pre.colwise() += b.col(0);

  if (cfg.arch == Arch::kRnn) {
    out.h = pre.array().tanh().matrix();
    return;
  }
  const int H = cfg.hidden_units;
  out.gates.resize(pre.rows(), batch);
  out.gates.topRows(3 * H) = Sigmoid(pre.topRows(3 * H));
  out.gates.bottomRows(H) = pre.bottomRows(H).array().tanh().matrix();
  const auto i = out.gates.topRows(H).array();
  const auto f = out.gates.middleRows(H, H).array();
  const auto o = out.gates.middleRows(2 * H, H).array();
  const auto g = out.gates.bottomRows(H).array();
  out.c = (f * c_prev.array() + i * g).matrix();
  out.tanh_c = out.c.array().tanh().matrix();
  out.h = (o * out.tanh_c.array()).matrix();
}

// Column-wise log-softmax.
MatrixXd LogSoftmaxCols(const MatrixXd& z) {
  MatrixXd out(z.rows(), z.cols());
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    const double m = z.col(j).maxCoeff();
    const double lse = m + std::log((z.col(j).array() - m).exp().sum());
    out.col(j) = z.col(j).array() - lse;
  }
  return out;
}

void CheckWindows(const SequenceModel& model, std::span<const Window> windows) {
  if (windows.empty()) return;
  const std::size_t len = windows.front().input.size();
  for (const Window& w : windows) {
    if (w.input.size() != len || w.target.size() != len) {
      throw DimensionMismatch("windows must share one input/target length");
    }
    for (std::size_t t = 0; t < len; ++t) {
      for (TokenId id : {w.input[t], w.target[t]}) {
        if (id < 0 || id >= model.config().vocab_size) {
          throw DimensionMismatch("token id " + std::to_string(id) +
                                  " outside the model's vocabulary");
        }
      }
    }
  }
}

struct BatchTrace {
  // steps[t][layer]
  std::vector<std::vector<LayerStep>> steps;
  std::vector<MatrixXd> log_probs;  // I x B per step
  std::vector<std::vector<TokenId>> ids;  // ids[t][b]
  double loss = 0.0;
};

BatchTrace RunBatch(const SequenceModel& model,
                    std::span<const Window> windows) {
  CheckWindows(model, windows);
  const ModelConfig& cfg = model.config();
  const Parameters& p = model.params();
  BatchTrace trace;
  if (windows.empty()) return trace;
  const std::size_t len = windows.front().input.size();
  const Eigen::Index batch = static_cast<Eigen::Index>(windows.size());
  const MatrixXd zeros = MatrixXd::Zero(cfg.hidden_units, batch);
  const MatrixXd& U = p.tensors[UIndex(cfg)];
  const MatrixXd& bo = p.tensors[OutBiasIndex(cfg)];
  const double positions = static_cast<double>(len) * static_cast<double>(batch);

  trace.steps.resize(len);
  trace.log_probs.resize(len);
  trace.ids.resize(len);
  for (std::size_t t = 0; t < len; ++t) {
    auto& ids = trace.ids[t];
    ids.resize(windows.size());
    for (std::size_t j = 0; j < windows.size(); ++j) ids[j] = windows[j].input[t];
    trace.steps[t].resize(static_cast<std::size_t>(cfg.num_layers));
    for (int l = 0; l < cfg.num_layers; ++l) {
      const std::size_t li = static_cast<std::size_t>(l);
      const LayerStep* prev = t > 0 ? &trace.steps[t - 1][li] : nullptr;
      const MatrixXd& h_prev = prev ? prev->h : zeros;
      const MatrixXd& c_prev =
          (prev && cfg.arch == Arch::kLstm) ? prev->c : zeros;
      const MatrixXd* below = l > 0 ? &trace.steps[t][li - 1].h : nullptr;
      LayerForward(p, cfg, l, ids, below, h_prev, c_prev, trace.steps[t][li]);
    }
    MatrixXd z = U * trace.steps[t].back().h;
    z.colwise() += bo.col(0);
    trace.log_probs[t] = LogSoftmaxCols(z);
    for (std::size_t j = 0; j < windows.size(); ++j) {
      trace.loss -= windows[j].weight *
                    trace.log_probs[t](windows[j].target[t],
                                       static_cast<Eigen::Index>(j));
    }
  }
  trace.loss /= positions;
  return trace;
}

std::uint64_t NextUniformBits(std::mt19937_64& rng) { return rng() >> 11; }

}  // namespace

// ---- configuration ---------------------------------------------------------

std::string_view ArchName(Arch arch) {
  return arch == Arch::kRnn ? "rnn" : "lstm";
}

Arch ParseArch(std::string_view name) {
  if (name == "rnn" || name == "RNN") return Arch::kRnn;
  if (name == "lstm" || name == "LSTM") return Arch::kLstm;
  throw InvalidArgument("unknown architecture '" + std::string(name) + "'");
}

void ModelConfig::Validate() const {
  if (num_layers < 1) throw InvalidArgument("num_layers must be >= 1");
  if (hidden_units < 1) throw InvalidArgument("hidden_units must be >= 1");
  if (vocab_size < 2) throw InvalidArgument("vocab_size must be >= 2");
}

void TrainHyper::Validate() const {
  if (!(learning_rate > 0)) throw InvalidArgument("learning rate must be > 0");
  if (seq_length < 1) throw InvalidArgument("seq_length must be >= 1");
  if (batch_size < 1) throw InvalidArgument("batch_size must be >= 1");
  if (!(rmsprop_decay > 0 && rmsprop_decay < 1)) {
    throw InvalidArgument("rmsprop decay must lie in (0, 1)");
  }
  if (!(clip_threshold > 0)) throw InvalidArgument("clip threshold must be > 0");
  if (max_epochs < 1) throw InvalidArgument("max_epochs must be >= 1");
}

// ---- parameters ------------------------------------------------------------

Parameters Parameters::ZerosLike() const {
  Parameters z;
  z.names = names;
  for (const MatrixXd& m : tensors) z.tensors.push_back(MatrixXd::Zero(m.rows(), m.cols()));
  return z;
}

void Parameters::SetZero() {
  for (MatrixXd& m : tensors) m.setZero();
}

bool Parameters::SameShape(const Parameters& other) const {
  if (names != other.names || tensors.size() != other.tensors.size()) return false;
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    if (tensors[i].rows() != other.tensors[i].rows() ||
        tensors[i].cols() != other.tensors[i].cols()) {
      return false;
    }
  }
  return true;
}

std::size_t Parameters::NumScalars() const {
  std::size_t n = 0;
  for (const MatrixXd& m : tensors) n += static_cast<std::size_t>(m.size());
  return n;
}

std::size_t Parameters::IndexOf(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw InvalidArgument("no tensor named '" + std::string(name) + "'");
}

bool operator==(const Parameters& a, const Parameters& b) {
  if (!a.SameShape(b)) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.tensors[i] != b.tensors[i]) return false;
  }
  return true;
}

Parameters MakeParameterShapes(const ModelConfig& config) {
  config.Validate();
  Parameters p;
  const int H = config.hidden_units;
  const int G = GateRows(config);
  for (int l = 0; l < config.num_layers; ++l) {
    const std::string prefix = "layer" + std::to_string(l) + ".";
    const int in = l == 0 ? config.vocab_size : H;
    p.names.push_back(prefix + "W");
    p.tensors.push_back(MatrixXd::Zero(G, in));
    p.names.push_back(prefix + "V");
    p.tensors.push_back(MatrixXd::Zero(G, H));
    p.names.push_back(prefix + "b");
    p.tensors.push_back(MatrixXd::Zero(G, 1));
  }
  p.names.push_back("output.U");
  p.tensors.push_back(MatrixXd::Zero(config.vocab_size, H));
  p.names.push_back("output.b");
  p.tensors.push_back(MatrixXd::Zero(config.vocab_size, 1));
  return p;
}

// ---- model -----------------------------------------------------------------

SequenceModel::SequenceModel(const ModelConfig& config)
    : config_(config), params_(MakeParameterShapes(config)) {}

SequenceModel SequenceModel::Initialized(const ModelConfig& config) {
  SequenceModel model(config);
  std::mt19937_64 rng(config.seed);
  for (MatrixXd& m : model.params_.tensors) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double u =
            static_cast<double>(NextUniformBits(rng)) * 0x1.0p-53;  // [0, 1)
        m(i, j) = -kInitScale + 2.0 * kInitScale * u;
      }
    }
  }
  return model;
}

SequenceModel SequenceModel::FromParameters(const ModelConfig& config,
                                            Parameters params) {
  SequenceModel model(config);
  if (!model.params_.SameShape(params)) {
    throw ShapeMismatch("parameter tensors do not match the model config");
  }
  model.params_ = std::move(params);
  return model;
}

HiddenState SequenceModel::ZeroState() const {
  HiddenState s;
  for (int l = 0; l < config_.num_layers; ++l) {
    LayerState layer;
    layer.h = VectorXd::Zero(config_.hidden_units);
    if (config_.arch == Arch::kLstm) layer.c = VectorXd::Zero(config_.hidden_units);
    s.layers.push_back(std::move(layer));
  }
  return s;
}

void SequenceModel::CheckId(TokenId id) const {
  if (id < 0 || id >= config_.vocab_size) {
    throw DimensionMismatch("token id " + std::to_string(id) +
                            " outside the model's vocabulary");
  }
}

void SequenceModel::CheckState(const HiddenState& state) const {
  if (static_cast<int>(state.layers.size()) != config_.num_layers) {
    throw DimensionMismatch("hidden state has the wrong number of layers");
  }
  for (const LayerState& l : state.layers) {
    if (l.h.size() != config_.hidden_units ||
        (config_.arch == Arch::kLstm && l.c.size() != config_.hidden_units)) {
      throw DimensionMismatch("hidden state has the wrong width");
    }
  }
}

StepResult SequenceModel::Step(TokenId input, const HiddenState& prev) const {
  CheckId(input);
  CheckState(prev);
  StepResult result;
  const TokenId ids[1] = {input};
  const MatrixXd* below = nullptr;
  std::vector<LayerStep> layers(static_cast<std::size_t>(config_.num_layers));
  for (int l = 0; l < config_.num_layers; ++l) {
    const LayerState& p = prev.layers[static_cast<std::size_t>(l)];
    const MatrixXd h_prev = p.h;
    const MatrixXd c_prev =
        config_.arch == Arch::kLstm ? MatrixXd(p.c) : MatrixXd();
    LayerStep& out = layers[static_cast<std::size_t>(l)];
    LayerForward(params_, config_, l, ids, below, h_prev, c_prev, out);
    below = &out.h;
    LayerState next;
    next.h = out.h.col(0);
    if (config_.arch == Arch::kLstm) next.c = out.c.col(0);
    result.next.layers.push_back(std::move(next));
  }
  VectorXd z = params_.tensors[UIndex(config_)] * layers.back().h.col(0) +
               params_.tensors[OutBiasIndex(config_)].col(0);
  result.dist = Softmax(z);
  return result;
}

StepResult SequenceModel::Step(const VectorXd& one_hot,
                               const HiddenState& prev) const {
  if (one_hot.size() != config_.vocab_size) {
    throw DimensionMismatch("input vector length differs from vocab size");
  }
  Eigen::Index hot = -1;
  for (Eigen::Index i = 0; i < one_hot.size(); ++i) {
    if (one_hot[i] == 0.0) continue;
    if (one_hot[i] != 1.0 || hot >= 0) {
      throw DimensionMismatch("input is not a one-hot vector");
    }
    hot = i;
  }
  if (hot < 0) throw DimensionMismatch("input is not a one-hot vector");
  return Step(static_cast<TokenId>(hot), prev);
}

double SequenceModel::SequenceLoss(std::span<const TokenId> input,
                                   std::span<const TokenId> target) const {
  if (input.size() != target.size()) {
    throw DimensionMismatch("input and target lengths differ");
  }
  if (input.empty()) return 0.0;
  const Window w{std::vector<TokenId>(input.begin(), input.end()),
                 std::vector<TokenId>(target.begin(), target.end()), 1.0};
  return BatchLoss(*this, std::span<const Window>(&w, 1));
}

VectorXd Softmax(const VectorXd& z) {
  const double m = z.maxCoeff();
  VectorXd e = (z.array() - m).exp().matrix();
  return e / e.sum();
}

// ---- gradients -------------------------------------------------------------

double BatchLoss(const SequenceModel& model, std::span<const Window> windows) {
  return RunBatch(model, windows).loss;
}

double BpttGradients(const SequenceModel& model, std::span<const Window> windows,
                     Parameters& grads) {
  const ModelConfig& cfg = model.config();
  const Parameters& p = model.params();
  grads = p.ZerosLike();
  BatchTrace trace = RunBatch(model, windows);
  if (windows.empty()) return 0.0;

  const std::size_t len = windows.front().input.size();
  const Eigen::Index batch = static_cast<Eigen::Index>(windows.size());
  const double positions = static_cast<double>(len) * static_cast<double>(batch);
  const int H = cfg.hidden_units;
  const std::size_t num_layers = static_cast<std::size_t>(cfg.num_layers);
  const MatrixXd& U = p.tensors[UIndex(cfg)];
  MatrixXd& dU = grads.tensors[UIndex(cfg)];
  MatrixXd& dbo = grads.tensors[OutBiasIndex(cfg)];

  // Gradient flowing into each layer's h at each step from above.
  std::vector<MatrixXd> dh_in(len);
  for (std::size_t t = 0; t < len; ++t) {
    MatrixXd dz = trace.log_probs[t].array().exp().matrix();
    for (Eigen::Index j = 0; j < batch; ++j) {
      const Window& w = windows[static_cast<std::size_t>(j)];
      dz(w.target[t], j) -= 1.0;
      dz.col(j) *= w.weight / positions;
    }
    const MatrixXd& h_top = trace.steps[t].back().h;
    dU.noalias() += dz * h_top.transpose();
    dbo.col(0) += dz.rowwise().sum();
    dh_in[t].noalias() = U.transpose() * dz;
  }

  for (std::size_t li = num_layers; li-- > 0;) {
    const int l = static_cast<int>(li);
    const MatrixXd& W = p.tensors[WIndex(l)];
    const MatrixXd& V = p.tensors[VIndex(l)];
    MatrixXd& dW = grads.tensors[WIndex(l)];
    MatrixXd& dV = grads.tensors[VIndex(l)];
    MatrixXd& db = grads.tensors[BIndex(l)];
    MatrixXd dh_next = MatrixXd::Zero(H, batch);
    MatrixXd dc_next = MatrixXd::Zero(H, batch);
    std::vector<MatrixXd> dh_below(len);
    for (std::size_t t = len; t-- > 0;) {
      const LayerStep& step = trace.steps[t][li];
      const MatrixXd dh = dh_in[t] + dh_next;
      MatrixXd da;
      if (cfg.arch == Arch::kRnn) {
        da = (dh.array() * (1.0 - step.h.array().square())).matrix();
      } else {
        const auto i = step.gates.topRows(H).array();
        const auto f = step.gates.middleRows(H, H).array();
        const auto o = step.gates.middleRows(2 * H, H).array();
        const auto g = step.gates.bottomRows(H).array();
        const auto tc = step.tanh_c.array();
        const MatrixXd c_prev =
            t > 0 ? trace.steps[t - 1][li].c : MatrixXd::Zero(H, batch);
        const Eigen::ArrayXXd dc =
            dc_next.array() + dh.array() * o * (1.0 - tc.square());
        da.resize(4 * H, batch);
        da.topRows(H) = (dc * g * i * (1.0 - i)).matrix();
        da.middleRows(H, H) = (dc * c_prev.array() * f * (1.0 - f)).matrix();
        da.middleRows(2 * H, H) = (dh.array() * tc * o * (1.0 - o)).matrix();
        da.bottomRows(H) = (dc * i * (1.0 - g.square())).matrix();
        dc_next = (dc * f).matrix();
      }
      if (l == 0) {
        for (Eigen::Index j = 0; j < batch; ++j) {
          dW.col(trace.ids[t][static_cast<std::size_t>(j)]) += da.col(j);
        }
      } else {
        dW.noalias() += da * trace.steps[t][li - 1].h.transpose();
        dh_below[t].noalias() = W.transpose() * da;
      }
      if (t > 0) dV.noalias() += da * trace.steps[t - 1][li].h.transpose();
      db.col(0) += da.rowwise().sum();
      dh_next.noalias() = V.transpose() * da;
    }
    if (l > 0) dh_in = std::move(dh_below);
  }
  return trace.loss;
}

// ---- optimizer -------------------------------------------------------------

void RmsProp::Update(Parameters& params, const Parameters& grads,
                     const TrainHyper& hyper) {
  if (cache_.size() == 0) cache_ = params.ZerosLike();
  if (!params.SameShape(grads) || !params.SameShape(cache_)) {
    throw DimensionMismatch("parameter, gradient and cache shapes differ");
  }
  const double clip = hyper.clip_threshold;
  const double decay = hyper.rmsprop_decay;
  const double lr = hyper.learning_rate;
  for (std::size_t k = 0; k < params.size(); ++k) {
    const Eigen::ArrayXXd g = grads.tensors[k].array().max(-clip).min(clip);
    Eigen::ArrayXXd cache = cache_.tensors[k].array();
    cache = decay * cache + (1.0 - decay) * g.square();
    cache_.tensors[k] = cache.matrix();
    params.tensors[k].array() -= lr * g / (cache + kEpsilon).sqrt();
  }
}

// ---- training --------------------------------------------------------------

std::vector<Window> MakeWindows(std::span<const TokenId> stream,
                                int seq_length) {
  if (seq_length < 1) throw InvalidArgument("seq_length must be >= 1");
  const std::size_t len = static_cast<std::size_t>(seq_length);
  if (stream.size() < len + 1) {
    throw CorpusTooSmall("token stream of " + std::to_string(stream.size()) +
                         " tokens is shorter than one window plus one");
  }
  const std::size_t count = (stream.size() - 1) / len;
  std::vector<Window> windows(count);
  for (std::size_t w = 0; w < count; ++w) {
    const auto begin = stream.begin() + static_cast<std::ptrdiff_t>(w * len);
    windows[w].input.assign(begin, begin + static_cast<std::ptrdiff_t>(len));
    windows[w].target.assign(begin + 1, begin + 1 + static_cast<std::ptrdiff_t>(len));
  }
  return windows;
}

namespace {

double MeanLossOver(const SequenceModel& model, std::span<const Window> windows,
                    std::size_t batch_size) {
  double total = 0.0;
  for (std::size_t start = 0; start < windows.size(); start += batch_size) {
    const std::size_t n = std::min(batch_size, windows.size() - start);
    total += BatchLoss(model, windows.subspan(start, n)) * static_cast<double>(n);
  }
  return total / static_cast<double>(windows.size());
}

}  // namespace

double StreamLoss(const SequenceModel& model, std::span<const TokenId> stream,
                  int seq_length) {
  const std::vector<Window> windows = MakeWindows(stream, seq_length);
  return MeanLossOver(model, windows, 64);
}

TrainResult Train(std::span<const TokenId> stream, const ModelConfig& config,
                  const TrainHyper& hyper, const EpochCallback& on_epoch) {
  config.Validate();
  hyper.Validate();
  const std::vector<Window> windows = MakeWindows(stream, hyper.seq_length);
  const std::span<const Window> all(windows);
  const std::size_t batch_size = static_cast<std::size_t>(hyper.batch_size);

  TrainResult result;
  result.model = SequenceModel::Initialized(config);
  result.optimizer = RmsProp(result.model.params());
  result.initial_loss = MeanLossOver(result.model, all, batch_size);
  if (on_epoch) on_epoch(0, result.initial_loss);

  Parameters grads;
  for (int epoch = 1; epoch <= hyper.max_epochs; ++epoch) {
    double total = 0.0;
    for (std::size_t start = 0; start < windows.size(); start += batch_size) {
      const std::size_t n = std::min(batch_size, windows.size() - start);
      const double loss = BpttGradients(result.model, all.subspan(start, n), grads);
      total += loss * static_cast<double>(n);
      result.optimizer.Update(result.model.mutable_params(), grads, hyper);
    }
    const double mean = total / static_cast<double>(windows.size());
    result.epoch_loss.push_back(mean);
    if (on_epoch) on_epoch(epoch, mean);
  }
  return result;
}

// ---- decoding --------------------------------------------------------------

TokenId Argmax(const VectorXd& dist) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < dist.size(); ++i) {
    if (dist[i] > dist[best]) best = i;
  }
  return static_cast<TokenId>(best);
}

namespace {

StepResult RunPrefix(const SequenceModel& model,
                     std::span<const TokenId> prefix) {
  if (prefix.empty()) throw EmptyPrefix("prediction needs a non-empty prefix");
  StepResult step{model.ZeroState(), {}};
  for (TokenId id : prefix) step = model.Step(id, step.next);
  return step;
}

}  // namespace

std::vector<TokenId> PredictNext(const SequenceModel& model,
                                 std::span<const TokenId> prefix, int k) {
  if (k < 1) throw InvalidArgument("prediction length must be >= 1");
  StepResult step = RunPrefix(model, prefix);
  std::vector<TokenId> out;
  for (int n = 0; n < k; ++n) {
    const TokenId next = Argmax(step.dist);
    out.push_back(next);
    if (n + 1 < k) step = model.Step(next, step.next);
  }
  return out;
}

LinePrediction PredictUntilNewline(const SequenceModel& model,
                                   std::span<const TokenId> prefix,
                                   TokenId newline_id, int max_len) {
  if (max_len < 1) throw InvalidArgument("max_len must be >= 1");
  StepResult step = RunPrefix(model, prefix);
  LinePrediction out;
  for (int n = 0; n < max_len; ++n) {
    const TokenId next = Argmax(step.dist);
    out.tokens.push_back(next);
    if (next == newline_id) {
      out.complete = true;
      break;
    }
    if (n + 1 < max_len) step = model.Step(next, step.next);
  }
  return out;
}

}  // namespace synfix
