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

#include "synfix/container.h"

#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "synfix/errors.h"

namespace synfix {
namespace {

using nlohmann::json;

constexpr char kMagic[8] = {'S', 'Y', 'N', 'F', 'I', 'X', '0', '1'};
constexpr std::uint64_t kMaxMetadataBytes = std::uint64_t{1} << 32;
constexpr std::uint64_t kMaxTensorScalars = std::uint64_t{1} << 31;

template <typename T>
void PutLe(std::ostream& out, T value) {
  char bytes[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  }
  out.write(bytes, sizeof(T));
}

void PutF64(std::ostream& out, double v) {
  PutLe<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
}

void ReadExact(std::istream& in, char* dst, std::size_t n, const char* what) {
  in.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw ShapeMismatch(std::string("container truncated while reading ") + what);
  }
}

template <typename T>
T GetLe(std::istream& in, const char* what) {
  unsigned char bytes[sizeof(T)];
  ReadExact(in, reinterpret_cast<char*>(bytes), sizeof(T), what);
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(bytes[i]) << (8 * i);
  }
  return value;
}

json DoubleToJson(double v) {
  // JSON has no NaN or infinity; keep them as strings so nothing is lost.
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double DoubleFromJson(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw IoFailure("bad number '" + s + "' in container metadata");
  }
  return j.get<double>();
}

json MetadataJson(const ModelContainer& c) {
  json m;
  const ModelConfig& mc = c.model_config;
  m["model_config"] = {{"arch", std::string(ArchName(mc.arch))},
                       {"num_layers", mc.num_layers},
                       {"hidden_units", mc.hidden_units},
                       {"vocab_size", mc.vocab_size},
                       {"seed", mc.seed}};
  const TrainHyper& h = c.train_hyper;
  m["train_hyper"] = {{"learning_rate", DoubleToJson(h.learning_rate)},
                      {"seq_length", h.seq_length},
                      {"batch_size", h.batch_size},
                      {"rmsprop_decay", DoubleToJson(h.rmsprop_decay)},
                      {"clip_threshold", DoubleToJson(h.clip_threshold)},
                      {"max_epochs", h.max_epochs}};
  json counts = json::array();
  for (const auto& [lexeme, n] : c.vocab.counts()) counts.push_back({lexeme, n});
  m["vocab"] = {{"id_to_token", c.vocab.id_to_token()},
                {"counts", counts},
                {"threshold", c.vocab.threshold()}};
  json losses = json::array();
  for (double l : c.meta.epoch_losses) losses.push_back(DoubleToJson(l));
  m["training"] = {{"seed", c.meta.seed},
                   {"epochs", c.meta.epochs},
                   {"final_loss", DoubleToJson(c.meta.final_loss)},
                   {"epoch_losses", losses}};
  return m;
}

void ApplyMetadata(const json& m, ModelContainer& c) {
  const json& mc = m.at("model_config");
  c.model_config.arch = ParseArch(mc.at("arch").get<std::string>());
  c.model_config.num_layers = mc.at("num_layers").get<int>();
  c.model_config.hidden_units = mc.at("hidden_units").get<int>();
  c.model_config.vocab_size = mc.at("vocab_size").get<int>();
  c.model_config.seed = mc.at("seed").get<std::uint64_t>();
  const json& h = m.at("train_hyper");
  c.train_hyper.learning_rate = DoubleFromJson(h.at("learning_rate"));
  c.train_hyper.seq_length = h.at("seq_length").get<int>();
  c.train_hyper.batch_size = h.at("batch_size").get<int>();
  c.train_hyper.rmsprop_decay = DoubleFromJson(h.at("rmsprop_decay"));
  c.train_hyper.clip_threshold = DoubleFromJson(h.at("clip_threshold"));
  c.train_hyper.max_epochs = h.at("max_epochs").get<int>();
  const json& v = m.at("vocab");
  std::map<std::string, std::int64_t> counts;
  for (const json& pair : v.at("counts")) {
    counts[pair.at(0).get<std::string>()] = pair.at(1).get<std::int64_t>();
  }
  c.vocab = Vocabulary::FromParts(v.at("id_to_token").get<std::vector<std::string>>(),
                                  std::move(counts), v.at("threshold").get<int>());
  const json& t = m.at("training");
  c.meta.seed = t.at("seed").get<std::uint64_t>();
  c.meta.epochs = t.at("epochs").get<int>();
  c.meta.final_loss = DoubleFromJson(t.at("final_loss"));
  c.meta.epoch_losses.clear();
  for (const json& l : t.at("epoch_losses")) c.meta.epoch_losses.push_back(DoubleFromJson(l));
}

bool SameBits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

}  // namespace

SequenceModel ModelContainer::Model() const {
  return SequenceModel::FromParameters(model_config, params);
}

bool operator==(const ModelContainer& a, const ModelContainer& b) {
  if (a.format_version != b.format_version || !(a.model_config == b.model_config) ||
      !(a.vocab == b.vocab) || a.meta.seed != b.meta.seed ||
      a.meta.epochs != b.meta.epochs || !SameBits(a.meta.final_loss, b.meta.final_loss) ||
      a.meta.epoch_losses.size() != b.meta.epoch_losses.size() ||
      !a.params.SameShape(b.params)) {
    return false;
  }
  for (std::size_t i = 0; i < a.meta.epoch_losses.size(); ++i) {
    if (!SameBits(a.meta.epoch_losses[i], b.meta.epoch_losses[i])) return false;
  }
  const TrainHyper &ha = a.train_hyper, &hb = b.train_hyper;
  if (!SameBits(ha.learning_rate, hb.learning_rate) || ha.seq_length != hb.seq_length ||
      ha.batch_size != hb.batch_size || !SameBits(ha.rmsprop_decay, hb.rmsprop_decay) ||
      !SameBits(ha.clip_threshold, hb.clip_threshold) || ha.max_epochs != hb.max_epochs) {
    return false;
  }
  for (std::size_t k = 0; k < a.params.size(); ++k) {
    const auto& x = a.params.tensors[k];
    const auto& y = b.params.tensors[k];
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (!SameBits(x.data()[i], y.data()[i])) return false;
    }
  }
  return true;
}

void SaveModel(const ModelContainer& c, std::ostream& out) {
  const std::string meta = MetadataJson(c).dump();
  out.write(kMagic, sizeof(kMagic));
  PutLe<std::uint32_t>(out, c.format_version);
  PutLe<std::uint64_t>(out, meta.size());
  out.write(meta.data(), static_cast<std::streamsize>(meta.size()));
  PutLe<std::uint32_t>(out, static_cast<std::uint32_t>(c.params.size()));
  for (std::size_t k = 0; k < c.params.size(); ++k) {
    const std::string& name = c.params.names[k];
    const Eigen::MatrixXd& m = c.params.tensors[k];
    PutLe<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    PutLe<std::uint32_t>(out, 2);
    PutLe<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
    PutLe<std::uint64_t>(out, static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) PutF64(out, m(i, j));
    }
  }
  if (!out) throw IoFailure("failed writing model container");
}

ModelContainer LoadModel(std::istream& in) {
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (in.gcount() != sizeof(magic) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw IoFailure("not a SYNFIX01 model container");
  }
  ModelContainer c;
  c.format_version = GetLe<std::uint32_t>(in, "format version");
  if (c.format_version != kFormatVersion) {
    throw VersionMismatch("container format version " +
                          std::to_string(c.format_version) + ", expected " +
                          std::to_string(kFormatVersion));
  }
  const std::uint64_t meta_len = GetLe<std::uint64_t>(in, "metadata length");
  if (meta_len > kMaxMetadataBytes) throw ShapeMismatch("metadata length is implausible");
  std::string meta(meta_len, '\0');
  ReadExact(in, meta.data(), meta.size(), "metadata");
  Parameters expected;
  try {
    ApplyMetadata(json::parse(meta), c);
    expected = MakeParameterShapes(c.model_config);
  } catch (const json::exception& e) {
    throw IoFailure(std::string("malformed container metadata: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw IoFailure(std::string("inconsistent container metadata: ") + e.what());
  }

  const std::uint32_t count = GetLe<std::uint32_t>(in, "tensor count");
  if (count != expected.size()) {
    throw ShapeMismatch("container holds " + std::to_string(count) +
                        " tensors, config needs " + std::to_string(expected.size()));
  }
  c.params = expected;
  for (std::uint32_t k = 0; k < count; ++k) {
    const std::uint32_t name_len = GetLe<std::uint32_t>(in, "tensor name length");
    if (name_len > 4096) throw ShapeMismatch("tensor name length is implausible");
    std::string name(name_len, '\0');
    ReadExact(in, name.data(), name.size(), "tensor name");
    const std::uint32_t rank = GetLe<std::uint32_t>(in, "tensor rank");
    if (rank != 2) throw ShapeMismatch("tensor '" + name + "' has rank " + std::to_string(rank));
    const std::uint64_t rows = GetLe<std::uint64_t>(in, "tensor dims");
    const std::uint64_t cols = GetLe<std::uint64_t>(in, "tensor dims");
    Eigen::MatrixXd& m = c.params.tensors[k];
    if (name != expected.names[k] || rows != static_cast<std::uint64_t>(m.rows()) ||
        cols != static_cast<std::uint64_t>(m.cols()) || rows * cols > kMaxTensorScalars) {
      throw ShapeMismatch("tensor '" + name + "' does not match the model config");
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        m(i, j) = std::bit_cast<double>(GetLe<std::uint64_t>(in, "tensor data"));
      }
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw ShapeMismatch("trailing bytes after the last tensor");
  }
  if (c.vocab.size() != c.model_config.vocab_size) {
    throw ShapeMismatch("vocabulary size differs from model config");
  }
  return c;
}

void SaveModelFile(const ModelContainer& c, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open '" + path.string() + "' for writing");
  SaveModel(c, out);
  out.close();
  if (!out) throw IoFailure("failed writing '" + path.string() + "'");
}

ModelContainer LoadModelFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open model file '" + path.string() + "'");
  return LoadModel(in);
}

}  // namespace synfix
