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

#ifndef SYNFIX_CONTAINER_H_
#define SYNFIX_CONTAINER_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "synfix/seqmodel.h"
#include "synfix/vocab.h"

namespace synfix {

// SYNFIX01 layout, all integers little-endian:
//   "SYNFIX01" | u32 format_version | u64 metadata bytes | metadata (JSON)
//   | u32 tensor count | per tensor: u32 name bytes, name, u32 rank,
//   rank x u64 dims, row-major f64 payload.
inline constexpr std::uint32_t kFormatVersion = 1;

struct TrainingMeta {
  std::uint64_t seed = 0;
  int epochs = 0;
  double final_loss = 0.0;
  std::vector<double> epoch_losses;  // index 0 is the loss before training
  friend bool operator==(const TrainingMeta&, const TrainingMeta&) = default;
};

struct ModelContainer {
  std::uint32_t format_version = kFormatVersion;
  ModelConfig model_config;
  TrainHyper train_hyper;
  Vocabulary vocab;
  Parameters params;
  TrainingMeta meta;

  SequenceModel Model() const;  // ShapeMismatch if params do not fit
};

bool operator==(const ModelContainer& a, const ModelContainer& b);

void SaveModel(const ModelContainer& c, std::ostream& out);
// Throws VersionMismatch, ShapeMismatch (truncated or inconsistent payload)
// or IoFailure (not a container).
ModelContainer LoadModel(std::istream& in);

void SaveModelFile(const ModelContainer& c, const std::filesystem::path& path);
ModelContainer LoadModelFile(const std::filesystem::path& path);

}  // namespace synfix

#endif  // SYNFIX_CONTAINER_H_
