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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "model_oracle.h"
#include "parser_fixtures.h"
#include "synfix/cli.h"
#include "synfix/container.h"
#include "synfix/corpus.h"
#include "synfix/lexer.h"
#include "synfix/parser.h"
#include "synfix/seqmodel.h"
#include "synfix/synfix.h"
#include "synfix/vocab.h"

namespace synfix {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;
int unsound_total = 0;
int sound_checked = 0;

void Run(const char* name, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("%s  %-22s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

double Since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Fmt(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

void CountSoundness(const RepairResult& r) {
  ++sound_checked;
  if (!IsSound(r)) ++unsound_total;
}

void CountSoundness(const EvalReport& report) {
  for (const EvalRecord& rec : report.records) {
    if (rec.already_valid) continue;
    CountSoundness(rec.result);
    if (rec.cells) {
      for (const RepairResult& cell : *rec.cells) CountSoundness(cell);
    }
  }
}

std::string Describe(const RepairResult& r) {
  std::string s(RepairStatusName(r.status));
  if (r.strategy) {
    s += " " + std::string(StrategyName(*r.strategy));
    if (r.endpoint) s += "@" + std::string(EndpointName(*r.endpoint));
  }
  s += " [";
  for (std::size_t i = 0; i < r.patch.size(); ++i) {
    s += (i ? " " : "") + (r.patch[i] == "\n" ? std::string("\\n") : r.patch[i]);
  }
  return s + "]";
}

Outcome GradientOracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2026);
  double worst = 0.0;
  int models = 0;
  for (Arch arch : {Arch::kRnn, Arch::kLstm}) {
    for (int layers : {1, 2}) {
      const int count = (arch == Arch::kRnn && layers == 1) ? 14 : 12;
      for (int i = 0; i < count; ++i, ++models) {
        const testing::TinyCase c = testing::RandomTinyCase(rng, arch, layers);
        Parameters analytic;
        BpttGradients(c.model, c.windows, analytic);
        worst = std::max(worst, testing::MaxRelativeError(
                                    analytic, testing::FiniteDifferenceGradients(c.model, c.windows)));
      }
    }
  }
  const double secs = Since(start);
  return {models == 50 && worst <= 1e-4 && secs < 60,
          Fmt("%d models, max relative error %.2e", models, worst)};
}

Outcome Memorization() {
  const auto start = Clock::now();
  std::vector<TokenId> stream;
  for (int i = 0; i < 200; ++i) stream.insert(stream.end(), {0, 1, 2});
  TrainHyper hyper;
  hyper.max_epochs = 200;
  const TrainResult r = Train(stream, ModelConfig{Arch::kRnn, 1, 16, 3, 1}, hyper);
  const double loss = StreamLoss(r.model, stream, hyper.seq_length);
  // Next-token accuracy with the training context length.
  int correct = 0, total = 0;
  for (std::size_t i = 1; i < stream.size(); ++i) {
    const std::size_t from = i > static_cast<std::size_t>(hyper.seq_length) ? i - hyper.seq_length : 0;
    const std::vector<TokenId> prefix(stream.begin() + from, stream.begin() + i);
    correct += PredictNext(r.model, prefix, 1)[0] == stream[i];
    ++total;
  }
  const double secs = Since(start);
  return {loss < 0.1 && correct == total && secs < 120,
          Fmt("loss %.4f, accuracy %d/%d", loss, correct, total)};
}

Outcome WorkedExamples(const fs::path& dir) {
  const auto start = Clock::now();
  std::ostringstream out, err;
  if (CmdGen({"recurPower-like", 500, 1, dir / "corpus500"}, out, err) != kExitOk) {
    return {false, "gen failed: " + err.str()};
  }
  TrainOptions t;
  t.corpus = dir / "corpus500";
  t.out = dir / "model500.bin";
  if (CmdTrain(t, out, err) != kExitOk) return {false, "train failed: " + err.str()};
  const ModelContainer c = LoadModelFile(t.out);
  const SequenceModel model = c.Model();

  RepairConfig interleaved, offset_only;
  offset_only.order = OffsetOnlyOrder();
  bool assign_ok = true;
  for (const RepairConfig& cfg : {interleaved, offset_only}) {
    const RepairResult r = Synfix(testing::kAssignInCondition, model, c.vocab, cfg);
    CountSoundness(r);
    assign_ok = assign_ok && r.status == RepairStatus::kCompletelyFixed &&
              r.strategy == Strategy::kReplace && r.patch == std::vector<std::string>{"=="};
  }
  const RepairResult assign = Synfix(testing::kAssignInCondition, model, c.vocab, interleaved);
  const RepairResult misspelled = Synfix(testing::kMisspelledReturn, model, c.vocab, offset_only);
  const RepairResult misspelled_default = Synfix(testing::kMisspelledReturn, model, c.vocab, interleaved);
  CountSoundness(misspelled);
  CountSoundness(misspelled_default);
  const bool misspelled_ok = misspelled.status == RepairStatus::kCompletelyFixed &&
                       misspelled.strategy == Strategy::kPrevLine && !misspelled.patch.empty() &&
                       misspelled.patch.front() == "return";
  return {assign_ok && misspelled_ok && Since(start) < 600,
          Fmt("assign-in-condition %s; misspelled-return (offset-only) %s, (interleaved) %s", Describe(assign).c_str(),
              Describe(misspelled).c_str(), Describe(misspelled_default).c_str())};
}

// Shared by the repair-rate and determinism criteria.
struct RateSetup {
  fs::path dir;
  TrainOptions train;
  EvalOptions eval;
  bool ready = false;
};

Outcome RepairRate(RateSetup& s) {
  const auto start = Clock::now();
  std::ostringstream out, err;
  if (CmdGen({"recurPower-like", 550, 42, s.dir / "all"}, out, err) != kExitOk ||
      CmdSplit({s.dir / "all", 400, 42, s.dir / "train", s.dir / "held"}, out, err) != kExitOk ||
      CmdMutate({s.dir / "held", s.dir / "buggy.jsonl", 42, std::nullopt, false}, out, err) !=
          kExitOk) {
    return {false, "corpus setup failed: " + err.str()};
  }
  s.train.corpus = s.dir / "train";
  s.train.out = s.dir / "model_a.bin";
  s.train.model = ModelConfig{Arch::kRnn, 1, 128, 0, 42};
  if (CmdTrain(s.train, out, err) != kExitOk) return {false, "train failed: " + err.str()};
  s.eval.model = s.train.out;
  s.eval.buggy = s.dir / "buggy.jsonl";
  s.eval.threads = 1;
  s.eval.all_methods = true;
  s.ready = true;

  const ModelContainer c = LoadModelFile(s.train.out);
  const EvalReport r = Evaluate(ReadPrograms(s.eval.buggy), c.Model(), c.vocab, s.eval.repair,
                                s.eval.threads, true);
  CountSoundness(r);
  const double n = r.incorrect_attempts;
  const double cf = r.totals.completely_fixed / n, fixed = (r.totals.completely_fixed + r.totals.fixed_other) / n;
  return {r.incorrect_attempts == 150 && fixed >= 0.5 && cf >= 0.4 && Since(start) < 1800,
          Fmt("%d attempts: completely fixed %d (%.1f%%), fixed other line %d, no fix %d",
              r.incorrect_attempts, r.totals.completely_fixed, 100 * cf, r.totals.fixed_other, r.totals.no_fix)};
}

Outcome Determinism(RateSetup& s) {
  if (!s.ready) return {false, "repair-rate setup unavailable"};
  std::ostringstream out, err;
  TrainOptions again = s.train;
  again.out = s.dir / "model_b.bin";
  if (CmdTrain(again, out, err) != kExitOk) return {false, "train failed: " + err.str()};
  const bool same_model = Slurp(s.train.out) == Slurp(again.out);

  EvalOptions one = s.eval, four = s.eval;
  one.report = s.dir / "report_1.jsonl";
  four.report = s.dir / "report_4.jsonl";
  four.threads = 4;
  if (CmdEval(one, out, err) != kExitOk || CmdEval(four, out, err) != kExitOk) {
    return {false, "eval failed: " + err.str()};
  }
  const std::string r1 = Slurp(*one.report), r4 = Slurp(*four.report);
  const bool same_report = !r1.empty() && r1 == r4;
  return {same_model && same_report,
          Fmt("containers %s (%zu bytes), reports at 1 and 4 threads %s (%zu bytes)",
              same_model ? "identical" : "DIFFER", Slurp(s.train.out).size(),
              same_report ? "identical" : "DIFFER", r1.size())};
}

Outcome Soundness() {
  return {sound_checked > 0 && unsound_total == 0,
          Fmt("%d repair results checked, %d unsound", sound_checked, unsound_total)};
}

Outcome ParserGolden() {
  int valid_ok = 0, invalid_ok = 0;
  std::string bad;
  for (const auto& f : testing::ValidPrograms()) {
    if (ParseCheck(f.source).ok) {
      ++valid_ok;
    } else {
      bad += std::string(" ") + f.name;
    }
  }
  for (const auto& f : testing::InvalidPrograms()) {
    const ParseOutcome r = ParseCheck(f.source);
    if (!r.ok && r.kind == f.kind && r.line == f.line && (f.col == 0 || r.col == f.col)) {
      ++invalid_ok;
    } else {
      bad += std::string(" ") + f.name;
    }
  }
  const int nv = static_cast<int>(testing::ValidPrograms().size());
  const int ni = static_cast<int>(testing::InvalidPrograms().size());
  return {nv >= 30 && ni >= 30 && valid_ok == nv && invalid_ok == ni,
          Fmt("valid %d/%d, invalid %d/%d%s", valid_ok, nv, invalid_ok, ni,
              bad.empty() ? "" : ("; mismatched:" + bad).c_str())};
}

Outcome VocabMonotonicity() {
  std::vector<std::pair<std::string, std::vector<TokenSeq>>> corpora;
  for (const std::string& family : SyntheticFamilies()) {
    std::vector<TokenSeq> seqs;
    for (const Program& p : GenerateSynthetic(family, 300, 5).programs) {
      seqs.push_back(Tokenize(p.source));
    }
    corpora.emplace_back(family, std::move(seqs));
  }
  // Hand-written programs have many rare identifiers, so thresholds bite.
  std::vector<TokenSeq> fixtures;
  for (const auto& f : testing::ValidPrograms()) fixtures.push_back(Tokenize(f.source));
  corpora.emplace_back("fixtures", std::move(fixtures));

  bool ok = true;
  std::string detail;
  for (const auto& [family, seqs] : corpora) {
    const int v1 = BuildVocab(seqs, {1}).size();
    const int v4 = BuildVocab(seqs, {4}).size();
    const int v8 = BuildVocab(seqs, {8}).size();
    ok = ok && v1 >= v4 && v4 >= v8;
    detail += Fmt("%s%s %d>=%d>=%d", detail.empty() ? "" : "; ", family.c_str(), v1, v4, v8);
  }
  return {ok, detail};
}

std::string Bytes(const ModelContainer& c) {
  std::ostringstream out;
  SaveModel(c, out);
  return out.str();
}

Outcome ContainerRoundtrip() {
  std::mt19937_64 rng(77);
  int exact = 0;
  for (int i = 0; i < 20; ++i) {
    ModelContainer c;
    c.model_config.arch = i % 2 ? Arch::kLstm : Arch::kRnn;
    c.model_config.num_layers = 1 + static_cast<int>(rng() % 2);
    c.model_config.hidden_units = 1 + static_cast<int>(rng() % 6);
    c.model_config.seed = rng();
    std::vector<TokenSeq> seqs{Tokenize(GenerateSynthetic("oddTuples-like", 3, rng()).programs[0].source)};
    c.vocab = BuildVocab(seqs, {1 + static_cast<int>(rng() % 3)});
    c.model_config.vocab_size = c.vocab.size();
    c.params = SequenceModel(c.model_config).params();
    std::uniform_real_distribution<double> u(-3, 3);
    for (Eigen::MatrixXd& tensor : c.params.tensors) {
      for (Eigen::Index k = 0; k < tensor.size(); ++k) tensor.data()[k] = u(rng);
    }
    c.meta.seed = c.model_config.seed;
    c.meta.epochs = static_cast<int>(rng() % 5);
    for (int e = 0; e <= c.meta.epochs; ++e) c.meta.epoch_losses.push_back(u(rng) + 4);
    c.meta.final_loss = c.meta.epoch_losses.back();
    const std::string bytes = Bytes(c);
    std::istringstream in(bytes);
    const ModelContainer back = LoadModel(in);
    exact += back == c && Bytes(back) == bytes;
  }
  return {exact == 20, Fmt("%d/20 byte-exact", exact)};
}

}  // namespace
}  // namespace synfix

int main() {
  using namespace synfix;
  const fs::path dir = fs::temp_directory_path() / "synfix_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  RateSetup rate{dir};

  Run("gradient-oracle", GradientOracle);
  Run("memorization", Memorization);
  Run("worked-examples", [&] { return WorkedExamples(dir); });
  Run("repair-rate", [&] { return RepairRate(rate); });
  Run("determinism", [&] { return Determinism(rate); });
  Run("soundness", Soundness);
  Run("parser-golden", ParserGolden);
  Run("vocab-monotonicity", VocabMonotonicity);
  Run("container-roundtrip", ContainerRoundtrip);

  fs::remove_all(dir);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
