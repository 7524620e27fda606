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

#include "synfix/cli.h"

#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "parser_fixtures.h"
#include "synfix/errors.h"

namespace synfix {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

// One trained model shared by the suite: small so the suite stays fast.
class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(fs::temp_directory_path() / "synfix_cli_test");
    fs::remove_all(*dir_);
    fs::create_directories(*dir_);
    std::ostringstream out, err;
    ASSERT_EQ(CmdGen({"recurPower-like", 200, 3, *dir_ / "corpus"}, out, err), kExitOk);
    ASSERT_EQ(CmdTrain(SmallTrain(*dir_ / "model.bin"), out, err), kExitOk) << err.str();
    train_stdout_ = new std::string(out.str());
    ASSERT_EQ(CmdGen({"recurPower-like", 40, 99, *dir_ / "held"}, out, err), kExitOk);
    MutateOptions m{*dir_ / "held", *dir_ / "buggy.jsonl", 5, std::nullopt, false};
    ASSERT_EQ(CmdMutate(m, out, err), kExitOk) << err.str();
  }
  static void TearDownTestSuite() {
    fs::remove_all(*dir_);
    delete dir_;
    delete train_stdout_;
  }

  static TrainOptions SmallTrain(const fs::path& out) {
    TrainOptions t;
    t.corpus = *dir_ / "corpus";
    t.out = out;
    t.model = ModelConfig{Arch::kRnn, 1, 48, 0, 11};
    t.hyper.max_epochs = 12;
    return t;
  }

  static fs::path* dir_;
  static std::string* train_stdout_;
};

fs::path* Cli::dir_ = nullptr;
std::string* Cli::train_stdout_ = nullptr;

TEST_F(Cli, TrainPrintsEpochLossLines) {
  std::istringstream lines(*train_stdout_);
  std::string line;
  int expected = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("epoch ", 0) != 0) continue;
    std::istringstream fields(line);
    std::string epoch, loss_word;
    int n;
    double loss;
    fields >> epoch >> n >> loss_word >> loss;
    EXPECT_EQ(n, expected++);
    EXPECT_EQ(loss_word, "loss");
    EXPECT_GT(loss, 0.0);
  }
  EXPECT_EQ(expected, 13);
}

TEST_F(Cli, TrainIsByteDeterministic) {
  std::ostringstream out, err;
  ASSERT_EQ(CmdTrain(SmallTrain(*dir_ / "again.bin"), out, err), kExitOk);
  EXPECT_EQ(Slurp(*dir_ / "again.bin"), Slurp(*dir_ / "model.bin"));
  const ModelContainer c = LoadModelFile(*dir_ / "model.bin");
  EXPECT_EQ(c.meta.epoch_losses.size(), 13u);
  EXPECT_EQ(c.meta.final_loss, c.meta.epoch_losses.back());
  EXPECT_EQ(c.vocab.size(), c.model_config.vocab_size);
}

TEST_F(Cli, TrainExitCodes) {
  std::ostringstream out, err;
  TrainOptions missing = SmallTrain(*dir_ / "x.bin");
  missing.corpus = *dir_ / "does_not_exist";
  EXPECT_EQ(CmdTrain(missing, out, err), kExitIo);

  fs::create_directories(*dir_ / "bad");
  WriteText(*dir_ / "bad" / "a.py", testing::kAssignInCondition);
  TrainOptions invalid = SmallTrain(*dir_ / "x.bin");
  invalid.corpus = *dir_ / "bad";
  EXPECT_EQ(CmdTrain(invalid, out, err), kExitBadInput);

  fs::create_directories(*dir_ / "empty");
  TrainOptions empty = SmallTrain(*dir_ / "x.bin");
  empty.corpus = *dir_ / "empty";
  EXPECT_EQ(CmdTrain(empty, out, err), kExitBadInput);
}

TEST_F(Cli, FixExitCodes) {
  std::ostringstream out, err;
  FixOptions f;
  f.model = *dir_ / "model.bin";
  f.submission = *dir_ / "assign.py";
  f.output = *dir_ / "assign.fixed.py";
  WriteText(f.submission, testing::kAssignInCondition);
  EXPECT_EQ(CmdFix(f, out, err), kExitOk) << err.str();
  const nlohmann::json record = nlohmann::json::parse(out.str());
  EXPECT_EQ(record["status"], "CompletelyFixed");
  EXPECT_TRUE(ParseCheck(Slurp(*f.output)).ok);

  std::ostringstream valid_out;
  f.submission = *dir_ / "corpus" / "recurPower-like_0000.py";
  EXPECT_EQ(CmdFix(f, valid_out, err), kExitOk);
  EXPECT_NE(valid_out.str().find("already-valid"), std::string::npos);

  FixOptions other = f;
  other.submission = *dir_ / "indent.py";
  other.repair.k = 1;
  WriteText(other.submission, testing::kTwoIndentErrors);
  EXPECT_EQ(CmdFix(other, out, err), kExitFixedOtherLine);

  FixOptions nofix = f;
  nofix.submission = *dir_ / "top.py";
  WriteText(nofix.submission, "    x = 1\n");
  nofix.repair.order = ParseStrategyOrder("prev");
  EXPECT_EQ(CmdFix(nofix, out, err), kExitNoFix);

  FixOptions io = f;
  io.model = *dir_ / "missing.bin";
  EXPECT_EQ(CmdFix(io, out, err), kExitIo);
  io = f;
  io.submission = *dir_ / "missing.py";
  EXPECT_EQ(CmdFix(io, out, err), kExitIo);
}

TEST_F(Cli, EvalPartitionAndParallelPurity) {
  std::ostringstream out, err;
  EvalOptions e;
  e.model = *dir_ / "model.bin";
  e.buggy = *dir_ / "buggy.jsonl";
  e.report = *dir_ / "r1.jsonl";
  e.threads = 1;
  ASSERT_EQ(CmdEval(e, out, err), kExitOk) << err.str();
  e.report = *dir_ / "r4.jsonl";
  e.threads = 4;
  ASSERT_EQ(CmdEval(e, out, err), kExitOk);
  const std::string r1 = Slurp(*dir_ / "r1.jsonl");
  EXPECT_EQ(r1, Slurp(*dir_ / "r4.jsonl"));

  std::istringstream lines(r1);
  std::string line, last_id;
  int results = 0;
  nlohmann::json summary;
  while (std::getline(lines, line)) {
    const nlohmann::json j = nlohmann::json::parse(line);
    if (j["type"] == "summary") {
      summary = j;
      continue;
    }
    ++results;
    EXPECT_LT(last_id, j["id"].get<std::string>());
    last_id = j["id"];
    EXPECT_TRUE(j["sound"].get<bool>());
  }
  EXPECT_EQ(results, 40);
  EXPECT_EQ(summary["incorrect_attempts"], 40);
  EXPECT_EQ(summary["completely_fixed"].get<int>() + summary["fixed_other"].get<int>() +
                summary["no_fix"].get<int>(),
            40);
  EXPECT_EQ(summary["unsound"], 0);
  int by_kind = 0;
  for (auto& [kind, c] : summary["by_mutation_kind"].items()) {
    by_kind += c["completely_fixed"].get<int>() + c["fixed_other"].get<int>() +
               c["no_fix"].get<int>();
  }
  EXPECT_EQ(by_kind, 40);
}

TEST_F(Cli, EvalAllMethodsAndSingleKind) {
  std::ostringstream out, err;
  MutateOptions m{*dir_ / "held", *dir_ / "eqeq.jsonl", 8, MutationKind::kEqEqToEq, false};
  ASSERT_EQ(CmdMutate(m, out, err), kExitOk);
  const ModelContainer c = LoadModelFile(*dir_ / "model.bin");
  const EvalReport r = Evaluate(ReadPrograms(*dir_ / "eqeq.jsonl"), c.Model(), c.vocab,
                                RepairConfig{}, 2, true);
  const int eqeq = r.by_mutation_kind.count("EqEqToEq") ? r.by_mutation_kind.at("EqEqToEq").total() : 0;
  // Programs without '==' fall back to another kind; the rest are EqEqToEq.
  EXPECT_GT(eqeq, 0);
  int other = 0;
  for (const auto& [kind, counts] : r.by_mutation_kind) {
    if (kind != "EqEqToEq") other += counts.total();
  }
  EXPECT_EQ(eqeq + other, r.incorrect_attempts);
  ASSERT_EQ(r.all_methods.size(), 5u);
  for (const auto& [cell, counts] : r.all_methods) EXPECT_EQ(counts.total(), r.incorrect_attempts);
  EXPECT_EQ(r.unsound, 0);
  EXPECT_NE(ReportTable(r, 0.0).find("each tried alone"), std::string::npos);
}

TEST_F(Cli, EvalEmptySetAndAlreadyValid) {
  std::ostringstream out, err;
  fs::create_directories(*dir_ / "nothing");
  EvalOptions e;
  e.model = *dir_ / "model.bin";
  e.buggy = *dir_ / "nothing";
  e.report = *dir_ / "empty.jsonl";
  EXPECT_EQ(CmdEval(e, out, err), kExitOk);
  const nlohmann::json s = nlohmann::json::parse(Slurp(*e.report));
  EXPECT_EQ(s["incorrect_attempts"], 0);

  const ModelContainer c = LoadModelFile(*dir_ / "model.bin");
  const EvalReport r = Evaluate({{"a", "x = 1\n", {}}, {"b", testing::kAssignInCondition, {}}},
                                c.Model(), c.vocab, RepairConfig{});
  EXPECT_EQ(r.already_valid, 1);
  EXPECT_EQ(r.incorrect_attempts, 1);
  EXPECT_THROW(Evaluate({{"a", "x\n", {}}, {"a", "y\n", {}}}, c.Model(), c.vocab, RepairConfig{}),
               InvalidArgument);
  e.model = *dir_ / "missing.bin";
  EXPECT_EQ(CmdEval(e, out, err), kExitIo);
}

TEST_F(Cli, GenDeterministicAndExitCodes) {
  std::ostringstream out, err;
  ASSERT_EQ(CmdGen({"iterPower-like", 30, 7, *dir_ / "g1"}, out, err), kExitOk);
  ASSERT_EQ(CmdGen({"iterPower-like", 30, 7, *dir_ / "g2"}, out, err), kExitOk);
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(*dir_ / "g1")) {
    names.push_back(entry.path().filename().string());
    EXPECT_EQ(Slurp(entry.path()), Slurp(*dir_ / "g2" / entry.path().filename()));
    EXPECT_TRUE(ParseCheck(Slurp(entry.path())).ok);
  }
  EXPECT_EQ(names.size(), 30u);
  EXPECT_EQ(CmdGen({"iterPower-like", 0, 7, *dir_ / "g3"}, out, err), kExitBadInput);
  EXPECT_EQ(CmdGen({"nope", 3, 7, *dir_ / "g3"}, out, err), kExitBadInput);
  ASSERT_EQ(CmdGen({"oddTuples-like", 5, 7, *dir_ / "g.jsonl"}, out, err), kExitOk);
  EXPECT_EQ(ReadPrograms(*dir_ / "g.jsonl").size(), 5u);
}

TEST_F(Cli, SplitWritesDisjointParts) {
  std::ostringstream out, err;
  SplitOptions s{*dir_ / "corpus", 150, 4, *dir_ / "s_train", *dir_ / "s_test.jsonl"};
  ASSERT_EQ(CmdSplit(s, out, err), kExitOk);
  EXPECT_EQ(ReadPrograms(*dir_ / "s_train").size(), 150u);
  EXPECT_EQ(ReadPrograms(*dir_ / "s_test.jsonl").size(), 50u);
}

}  // namespace
}  // namespace synfix
