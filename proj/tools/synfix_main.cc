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

// synfix: train token-sequence models on correct submissions and use them to
// repair syntax errors.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "synfix/cli.h"
#include "synfix/errors.h"

namespace {

struct ModelFlags {
  std::string arch = "rnn";
  int layers = 1;
  int hidden = 128;
  std::uint64_t seed = 0;
};

struct RepairFlags {
  int k = 10;
  int max_line_len = 40;
  std::string order = "interleaved";
};

void AddRepairFlags(CLI::App* cmd, RepairFlags& f) {
  cmd->add_option("--k", f.k, "Predicted sequence length")->capture_default_str();
  cmd->add_option("--max-line-len", f.max_line_len, "Token cap for PrevLine predictions")
      ->capture_default_str();
  cmd->add_option("--strategy-order", f.order,
                  "interleaved | offset-only | offset-first | explicit list, e.g. "
                  "'ins@o,rep@o;ins@o-1,rep@o-1;prev'")
      ->capture_default_str();
}

synfix::RepairConfig ToRepair(const RepairFlags& f) {
  synfix::RepairConfig r;
  r.k = f.k;
  r.max_line_len = f.max_line_len;
  r.order = synfix::ParseStrategyOrder(f.order);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SynFix: repair syntax errors with a token sequence model"};
  app.require_subcommand(1);

  // train
  synfix::TrainOptions train;
  ModelFlags mf;
  std::string corpus_path, model_out;
  auto* cmd_train = app.add_subcommand("train", "Train a model on a corpus of programs");
  cmd_train->add_option("corpus", corpus_path, "Directory of programs or .jsonl file")->required();
  cmd_train->add_option("-o,--out", model_out, "Model file to write")->required();
  cmd_train->add_option("--arch", mf.arch, "rnn | lstm")->capture_default_str();
  cmd_train->add_option("--layers", mf.layers, "Hidden layers")->capture_default_str();
  cmd_train->add_option("--hidden", mf.hidden, "Units per hidden layer")->capture_default_str();
  cmd_train->add_option("--threshold", train.threshold, "Vocabulary threshold t")->capture_default_str();
  cmd_train->add_option("--lr", train.hyper.learning_rate, "Learning rate")->capture_default_str();
  cmd_train->add_option("--seq-len", train.hyper.seq_length, "Training window length")->capture_default_str();
  cmd_train->add_option("--batch", train.hyper.batch_size, "Windows per update")->capture_default_str();
  cmd_train->add_option("--decay", train.hyper.rmsprop_decay, "rmsprop decay")->capture_default_str();
  cmd_train->add_option("--clip", train.hyper.clip_threshold, "Gradient clip threshold")->capture_default_str();
  cmd_train->add_option("--epochs", train.hyper.max_epochs, "Training epochs")->capture_default_str();
  cmd_train->add_option("--seed", mf.seed, "Initialization seed")->capture_default_str();

  // fix
  synfix::FixOptions fix;
  RepairFlags fix_flags;
  std::string fix_model, fix_input, fix_output;
  auto* cmd_fix = app.add_subcommand("fix", "Repair one submission");
  cmd_fix->add_option("model", fix_model, "Model file")->required();
  cmd_fix->add_option("submission", fix_input, "Program to repair")->required();
  cmd_fix->add_option("-o,--output", fix_output, "Where to write the repaired source");
  AddRepairFlags(cmd_fix, fix_flags);

  // eval
  synfix::EvalOptions eval;
  RepairFlags eval_flags;
  std::string eval_model, eval_buggy, eval_report;
  auto* cmd_eval = app.add_subcommand("eval", "Repair a set of buggy programs and report");
  cmd_eval->add_option("model", eval_model, "Model file")->required();
  cmd_eval->add_option("buggy", eval_buggy, "Directory of programs or .jsonl file")->required();
  cmd_eval->add_option("-r,--report", eval_report, "JSON-lines report to write");
  cmd_eval->add_option("--threads", eval.threads, "Worker threads")->capture_default_str();
  cmd_eval->add_flag("--all-methods", eval.all_methods,
                     "Also try each method alone and report overlapping counts");
  AddRepairFlags(cmd_eval, eval_flags);

  // gen
  synfix::GenOptions gen;
  std::string gen_out;
  auto* cmd_gen = app.add_subcommand("gen", "Generate a synthetic corpus");
  cmd_gen->add_option("family", gen.family, "recurPower-like | iterPower-like | oddTuples-like")
      ->required();
  cmd_gen->add_option("n", gen.n, "Number of programs")->required();
  cmd_gen->add_option("-o,--out", gen_out, "Output directory or .jsonl file")->required();
  cmd_gen->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();

  // mutate
  synfix::MutateOptions mutate;
  std::string mutate_in, mutate_out, mutate_kind;
  auto* cmd_mutate = app.add_subcommand("mutate", "Inject one syntax error into each program");
  cmd_mutate->add_option("corpus", mutate_in, "Directory of programs or .jsonl file")->required();
  cmd_mutate->add_option("-o,--out", mutate_out, "Output .jsonl file")->required();
  cmd_mutate->add_option("--seed", mutate.seed, "Mutation seed")->capture_default_str();
  cmd_mutate->add_option("--kind", mutate_kind, "Only this mutation kind (default: cycle all)");
  cmd_mutate->add_flag("--include-first-line", mutate.include_first_line,
                       "Allow edits on the def line");

  // split
  synfix::SplitOptions split;
  std::string split_in, split_train, split_test;
  auto* cmd_split = app.add_subcommand("split", "Shuffle and split a corpus in two");
  cmd_split->add_option("corpus", split_in, "Directory of programs or .jsonl file")->required();
  cmd_split->add_option("--train", split.train_size, "Programs in the training part")->required();
  cmd_split->add_option("--train-out", split_train, "Training output")->required();
  cmd_split->add_option("--test-out", split_test, "Test output")->required();
  cmd_split->add_option("--seed", split.seed, "Shuffle seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return synfix::kExitBadInput;
  }

  try {
    if (*cmd_train) {
      train.corpus = corpus_path;
      train.out = model_out;
      train.model.arch = synfix::ParseArch(mf.arch);
      train.model.num_layers = mf.layers;
      train.model.hidden_units = mf.hidden;
      train.model.seed = mf.seed;
      return synfix::CmdTrain(train, std::cout, std::cerr);
    }
    if (*cmd_fix) {
      fix.model = fix_model;
      fix.submission = fix_input;
      if (!fix_output.empty()) fix.output = fix_output;
      fix.repair = ToRepair(fix_flags);
      return synfix::CmdFix(fix, std::cout, std::cerr);
    }
    if (*cmd_eval) {
      eval.model = eval_model;
      eval.buggy = eval_buggy;
      if (!eval_report.empty()) eval.report = eval_report;
      eval.repair = ToRepair(eval_flags);
      return synfix::CmdEval(eval, std::cout, std::cerr);
    }
    if (*cmd_gen) {
      gen.out = gen_out;
      return synfix::CmdGen(gen, std::cout, std::cerr);
    }
    if (*cmd_mutate) {
      mutate.corpus = mutate_in;
      mutate.out = mutate_out;
      if (!mutate_kind.empty()) mutate.kind = synfix::ParseMutationKind(mutate_kind);
      return synfix::CmdMutate(mutate, std::cout, std::cerr);
    }
    if (*cmd_split) {
      split.corpus = split_in;
      split.train_out = split_train;
      split.test_out = split_test;
      return synfix::CmdSplit(split, std::cout, std::cerr);
    }
  } catch (const synfix::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return synfix::kExitBadInput;
  }
  return synfix::kExitBadInput;
}
