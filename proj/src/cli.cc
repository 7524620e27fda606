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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "synfix/errors.h"

namespace synfix {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string CellName(Strategy s, Endpoint e) {
  return std::string(StrategyName(s)) + "@" + std::string(EndpointName(e));
}

json OutcomeJson(const ParseOutcome& o) {
  if (o.ok) return {{"ok", true}};
  return {{"ok", false},
          {"kind", std::string(ErrorKindName(o.kind))},
          {"line", o.line},
          {"col", o.col}};
}

json ResultJson(const RepairResult& r) {
  json j;
  j["status"] = std::string(RepairStatusName(r.status));
  j["strategy"] = r.strategy ? json(std::string(StrategyName(*r.strategy))) : json(nullptr);
  j["endpoint"] = r.endpoint ? json(std::string(EndpointName(*r.endpoint))) : json(nullptr);
  j["patch"] = r.patch;
  j["original_error"] = OutcomeJson(r.original_error);
  j["residual_error"] = r.residual_error ? OutcomeJson(*r.residual_error) : json(nullptr);
  j["repaired_source"] = r.repaired_source ? json(*r.repaired_source) : json(nullptr);
  return j;
}

json CountsJson(const StatusCounts& c) {
  return {{"completely_fixed", c.completely_fixed},
          {"fixed_other", c.fixed_other},
          {"no_fix", c.no_fix}};
}

json CountsMapJson(const std::map<std::string, StatusCounts>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k] = CountsJson(v);
  return j;
}

json ConfigJson(const ModelContainer& c, const RepairConfig& r) {
  return {{"model_config",
           {{"arch", std::string(ArchName(c.model_config.arch))},
            {"num_layers", c.model_config.num_layers},
            {"hidden_units", c.model_config.hidden_units},
            {"vocab_size", c.model_config.vocab_size},
            {"seed", c.model_config.seed}}},
          {"train_hyper",
           {{"learning_rate", c.train_hyper.learning_rate},
            {"seq_length", c.train_hyper.seq_length},
            {"batch_size", c.train_hyper.batch_size},
            {"rmsprop_decay", c.train_hyper.rmsprop_decay},
            {"clip_threshold", c.train_hyper.clip_threshold},
            {"max_epochs", c.train_hyper.max_epochs}}},
          {"vocab_threshold", c.vocab.threshold()},
          {"repair",
           {{"k", r.k},
            {"max_line_len", r.max_line_len},
            {"strategy_order", FormatStrategyOrder(r.order)}}}};
}

std::string Percent(int n, int d) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", d == 0 ? 0.0 : 100.0 * n / d);
  return buf;
}

std::string Pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw IoFailure("cannot write '" + path.string() + "'");
}

bool IsJsonLinesPath(const fs::path& p) { return p.extension() == ".jsonl"; }

void WritePrograms(const std::vector<Program>& programs, const fs::path& out) {
  if (IsJsonLinesPath(out)) {
    WriteJsonLines(programs, out);
  } else {
    WriteCorpusDir(programs, out);
  }
}

// Maps library exceptions onto exit codes.
template <typename F>
int Guard(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const EmptyCorpus& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const EmptyInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const CorpusTooSmall& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const UnknownFamily& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const VersionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ShapeMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const UnsupportedCharacter& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace

void StatusCounts::Add(RepairStatus s) {
  switch (s) {
    case RepairStatus::kCompletelyFixed: ++completely_fixed; break;
    case RepairStatus::kFixedOtherLine: ++fixed_other; break;
    case RepairStatus::kNoFix: ++no_fix; break;
  }
}

bool IsSound(const RepairResult& r) {
  switch (r.status) {
    case RepairStatus::kCompletelyFixed:
      return r.repaired_source && ParseCheck(*r.repaired_source).ok;
    case RepairStatus::kFixedOtherLine:
      return r.repaired_source && r.residual_error && !r.residual_error->ok &&
             ParseCheck(*r.repaired_source) == *r.residual_error &&
             r.residual_error->line > r.original_error.line;
    case RepairStatus::kNoFix:
      return !r.strategy && !r.repaired_source;
  }
  return false;
}

EvalReport Evaluate(const std::vector<Program>& programs, const SequenceModel& model,
                    const Vocabulary& vocab, const RepairConfig& config, int threads,
                    bool all_methods) {
  config.Validate();
  EvalReport report;
  report.records.resize(programs.size());
  std::vector<std::size_t> order(programs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return programs[a].id < programs[b].id;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (programs[order[i]].id == programs[order[i - 1]].id) {
      throw InvalidArgument("duplicate program id '" + programs[order[i]].id + "'");
    }
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    while (!failed) {
      const std::size_t slot = next.fetch_add(1);
      if (slot >= order.size()) return;
      try {
        EvalRecord& rec = report.records[slot];
        rec.program = programs[order[slot]];
        if (ParseCheck(rec.program.source).ok) {
          rec.already_valid = true;
          continue;
        }
        rec.result = Synfix(rec.program.source, model, vocab, config);
        rec.sound = IsSound(rec.result);
        if (all_methods) {
          rec.cells = SynfixAllMethods(rec.program.source, model, vocab, config);
          for (const RepairResult& c : *rec.cells) rec.sound = rec.sound && IsSound(c);
        }
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(order.size())));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (const EvalRecord& rec : report.records) {
    if (rec.already_valid) {
      ++report.already_valid;
      continue;
    }
    ++report.incorrect_attempts;
    const RepairResult& r = rec.result;
    report.totals.Add(r.status);
    if (r.strategy) report.by_method[CellName(*r.strategy, *r.endpoint)].Add(r.status);
    if (rec.program.mutation) {
      report.by_mutation_kind[std::string(MutationKindName(*rec.program.mutation))].Add(r.status);
    }
    if (rec.cells) {
      for (std::size_t c = 0; c < kAllSteps.size(); ++c) {
        report.all_methods[CellName(kAllSteps[c].strategy, kAllSteps[c].endpoint)].Add(
            (*rec.cells)[c].status);
      }
    }
    if (!rec.sound) ++report.unsound;
  }
  if (report.totals.total() != report.incorrect_attempts) {
    throw std::logic_error("outcome partition does not sum to the attempt count");
  }
  int method_sum = 0;
  for (const auto& [cell, counts] : report.by_method) method_sum += counts.total();
  if (method_sum != report.totals.completely_fixed + report.totals.fixed_other) {
    throw std::logic_error("method cells do not sum to the fixed count");
  }
  return report;
}

std::string ReportJsonLines(const EvalReport& report, const ModelContainer& model,
                            const RepairConfig& config) {
  std::string out;
  for (const EvalRecord& rec : report.records) {
    json j = {{"type", "result"}, {"id", rec.program.id}};
    j["mutation"] = rec.program.mutation
                        ? json(std::string(MutationKindName(*rec.program.mutation)))
                        : json(nullptr);
    if (rec.already_valid) {
      j["status"] = "AlreadyValid";
    } else {
      j.update(ResultJson(rec.result));
      j["sound"] = rec.sound;
      if (rec.cells) {
        json cells = json::object();
        for (std::size_t c = 0; c < kAllSteps.size(); ++c) {
          cells[CellName(kAllSteps[c].strategy, kAllSteps[c].endpoint)] =
              std::string(RepairStatusName((*rec.cells)[c].status));
        }
        j["all_methods"] = cells;
      }
    }
    out += j.dump() + "\n";
  }
  json s = {{"type", "summary"},
            {"incorrect_attempts", report.incorrect_attempts},
            {"already_valid", report.already_valid},
            {"completely_fixed", report.totals.completely_fixed},
            {"fixed_other", report.totals.fixed_other},
            {"no_fix", report.totals.no_fix},
            {"unsound", report.unsound},
            {"by_method", CountsMapJson(report.by_method)},
            {"by_mutation_kind", CountsMapJson(report.by_mutation_kind)},
            {"config", ConfigJson(model, config)}};
  if (!report.all_methods.empty()) s["all_methods"] = CountsMapJson(report.all_methods);
  out += s.dump() + "\n";
  return out;
}

std::string ReportTable(const EvalReport& report, double wall_seconds) {
  std::ostringstream t;
  const int n = report.incorrect_attempts;
  const StatusCounts& c = report.totals;
  t << "Incorrect attempts   " << n << "  (already valid, excluded: "
    << report.already_valid << ")\n";
  t << "Completely fixed     " << c.completely_fixed << "  " << Percent(c.completely_fixed, n) << "\n";
  t << "Fixed (other line)   " << c.fixed_other << "  " << Percent(c.fixed_other, n) << "\n";
  t << "No fix               " << c.no_fix << "  " << Percent(c.no_fix, n) << "\n";

  auto method_table = [&](const std::map<std::string, StatusCounts>& m, const char* title) {
    t << "\n" << title << "\n";
    t << Pad("", 10) << Pad("Offset", 14) << Pad("Offset-1", 14) << "PrevLine\n";
    auto cell = [&](Strategy s, Endpoint e) {
      const auto it = m.find(CellName(s, e));
      const StatusCounts v = it == m.end() ? StatusCounts{} : it->second;
      return Pad(std::to_string(v.completely_fixed) + "/" + std::to_string(v.fixed_other), 14);
    };
    t << Pad("Insert", 10) << cell(Strategy::kInsert, Endpoint::kOffset)
      << cell(Strategy::kInsert, Endpoint::kOffsetMinus1) << "-\n";
    t << Pad("Replace", 10) << cell(Strategy::kReplace, Endpoint::kOffset)
      << cell(Strategy::kReplace, Endpoint::kOffsetMinus1) << "-\n";
    t << Pad("PrevLine", 10) << Pad("-", 14) << Pad("-", 14)
      << cell(Strategy::kPrevLine, Endpoint::kPrevLine) << "\n";
  };
  method_table(report.by_method, "Method (completely fixed / fixed other line), first success");
  if (!report.all_methods.empty()) {
    method_table(report.all_methods, "Method (completely fixed / fixed other line), each tried alone");
  }
  if (!report.by_mutation_kind.empty()) {
    t << "\n" << Pad("Mutation", 24) << Pad("Fixed", 8) << Pad("Other", 8) << "NoFix\n";
    for (const auto& [kind, v] : report.by_mutation_kind) {
      t << Pad(kind, 24) << Pad(std::to_string(v.completely_fixed), 8)
        << Pad(std::to_string(v.fixed_other), 8) << v.no_fix << "\n";
    }
  }
  if (report.unsound > 0) t << "\nUNSOUND RESULTS: " << report.unsound << "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "\nWall clock %.2f s\n", wall_seconds);
  t << buf;
  return t.str();
}

Vocabulary CorpusVocab(const std::vector<Program>& programs, int threshold) {
  std::vector<TokenSeq> seqs;
  seqs.reserve(programs.size());
  for (const Program& p : programs) seqs.push_back(Tokenize(p.source, p.id));
  return BuildVocab(seqs, VocabConfig{threshold});
}

std::vector<TokenId> EncodeCorpus(const std::vector<Program>& programs,
                                  const Vocabulary& vocab) {
  std::vector<TokenId> stream;
  for (const Program& p : programs) {
    const std::vector<TokenId> ids = EncodeSeq(Tokenize(p.source, p.id), vocab);
    stream.insert(stream.end(), ids.begin(), ids.end());
  }
  return stream;
}

int CmdTrain(const TrainOptions& o, std::ostream& out, std::ostream& err) {
  return Guard(err, [&] {
    const LoadedCorpus corpus = LoadCorpus(o.corpus);
    if (!corpus.rejected.empty()) {
      err << "skipped " << corpus.rejected.size() << " program(s) that do not parse\n";
    }
    const Vocabulary vocab = CorpusVocab(corpus.training.programs, o.threshold);
    const std::vector<TokenId> stream = EncodeCorpus(corpus.training.programs, vocab);
    ModelConfig config = o.model;
    config.vocab_size = vocab.size();
    const TrainResult r = Train(stream, config, o.hyper, [&](int epoch, double loss) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "epoch %d loss %.6f\n", epoch, loss);
      out << buf << std::flush;
    });
    ModelContainer c;
    c.model_config = config;
    c.train_hyper = o.hyper;
    c.vocab = vocab;
    c.params = r.model.params();
    c.meta.seed = config.seed;
    c.meta.epochs = static_cast<int>(r.epoch_loss.size());
    c.meta.final_loss = r.epoch_loss.empty() ? r.initial_loss : r.epoch_loss.back();
    c.meta.epoch_losses.push_back(r.initial_loss);
    c.meta.epoch_losses.insert(c.meta.epoch_losses.end(), r.epoch_loss.begin(), r.epoch_loss.end());
    SaveModelFile(c, o.out);
    err << "trained on " << corpus.training.programs.size() << " programs, "
        << stream.size() << " tokens, vocabulary " << vocab.size() << "; wrote "
        << o.out.string() << "\n";
    return kExitOk;
  });
}

int CmdFix(const FixOptions& o, std::ostream& out, std::ostream& err) {
  return Guard(err, [&] {
    const ModelContainer c = LoadModelFile(o.model);
    const std::string source = ReadText(o.submission);
    if (ParseCheck(source).ok) {
      out << json({{"status", "already-valid"}}).dump() << "\n";
      if (o.output) WriteText(*o.output, source);
      return kExitOk;
    }
    const RepairResult r = Synfix(source, c.Model(), c.vocab, o.repair);
    out << ResultJson(r).dump() << "\n";
    if (o.output && r.repaired_source) WriteText(*o.output, *r.repaired_source);
    switch (r.status) {
      case RepairStatus::kCompletelyFixed: return kExitOk;
      case RepairStatus::kFixedOtherLine: return kExitFixedOtherLine;
      case RepairStatus::kNoFix: return kExitNoFix;
    }
    return kExitNoFix;
  });
}

int CmdEval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
  return Guard(err, [&] {
    const ModelContainer c = LoadModelFile(o.model);
    std::vector<Program> programs;
    try {
      programs = ReadPrograms(o.buggy);
    } catch (const EmptyInput&) {
      // An empty buggy set is a valid, all-zero evaluation.
    }
    const auto start = std::chrono::steady_clock::now();
    const EvalReport report =
        Evaluate(programs, c.Model(), c.vocab, o.repair, o.threads, o.all_methods);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.report) WriteText(*o.report, ReportJsonLines(report, c, o.repair));
    out << ReportTable(report, wall);
    return kExitOk;
  });
}

int CmdGen(const GenOptions& o, std::ostream& out, std::ostream& err) {
  return Guard(err, [&] {
    const Corpus corpus = GenerateSynthetic(o.family, o.n, o.seed);
    WritePrograms(corpus.programs, o.out);
    out << "wrote " << corpus.programs.size() << " programs to " << o.out.string() << "\n";
    return kExitOk;
  });
}

int CmdMutate(const MutateOptions& o, std::ostream& out, std::ostream& err) {
  return Guard(err, [&] {
    const LoadedCorpus corpus = LoadCorpus(o.corpus);
    InjectOptions inject;
    inject.exclude_first_line = !o.include_first_line;
    std::vector<Program> buggy;
    const auto& programs = corpus.training.programs;
    for (std::size_t i = 0; i < programs.size(); ++i) {
      const MutationKind kind =
          o.kind ? *o.kind : MutationKindAt(static_cast<int>(i % kNumMutationKinds));
      const std::uint64_t seed = o.seed ^ (0x9E3779B97F4A7C15ULL * (i + 1));
      try {
        Mutant m = InjectError(programs[i].source, kind, seed, inject);
        buggy.push_back({programs[i].id, std::move(m.source), m.kind});
      } catch (const Unmutatable& e) {
        err << "skipped " << programs[i].id << ": " << e.what() << "\n";
      }
    }
    WriteJsonLines(buggy, o.out);
    out << "wrote " << buggy.size() << " buggy programs to " << o.out.string() << "\n";
    return kExitOk;
  });
}

int CmdSplit(const SplitOptions& o, std::ostream& out, std::ostream& err) {
  return Guard(err, [&] {
    const Split s = SplitPrograms(ReadPrograms(o.corpus), o.train_size, o.seed);
    WritePrograms(s.train, o.train_out);
    WritePrograms(s.test, o.test_out);
    out << "train " << s.train.size() << ", test " << s.test.size() << "\n";
    return kExitOk;
  });
}

}  // namespace synfix
