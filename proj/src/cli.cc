// cli.cc
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
//
// Copyright 2026 The ppbackoff Authors.

#include "ppbackoff/cli.h"

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ppbackoff/corpus.h"
#include "ppbackoff/counts.h"
#include "ppbackoff/estimator.h"
#include "ppbackoff/eval.h"

namespace ppbackoff {
namespace {

constexpr char kQueryHeader[] = "ppbackoff-queries v1";

// Missing or unreadable files are data errors, reported with the path.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string output;
  std::string model;
  std::uint64_t seed = 0;
  double fraction1 = 0.05;
  double fraction2 = 0.10;
  double fraction3 = 0.10;
  std::string normalization = "lower";
};

std::ifstream OpenIn(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(path + ": cannot open for reading");
  return in;
}

// Writes to --output if given, else to `out`.
void Emit(const Options &o, std::ostream &out, const std::string &text) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw FileError(o.output + ": cannot open for writing");
  f << text;
  if (!f) throw FileError(o.output + ": write failed");
}

void WriteFile(const std::string &path, const std::string &text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FileError(path + ": cannot open for writing");
  f << text;
  if (!f) throw FileError(path + ": write failed");
}

// Runs `body`, prefixing data errors with the file they came from.
template <typename F>
auto WithPath(const std::string &path, F body) -> decltype(body()) {
  try {
    return body();
  } catch (const FormatError &e) {
    throw FileError(path + ": " + e.what());
  } catch (const TreebankError &e) {
    throw FileError(path + ": " + e.what());
  }
}

std::vector<TupleRecord> ReadTuples(const std::string &path) {
  auto in = OpenIn(path);
  return WithPath(path, [&] { return ReadTupleFile(in); });
}

FrequencyDatabase ReadModel(const std::string &path) {
  auto in = OpenIn(path);
  return WithPath(path, [&] { return LoadModel(in); });
}

// Query lines are tuple lines without the config column. A full tuple file
// is accepted too; its configs are ignored.
std::vector<TupleRecord> ReadQueries(const std::string &path) {
  auto in = OpenIn(path);
  std::string first;
  std::getline(in, first);
  if (first == kTupleFileHeader) {
    in.clear();
    in.seekg(0);
    return WithPath(path, [&] { return ReadTupleFile(in); });
  }
  std::vector<TupleRecord> queries;
  std::size_t lineno = 0;
  auto parse = [&](const std::string &line) {
    auto f = SplitTabs(line);
    if (f.size() != 10)
      throw FileError(path + ": line " + std::to_string(lineno) +
                      ": expected 10 tab-separated fields, got " +
                      std::to_string(f.size()));
    TupleRecord q;
    q.id = f[0];
    if (f[1] != "1" && f[1] != "2" && f[1] != "3")
      throw FileError(path + ": line " + std::to_string(lineno) +
                      ": field 'kind': expected 1..3, got '" + f[1] + "'");
    q.kind = f[1][0] - '0';
    for (int i = 0; i < kNumSlots; ++i) q.heads.words[i] = f[2 + i];
    q.final_noun = f[9];
    try {
      ValidateRecord(q);
    } catch (const std::invalid_argument &e) {
      throw FileError(path + ": line " + std::to_string(lineno) + ": " + e.what());
    }
    queries.push_back(std::move(q));
  };
  ++lineno;
  if (first != kQueryHeader && !first.empty()) parse(first);
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty()) parse(line);
  }
  return queries;
}

SplitSpec MakeSplitSpec(const Options &o) {
  SplitSpec spec;
  spec.test_fraction = {o.fraction1, o.fraction2, o.fraction3};
  spec.seed = o.seed;
  return spec;
}

int Extract(const Options &o, std::ostream &out) {
  const Normalization norm = ParseNormalization(o.normalization);
  auto in = OpenIn(o.input);
  auto records = WithPath(o.input, [&] { return ExtractTuples(in, norm); });
  Emit(o, out, WriteTupleFile(records));
  return kExitOk;
}

int Train(const Options &o, std::ostream &err) {
  const Normalization norm = ParseNormalization(o.normalization);
  auto records = ReadTuples(o.input);
  if (!o.output.empty()) {
    Split split = StratifiedSplit(records, MakeSplitSpec(o));
    for (const auto &w : split.warnings) err << "warning: " << w << '\n';
    WriteFile(o.output, WriteTupleFile(split.test1));
    records = std::move(split.train);
  }
  WriteFile(o.model, SaveModel(BuildDatabase(records, norm)));
  return kExitOk;
}

int Predict(const Options &o, std::ostream &out) {
  const FrequencyDatabase db = ReadModel(o.model);
  std::ostringstream text;
  for (auto q : ReadQueries(o.input)) {
    for (auto &w : q.heads.words) w = NormalizeWord(w, db.normalization());
    const auto d = Estimate(db, q);
    char prob[32];
    std::snprintf(prob, sizeof(prob), "%.3f", d.probability());
    text << d.config << "\tlevel=" << BackoffLevelName(d.level) << '\t' << prob
         << '\n';
  }
  Emit(o, out, text.str());
  return kExitOk;
}

int EvaluateCmd(const Options &o, std::ostream &out) {
  const FrequencyDatabase db = ReadModel(o.model);
  const auto test = ReadTuples(o.input);
  const EvalReport report = EvaluateTestFile(db, test);
  out << report.ToText();
  if (!o.output.empty()) WriteFile(o.output, report.ToTsv());
  return kExitOk;
}

int Baseline(const Options &o, std::ostream &out) {
  const auto records = ReadTuples(o.input);
  Emit(o, out, FormatBaselines(Baselines(records, records)));
  return kExitOk;
}

int DistanceStats(const Options &o, std::ostream &out) {
  const auto records = ReadTuples(o.input);
  Emit(o, out, DistanceAnalysis(records).ToText());
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char *const argv[], std::ostream &out,
           std::ostream &err) {
  CLI::App app{"Prepositional phrase attachment by generalized backed-off "
               "estimation.",
               "ppbackoff"};
  app.require_subcommand(1);
  Options o;

  auto fractions = [&](CLI::App *cmd) {
    cmd->add_option("--seed", o.seed, "Split seed")->capture_default_str();
    CLI::Validator in01(
        [](std::string &s) -> std::string {
          double v = 0;
          try {
            v = std::stod(s);
          } catch (const std::exception &) {
            return "not a number: " + s;
          }
          if (!(v > 0.0 && v < 1.0)) return "must lie strictly between 0 and 1";
          return "";
        },
        "(0,1)");
    cmd->add_option("--test-fraction-pp1", o.fraction1, "Kind-1 test fraction")
        ->check(in01)->capture_default_str();
    cmd->add_option("--test-fraction-pp2", o.fraction2, "Kind-2 test fraction")
        ->check(in01)->capture_default_str();
    cmd->add_option("--test-fraction-pp3", o.fraction3, "Kind-3 test fraction")
        ->check(in01)->capture_default_str();
  };
  auto normalization = [&](CLI::App *cmd) {
    cmd->add_option("--normalization", o.normalization, "Word case policy")
        ->check(CLI::IsMember({"lower", "none"}))
        ->capture_default_str();
  };

  std::function<int()> action;

  auto *extract = app.add_subcommand("extract", "Treebank -> tuple file");
  extract->add_option("--input", o.input, "Treebank, one bracketing per block")->required();
  extract->add_option("--output", o.output, "Tuple file (default stdout)");
  normalization(extract);
  extract->callback([&] { action = [&] { return Extract(o, out); }; });

  auto *train = app.add_subcommand("train", "Tuple file -> model file");
  train->add_option("--input", o.input, "Training tuple file")->required();
  train->add_option("--model", o.model, "Model file to write")->required();
  train->add_option("--output", o.output,
                    "Hold out a stratified test split and write it here");
  fractions(train);
  normalization(train);
  train->callback([&] { action = [&] { return Train(o, err); }; });

  auto *predict = app.add_subcommand("predict", "Decide attachments for queries");
  predict->add_option("--model", o.model, "Model file")->required();
  predict->add_option("--input", o.input, "Query or tuple file")->required();
  predict->add_option("--output", o.output, "Decision lines (default stdout)");
  predict->callback([&] { action = [&] { return Predict(o, out); }; });

  auto *evaluate = app.add_subcommand("evaluate", "Score a model on test tuples");
  evaluate->add_option("--model", o.model, "Model file")->required();
  evaluate->add_option("--input", o.input, "Test tuple file")->required();
  evaluate->add_option("--output", o.output, "Also write level/kind/total/correct rows");
  evaluate->callback([&] { action = [&] { return EvaluateCmd(o, out); }; });

  auto *baseline = app.add_subcommand("baseline", "Chance and most-frequent baselines");
  baseline->add_option("--input", o.input, "Tuple file")->required();
  baseline->add_option("--output", o.output, "Table (default stdout)");
  baseline->callback([&] { action = [&] { return Baseline(o, out); }; });

  auto *distance = app.add_subcommand("distance-stats",
                                      "Attachment by preposition and distance");
  distance->add_option("--input", o.input, "Tuple file")->required();
  distance->add_option("--output", o.output, "Table (default stdout)");
  distance->callback([&] { action = [&] { return DistanceStats(o, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "ppbackoff: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    return action();
  } catch (const FileError &e) {
    err << "ppbackoff: " << e.what() << '\n';
  } catch (const std::exception &e) {
    err << "ppbackoff: error: " << e.what() << '\n';
  }
  return kExitData;
}

}  // namespace ppbackoff
