// Copyright 2026 The vidcap Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VIDCAP_TOOLS_COMMANDS_H_
#define VIDCAP_TOOLS_COMMANDS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vidcap/evaluator.h"
#include "vidcap/seq2seq.h"
#include "vidcap/trainer.h"

namespace vidcap::cli {

namespace fs = std::filesystem;

// Files written by `prepare` inside its output directory.
inline constexpr const char* kTrainKeysFile = "train.keys";
inline constexpr const char* kValKeysFile = "val.keys";
inline constexpr const char* kTestKeysFile = "test.keys";
inline constexpr const char* kTokenizerFile = "tokenizer.txt";
inline constexpr const char* kCorpusFile = "corpus.txt";
inline constexpr const char* kPrepareSummaryFile = "prepare.txt";

struct PrepareOptions {
  fs::path descriptions;
  fs::path manifest;
  fs::path out_dir;
  uint64_t seed = 42;
  size_t vocab = kDefaultVocabCap;
};

struct PrepareSummary {
  size_t parsed_lines = 0;
  size_t warnings = 0;
  size_t kept = 0;
  size_t dropped = 0;
  size_t videos = 0;
  size_t train = 0;
  size_t val = 0;
  size_t test = 0;
  size_t vocab_words = 0;
};

PrepareSummary RunPrepare(const PrepareOptions& opts);

// Everything the later stages read back from a prepare directory.
struct PreparedData {
  DescriptionCorpus corpus;
  SplitAssignment splits;
  Tokenizer tokenizer;
  FeatureManifest manifest;

  const std::vector<std::string>& Keys(const std::string& split) const;
};

PreparedData LoadPrepared(const fs::path& dir);

struct TrainOptions {
  fs::path data_dir;
  ModelConfig model;
  bool vocab_given = false;  // otherwise the tokenizer cap is used
  TrainConfig train;         // train.out_dir receives checkpoints and metrics
  bool cache_features = true;
};

TrainResult RunTrain(TrainOptions opts, std::ostream& log);

struct CaptionOptions {
  fs::path checkpoint;
  fs::path data_dir;
  std::string video_id;
  fs::path feature_file;  // used when video_id is empty
};

TokenList RunCaption(const CaptionOptions& opts);

struct EvalOptions {
  fs::path checkpoint;
  fs::path data_dir;
  fs::path out_dir;
  std::vector<std::string> splits = {"train", "val", "test"};
  size_t threads = 1;
};

// Writes report.csv, scatter.csv, summary.csv and histogram.csv.
std::vector<SplitSummary> RunEval(const EvalOptions& opts);

struct FixtureOptions {
  fs::path out_dir;
  size_t videos = 6;
  size_t captions_per_video = 3;
  // Distinct caption texts per video; captions cycle through them.
  size_t variants = 1;
  size_t frames = 8;
  size_t feature_dim = 16;
  uint64_t seed = 1;
};

// Synthetic corpus: feat/<id>.vfm, manifest.tsv and descriptions.txt.
void RunMakeFixture(const FixtureOptions& opts);

}  // namespace vidcap::cli

#endif  // VIDCAP_TOOLS_COMMANDS_H_
