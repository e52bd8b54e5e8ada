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

// vidcap: prepare / train / caption / eval / make-fixture.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.h"
#include "vidcap/checkpoint.h"
#include "vidcap/error.h"
#include "vidcap/text_util.h"

namespace {

using namespace vidcap;
using namespace vidcap::cli;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

void AddModelFlags(CLI::App& cmd, ModelConfig& model, CLI::Option*& vocab) {
  cmd.add_option("--frames", model.frames, "Encoder time steps")
      ->capture_default_str()->check(CLI::PositiveNumber);
  cmd.add_option("--feature-dim", model.feature_dim, "Features per frame")
      ->capture_default_str()->check(CLI::PositiveNumber);
  cmd.add_option("--latent", model.latent, "LSTM latent size")
      ->capture_default_str()->check(CLI::PositiveNumber);
  cmd.add_option("--max-words", model.max_words, "Decoder time steps")
      ->capture_default_str()->check(CLI::PositiveNumber);
  vocab = cmd.add_option("--vocab", model.vocab,
                         "Vocabulary size (defaults to the tokenizer cap)")
              ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Encoder-decoder LSTM video captioning"};
  app.require_subcommand(1);
  // Options may follow the subcommand; config files use [prepare]/[train]
  // sections.
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI config file with per-command sections");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_version_flag("--version",
                       std::string("vidcap ") + VIDCAP_VERSION +
                           " (checkpoint format " +
                           std::to_string(kCheckpointFormatVersion) + ")");
  size_t threads = 1;
  app.add_option("--threads", threads, "Worker threads")
      ->capture_default_str()->check(CLI::PositiveNumber);

  // prepare
  PrepareOptions prep;
  auto* prepare = app.add_subcommand(
      "prepare", "Parse descriptions, split keys and fit the tokenizer");
  prepare->add_option("--descriptions", prep.descriptions, "Description file")
      ->required();
  prepare->add_option("--manifest", prep.manifest, "Feature manifest")
      ->required();
  prepare->add_option("--out", prep.out_dir, "Output directory")->required();
  prepare->add_option("--seed", prep.seed, "Split shuffle seed")
      ->capture_default_str();
  prepare->add_option("--vocab", prep.vocab, "Vocabulary cap")
      ->capture_default_str()->check(CLI::PositiveNumber);

  // train
  TrainOptions tr;
  CLI::Option* train_vocab = nullptr;
  bool no_mask = false;
  bool prefix = false;
  bool no_cache = false;
  auto* train = app.add_subcommand("train", "Train the captioning model");
  train->add_option("--data", tr.data_dir, "prepare output directory")
      ->required();
  train->add_option("--out", tr.train.out_dir, "Checkpoint/metrics directory")
      ->required();
  AddModelFlags(*train, tr.model, train_vocab);
  train->add_option("--batch-size", tr.train.batch_size)
      ->capture_default_str()->check(CLI::PositiveNumber);
  train->add_option("--epochs", tr.train.epochs)
      ->capture_default_str()->check(CLI::PositiveNumber);
  train->add_option("--lr", tr.train.lr, "Adam learning rate")
      ->capture_default_str()->check(CLI::NonNegativeNumber);
  train->add_option("--seed", tr.train.seed, "Init and shuffle seed")
      ->capture_default_str();
  train->add_option("--checkpoint-every", tr.train.checkpoint_every,
                    "Checkpoint cadence in epochs (0: initial and final only)")
      ->capture_default_str();
  train->add_flag("--no-mask", no_mask, "Count padding rows in the loss");
  train->add_flag("--prefix-expansion", prefix,
                  "One sample per caption prefix instead of shifted sequences");
  train->add_flag("--no-cache", no_cache, "Re-read features every epoch");
  train->add_flag("--save-optimizer", tr.train.save_optimizer,
                  "Store Adam moments in checkpoints");

  // caption
  CaptionOptions cap;
  auto* caption = app.add_subcommand("caption", "Caption one video greedily");
  caption->add_option("--checkpoint", cap.checkpoint)->required();
  caption->add_option("--data", cap.data_dir, "prepare output directory")
      ->required();
  auto* video_opt = caption->add_option("--video", cap.video_id, "Video id");
  auto* feat_opt =
      caption->add_option("--features", cap.feature_file, ".vfm feature file");
  video_opt->excludes(feat_opt);

  // eval
  EvalOptions ev;
  std::string split = "all";
  auto* eval = app.add_subcommand("eval", "BLEU-2 evaluation over a split");
  eval->add_option("--checkpoint", ev.checkpoint)->required();
  eval->add_option("--data", ev.data_dir, "prepare output directory")
      ->required();
  eval->add_option("--out", ev.out_dir, "Report directory")->required();
  eval->add_option("--split", split, "train, val, test or all")
      ->capture_default_str()
      ->check(CLI::IsMember({"train", "val", "test", "all"}));

  // make-fixture
  FixtureOptions fix;
  auto* fixture =
      app.add_subcommand("make-fixture", "Write a synthetic toy corpus");
  fixture->add_option("--out", fix.out_dir)->required();
  fixture->add_option("--videos", fix.videos)->capture_default_str();
  fixture->add_option("--captions-per-video", fix.captions_per_video)
      ->capture_default_str();
  fixture->add_option("--variants", fix.variants,
                      "Distinct captions per video")
      ->capture_default_str();
  fixture->add_option("--frames", fix.frames)->capture_default_str();
  fixture->add_option("--feature-dim", fix.feature_dim)->capture_default_str();
  fixture->add_option("--seed", fix.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*prepare) {
      const PrepareSummary s = RunPrepare(prep);
      std::cout << "captions kept " << s.kept << ", dropped " << s.dropped
                << ", malformed lines " << s.warnings << "\n"
                << "videos " << s.videos << ": train " << s.train << ", val "
                << s.val << ", test " << s.test << "\n"
                << "vocabulary " << s.vocab_words << " words (cap "
                << prep.vocab << ")\n";
    } else if (*train) {
      tr.vocab_given = train_vocab->count() > 0;
      tr.train.mask_padding = !no_mask;
      tr.train.mode =
          prefix ? TeacherForcing::kPrefixExpansion : TeacherForcing::kShift;
      tr.train.threads = threads;
      tr.cache_features = !no_cache;
      RunTrain(tr, std::cout);
    } else if (*caption) {
      if (video_opt->count() == 0 && feat_opt->count() == 0) {
        std::cerr << "caption: one of --video or --features is required\n";
        return kExitUsage;
      }
      std::cout << Join(RunCaption(cap), " ") << '\n';
    } else if (*eval) {
      if (split != "all") ev.splits = {split};
      ev.threads = threads;
      for (const SplitSummary& s : RunEval(ev)) {
        std::cout << s.split << ": " << s.count << " videos, mean BLEU-2 "
                  << FormatSig6(s.mean_bleu2) << '\n';
      }
    } else if (*fixture) {
      RunMakeFixture(fix);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
