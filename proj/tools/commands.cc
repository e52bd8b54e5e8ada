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

#include "commands.h"

#include <exception>
#include <fstream>
#include <map>
#include <ostream>
#include <thread>

#include "vidcap/checkpoint.h"
#include "vidcap/error.h"
#include "vidcap/rng.h"
#include "vidcap/text_util.h"

namespace vidcap::cli {

namespace {

constexpr uint64_t kInitSalt = ~uint64_t{0};

std::map<std::string, std::string> ReadKeyValues(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[std::string(Trim(std::string_view(line).substr(0, eq)))] =
        std::string(Trim(std::string_view(line).substr(eq + 1)));
  }
  return kv;
}

std::ofstream OpenOut(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

PrepareSummary RunPrepare(const PrepareOptions& opts) {
  if (opts.vocab == 0) throw ValidationError("--vocab must be positive");
  const RawDescriptionFile raw = ParseDescriptions(opts.descriptions);
  const FeatureManifest manifest = LoadManifest(opts.manifest);
  DescriptionCorpus corpus = BuildCorpus(raw);
  if (corpus.entries.empty()) {
    throw ValidationError("no captions survived filtering");
  }
  std::vector<std::string> missing;
  for (const auto& [id, captions] : corpus.entries) {
    if (!manifest.entries.count(id)) missing.push_back(id);
  }
  if (!missing.empty()) {
    throw ValidationError(std::to_string(missing.size()) +
                          " video(s) have captions but no features, first '" +
                          missing.front() + "'");
  }

  const SplitAssignment splits = SplitKeys(corpus, opts.seed);
  std::vector<TokenList> train_captions;
  for (const std::string& key : splits.train_keys) {
    for (const TokenList& c : corpus.at(key)) train_captions.push_back(c);
  }
  const Tokenizer tok = Tokenizer::Fit(train_captions, opts.vocab);

  fs::create_directories(opts.out_dir);
  WriteKeys(splits.train_keys, opts.out_dir / kTrainKeysFile);
  WriteKeys(splits.val_keys, opts.out_dir / kValKeysFile);
  WriteKeys(splits.test_keys, opts.out_dir / kTestKeysFile);
  tok.Save(opts.out_dir / kTokenizerFile);
  {
    std::ofstream out = OpenOut(opts.out_dir / kCorpusFile);
    WriteCorpus(corpus, out);
  }

  PrepareSummary s;
  s.parsed_lines = raw.lines.size();
  s.warnings = raw.warnings;
  s.kept = corpus.kept;
  s.dropped = corpus.dropped;
  s.videos = corpus.size();
  s.train = splits.train_keys.size();
  s.val = splits.val_keys.size();
  s.test = splits.test_keys.size();
  s.vocab_words = tok.size();

  std::ofstream out = OpenOut(opts.out_dir / kPrepareSummaryFile);
  out << "manifest = " << fs::absolute(opts.manifest).lexically_normal().string()
      << '\n'
      << "seed = " << opts.seed << '\n'
      << "vocab_cap = " << opts.vocab << '\n'
      << "parsed_lines = " << s.parsed_lines << '\n'
      << "malformed_lines = " << s.warnings << '\n'
      << "captions_kept = " << s.kept << '\n'
      << "captions_dropped = " << s.dropped << '\n'
      << "videos = " << s.videos << '\n'
      << "train = " << s.train << '\n'
      << "val = " << s.val << '\n'
      << "test = " << s.test << '\n'
      << "vocab_words = " << s.vocab_words << '\n';
  return s;
}

const std::vector<std::string>& PreparedData::Keys(
    const std::string& split) const {
  if (split == "train") return splits.train_keys;
  if (split == "val") return splits.val_keys;
  if (split == "test") return splits.test_keys;
  throw ValidationError("unknown split '" + split +
                        "' (expected train, val or test)");
}

PreparedData LoadPrepared(const fs::path& dir) {
  const auto kv = ReadKeyValues(dir / kPrepareSummaryFile);
  auto manifest_it = kv.find("manifest");
  if (manifest_it == kv.end()) {
    throw IoError("'" + (dir / kPrepareSummaryFile).string() +
                  "' has no manifest entry");
  }
  PreparedData data{
      BuildCorpus(ParseDescriptions(dir / kCorpusFile)),
      {ReadKeys(dir / kTrainKeysFile), ReadKeys(dir / kValKeysFile),
       ReadKeys(dir / kTestKeysFile), 0},
      Tokenizer::Load(dir / kTokenizerFile),
      LoadManifest(manifest_it->second)};
  if (auto seed = kv.find("seed"); seed != kv.end()) {
    data.splits.seed = std::stoull(seed->second);
  }
  return data;
}

TrainResult RunTrain(TrainOptions opts, std::ostream& log) {
  const PreparedData data = LoadPrepared(opts.data_dir);
  if (!opts.vocab_given) opts.model.vocab = data.tokenizer.cap();
  opts.model.Validate();
  opts.train.Validate();
  if (opts.model.vocab != data.tokenizer.cap()) {
    throw ValidationError("--vocab " + std::to_string(opts.model.vocab) +
                          " does not match the tokenizer cap " +
                          std::to_string(data.tokenizer.cap()));
  }
  if (!data.tokenizer.Lookup(std::string(kBos)) ||
      !data.tokenizer.Lookup(std::string(kEos))) {
    throw ValidationError("tokenizer lacks 'bos'/'eos'");
  }

  FeatureStore features(
      data.manifest,
      {opts.cache_features, std::make_pair(opts.model.frames, opts.model.feature_dim)});
  for (const std::string& key : data.splits.train_keys) features.Get(key);
  for (const std::string& key : data.splits.val_keys) features.Get(key);

  const BatchGenerator train = MakeBatches(data.splits.train_keys, data.corpus,
                                           features, data.tokenizer, opts.model,
                                           opts.train);
  const std::vector<Sample> val =
      BuildSamples(data.splits.val_keys, data.corpus, data.tokenizer,
                   opts.model.max_words, opts.train.mode);

  const ParamCount count = CountParams(opts.model);
  log << "model: " << count.total << " parameters (encoder " << count.encoder
      << ", decoder " << count.decoder << ", head " << count.head << "); "
      << train.samples().size() << " training samples, " << val.size()
      << " validation samples\n";

  auto params = ModelParams<float>::Init(
      opts.model, DeriveSeed(opts.train.seed, kInitSalt));
  const size_t epochs = opts.train.epochs;
  return Train(std::move(params), opts.train, train, val, features,
               [&](const EpochMetrics& m) {
                 log << "epoch " << m.epoch << "/" << epochs
                     << " train_loss=" << FormatSig6(m.train_loss)
                     << " train_acc=" << FormatSig6(m.train_acc)
                     << " val_loss=" << FormatSig6(m.val_loss)
                     << " val_acc=" << FormatSig6(m.val_acc) << std::endl;
               });
}

TokenList RunCaption(const CaptionOptions& opts) {
  const Checkpoint ckpt = LoadCheckpoint(opts.checkpoint);
  const ModelConfig& cfg = ckpt.params.config;
  const Tokenizer tok = Tokenizer::Load(opts.data_dir / kTokenizerFile);
  if (tok.cap() != cfg.vocab) {
    throw ValidationError("checkpoint vocab " + std::to_string(cfg.vocab) +
                          " does not match tokenizer cap " +
                          std::to_string(tok.cap()));
  }
  FeatureMatrix feat;
  if (!opts.video_id.empty()) {
    const auto kv = ReadKeyValues(opts.data_dir / kPrepareSummaryFile);
    FeatureStore store(LoadManifest(kv.at("manifest")),
                       {false, std::make_pair(cfg.frames, cfg.feature_dim)});
    feat = *store.Get(opts.video_id);
  } else if (!opts.feature_file.empty()) {
    feat = ReadFeatureFile(opts.feature_file);
    if (feat.rows() != cfg.frames || feat.cols() != cfg.feature_dim) {
      throw ValidationError("feature file shape " + std::to_string(feat.rows()) +
                            "x" + std::to_string(feat.cols()) +
                            " does not match checkpoint " +
                            std::to_string(cfg.frames) + "x" +
                            std::to_string(cfg.feature_dim));
    }
  } else {
    throw ValidationError("caption needs --video or --features");
  }
  return GreedyDecode(ckpt.params, tok, feat);
}

std::vector<SplitSummary> RunEval(const EvalOptions& opts) {
  const Checkpoint ckpt = LoadCheckpoint(opts.checkpoint);
  const ModelConfig& cfg = ckpt.params.config;
  const PreparedData data = LoadPrepared(opts.data_dir);
  if (data.tokenizer.cap() != cfg.vocab) {
    throw ValidationError("checkpoint vocab " + std::to_string(cfg.vocab) +
                          " does not match tokenizer cap " +
                          std::to_string(data.tokenizer.cap()));
  }
  if (opts.threads < 1) throw ValidationError("threads must be >= 1");
  FeatureStore store(data.manifest,
                     {false, std::make_pair(cfg.frames, cfg.feature_dim)});

  std::vector<EvalRow> rows;
  std::vector<SplitSummary> summaries;
  for (const std::string& split : opts.splits) {
    const std::vector<std::string>& keys = data.Keys(split);
    std::vector<TokenList> captions(keys.size());
    std::vector<std::exception_ptr> errors(opts.threads);
    std::vector<std::thread> pool;
    for (size_t w = 0; w < opts.threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (size_t i = w; i < keys.size(); i += opts.threads) {
            captions[i] = GreedyDecode(ckpt.params, data.tokenizer,
                                       *store.Get(keys[i]));
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    std::map<std::string, TokenList> predictions;
    for (size_t i = 0; i < keys.size(); ++i) predictions[keys[i]] = captions[i];
    std::vector<EvalRow> split_rows =
        EvaluateSplit(split, predictions, data.corpus, keys);
    summaries.push_back(Summarize(split, split_rows));
    rows.insert(rows.end(), split_rows.begin(), split_rows.end());
  }

  fs::create_directories(opts.out_dir);
  {
    std::ofstream out = OpenOut(opts.out_dir / "report.csv");
    WriteReportCsv(rows, out);
  }
  {
    std::ofstream out = OpenOut(opts.out_dir / "scatter.csv");
    out << "split,index,bleu2\n";
    std::map<std::string, size_t> next;
    for (const EvalRow& r : rows) {
      out << r.split << ',' << next[r.split]++ << ',' << FormatSig6(r.bleu2)
          << '\n';
    }
  }
  {
    std::ofstream out = OpenOut(opts.out_dir / "summary.csv");
    WriteSummaryCsv(summaries, out);
  }
  {
    std::ofstream out = OpenOut(opts.out_dir / "histogram.csv");
    WriteHistogramCsv(summaries, out);
  }
  return summaries;
}

}  // namespace vidcap::cli
