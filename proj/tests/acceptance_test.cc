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

// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>

#include "commands.h"
#include "model_check.h"
#include "oracles.h"
#include "vidcap/checkpoint.h"
#include "vidcap/corpus.h"
#include "vidcap/evaluator.h"
#include "vidcap/feature_store.h"
#include "vidcap/rng.h"
#include "vidcap/seq2seq.h"
#include "vidcap/trainer.h"

namespace {

namespace fs = std::filesystem;
using namespace vidcap;

int g_failures = 0;

void Report(int id, const char* name, bool pass, const std::string& detail,
            double seconds) {
  std::printf("[%s] %d %-28s %s (%.1fs)\n", pass ? "PASS" : "FAIL", id, name,
              detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

template <typename Fn>
void Criterion(int id, const char* name, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    pass = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  Report(id, name, pass, detail, secs);
}

std::string Fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path Scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("vidcap_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Fixture of 6 videos x 3 identical captions, prepared with a 40-word cap.
fs::path PrepareFixture(const std::string& name) {
  const fs::path dir = Scratch(name);
  cli::FixtureOptions fix;
  fix.out_dir = dir / "fx";
  fix.videos = 6;
  fix.captions_per_video = 3;
  fix.variants = 1;
  fix.frames = 8;
  fix.feature_dim = 16;
  cli::RunMakeFixture(fix);
  cli::PrepareOptions prep;
  prep.descriptions = dir / "fx/descriptions.txt";
  prep.manifest = dir / "fx/manifest.tsv";
  prep.out_dir = dir / "data";
  prep.seed = 1;
  prep.vocab = 40;
  cli::RunPrepare(prep);
  return dir;
}

cli::TrainOptions ToyTrainOptions(const fs::path& dir, size_t epochs) {
  cli::TrainOptions t;
  t.data_dir = dir / "data";
  t.model.frames = 8;
  t.model.feature_dim = 16;
  t.model.latent = 32;
  t.model.max_words = 10;
  t.train.batch_size = 4;
  t.train.epochs = epochs;
  t.train.lr = 1e-3;
  t.train.seed = 42;
  return t;
}

bool ParamCounts(std::string& detail) {
  const ParamCount c = CountParams(ModelConfig{80, 4096, 512, 10, 1500});
  detail = "encoder " + std::to_string(c.encoder) + ", decoder " +
           std::to_string(c.decoder) + ", head " + std::to_string(c.head) +
           ", total " + std::to_string(c.total);
  return c.encoder == 9439232 && c.decoder == 4122624 && c.head == 769500 &&
         c.total == 14331356;
}

bool Gradients(std::string& detail) {
  double worst = 0.0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    worst = std::max(worst, check::ModelGradientError(1000 + seed));
  }
  detail = "20 seeds, max rel error " + Fmt("%.3g", worst) + " (< 1e-6)";
  return worst < 1e-6;
}

bool Overfit(std::string& detail) {
  const fs::path dir = PrepareFixture("overfit");
  cli::TrainOptions opts = ToyTrainOptions(dir, 400);
  opts.train.out_dir = dir / "run";
  std::ostringstream log;
  const TrainResult r = cli::RunTrain(opts, log);

  const cli::PreparedData data = cli::LoadPrepared(dir / "data");
  FeatureStore store(data.manifest, {});
  const auto samples =
      BuildSamples(data.Keys("train"), data.corpus, data.tokenizer,
                   opts.model.max_words, TeacherForcing::kShift);
  const SetMetrics tf = EvaluateSamples(r.params, samples, store, true, 1);

  cli::EvalOptions ev;
  ev.checkpoint = CheckpointPath(opts.train.out_dir, opts.train.epochs);
  ev.data_dir = dir / "data";
  ev.out_dir = dir / "eval";
  ev.splits = {"train"};
  const SplitSummary s = cli::RunEval(ev).front();
  fs::remove_all(dir);

  detail = std::to_string(r.history.size()) + " epochs, V=" +
           std::to_string(data.tokenizer.cap()) + ", teacher-forced acc " +
           Fmt("%.4f", tf.accuracy) + " (>= 0.99), train BLEU-2 " +
           Fmt("%.4f", s.mean_bleu2) + " (>= 0.90)";
  return data.tokenizer.cap() <= 40 && r.history.size() <= 500 &&
         tf.accuracy >= 0.99 && s.mean_bleu2 >= 0.90;
}

TokenList RandomSentence(Rng& rng, size_t min_len, size_t max_len, size_t vocab) {
  static const char* kWords[] = {"a", "man", "dog", "runs", "the", "ball", "is", "on"};
  TokenList t(min_len + rng.UniformIndex(max_len - min_len + 1));
  for (auto& w : t) w = kWords[rng.UniformIndex(vocab)];
  return t;
}

bool BleuOracle(std::string& detail) {
  Rng rng(99);
  double worst = 0.0;
  const int n = 5000;
  size_t nonzero = 0;
  for (int i = 0; i < n; ++i) {
    const size_t vocab = 2 + rng.UniformIndex(7);
    const TokenList cand = RandomSentence(rng, 0, 12, vocab);
    std::vector<TokenList> refs(1 + rng.UniformIndex(5));
    for (auto& r : refs) r = RandomSentence(rng, 1, 12, vocab);
    const double got = Bleu2(cand, refs).value;
    nonzero += got > 0.0 ? 1 : 0;
    worst = std::max(worst, std::abs(got - oracle::Bleu2(cand, refs)));
  }
  detail = std::to_string(n) + " instances (" + std::to_string(nonzero) +
           " nonzero), max |diff| " + Fmt("%.3g", worst) + " (<= 1e-12)";
  return worst <= 1e-12;
}

bool Splits(std::string& detail) {
  const SplitSizes paper = ComputeSplitSizes(1970);
  const bool ok = paper == SplitSizes{1773, 99, 98};
  size_t bad = 0;
  size_t adjusted = 0;
  Rng rng(5);
  for (size_t n = 3; n <= 5000; ++n) {
    const SplitSizes s = ComputeSplitSizes(n);
    // round(0.9 n) and ceil(0.05 n), unless that leaves no test videos.
    const size_t train = (9 * n + 5) / 10;
    const size_t val = (n + 19) / 20;
    if (train + val >= n) {
      ++adjusted;
      if (s.val != val || s.train != n - val - 1) ++bad;
    } else if (s.train != train || s.val != val) {
      ++bad;
    }
    DescriptionCorpus c;
    for (size_t i = 0; i < n; ++i) c.entries["k" + std::to_string(i)] = {{"x"}};
    const SplitAssignment a = SplitKeys(c, rng.NextU64());
    std::set<std::string> all(a.train_keys.begin(), a.train_keys.end());
    all.insert(a.val_keys.begin(), a.val_keys.end());
    all.insert(a.test_keys.begin(), a.test_keys.end());
    if (all.size() != n || a.train_keys.size() != s.train ||
        a.val_keys.size() != s.val || a.test_keys.size() != s.test ||
        s.train == 0 || s.val == 0 || s.test == 0) {
      ++bad;
    }
  }
  detail = "1970 -> (" + std::to_string(paper.train) + ", " +
           std::to_string(paper.val) + ", " + std::to_string(paper.test) +
           "); partitions for every N in [3, 5000]: " + std::to_string(bad) +
           " violations (" + std::to_string(adjusted) +
           " small N keep one test video)";
  return ok && bad == 0;
}

bool Decimation(std::string& detail) {
  const auto idx = DecimationIndices(123, 80);
  bool ok = idx.size() == 80 && idx.front() == 0 && idx.back() == 122;
  size_t bad = 0;
  for (size_t n = 1; n <= 10000; ++n) {
    const auto v = DecimationIndices(n, 80);
    if (v.size() != 80 || v.front() != 0 || v.back() != n - 1) ++bad;
    for (size_t i = 1; i < v.size(); ++i) {
      if (v[i] < v[i - 1] || v[i] >= n) ++bad;
    }
  }
  detail = "123 -> idx0=" + std::to_string(idx.front()) + ", idx79=" +
           std::to_string(idx.back()) + "; monotone over [1, 10000], " +
           std::to_string(bad) + " violations";
  return ok && bad == 0;
}

bool Determinism(std::string& detail) {
  const fs::path dir = PrepareFixture("determinism");
  const size_t epochs = 400;
  auto run = [&](const std::string& name, size_t threads) {
    cli::TrainOptions opts = ToyTrainOptions(dir, epochs);
    opts.train.out_dir = dir / name;
    opts.train.threads = threads;
    std::ostringstream log;
    cli::RunTrain(opts, log);
    return std::make_pair(Slurp(dir / name / "metrics.csv"),
                          Slurp(CheckpointPath(dir / name, epochs)));
  };
  const auto a = run("a", 1);
  const auto b = run("b", 1);
  const auto c = run("c", 4);
  fs::remove_all(dir);
  const bool same_seed = a == b;
  const bool threads = a == c;
  detail = std::to_string(epochs) + " epochs; rerun " +
           (same_seed ? "identical" : "DIFFERS") + ", threads 4 vs 1 " +
           (threads ? "identical" : "DIFFERS") + " (metrics.csv " +
           std::to_string(a.first.size()) + " B, checkpoint " +
           std::to_string(a.second.size()) + " B)";
  return same_seed && threads && !a.first.empty() && !a.second.empty();
}

bool Consistency(std::string& detail) {
  double worst = 0.0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    worst = std::max(worst, check::DecodeConsistencyError(5000 + seed));
  }
  detail = "50 instances, max |diff| " + Fmt("%.3g", worst) + " (<= 1e-6)";
  return worst <= 1e-6;
}

}  // namespace

int main() {
  Criterion(1, "parameter counts", ParamCounts);
  Criterion(2, "gradient check", Gradients);
  Criterion(3, "overfit end-to-end", Overfit);
  Criterion(4, "bleu oracle equivalence", BleuOracle);
  Criterion(5, "split sizes", Splits);
  Criterion(6, "decimation anchors", Decimation);
  Criterion(7, "determinism", Determinism);
  Criterion(8, "decode consistency", Consistency);
  std::printf(
      "[INFO] 9 %-28s full-corpus BLEU means (train 91.8%%, val 45.8%%, test "
      "43.3%%) and the loss/accuracy/histogram curves of the full-scale run "
      "need the complete video corpus and CNN features; they are not asserted "
      "here. Criteria 2, 3, 4 and 8 stand in for them.\n",
      "not reproduced");
  std::printf("%d failure(s)\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
