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

#ifndef VIDCAP_TRAINER_H_
#define VIDCAP_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "vidcap/adam.h"
#include "vidcap/corpus.h"
#include "vidcap/feature_store.h"
#include "vidcap/seq2seq.h"
#include "vidcap/tokenizer.h"

namespace vidcap {

enum class TeacherForcing {
  // Decoder input = tokens[0 .. L-2], target = tokens[1 .. L-1].
  kShift,
  // One sample per prefix: input = tokens[0 .. k-1], target = tokens[k] at
  // row k-1 only.
  kPrefixExpansion,
};

struct TrainConfig {
  size_t batch_size = 50;
  size_t epochs = 80;
  double lr = 1e-4;
  uint64_t seed = 42;
  bool mask_padding = true;
  TeacherForcing mode = TeacherForcing::kShift;
  // Write ckpt-<epoch>.sq2s every N epochs (0: initial and final only).
  size_t checkpoint_every = 0;
  size_t threads = 1;
  bool save_optimizer = false;
  // Checkpoints and metrics.csv go here; empty disables all file output.
  std::filesystem::path out_dir;

  void Validate() const;
};

// One training example. Rows hold token indices; 0 marks a padding row
// (decoder input) or a row with no target.
struct Sample {
  std::string video_id;
  std::vector<TokenIndex> input;
  std::vector<TokenIndex> target;
};

// Expands every caption of every key into samples. Captions whose encoding
// is shorter than two tokens yield nothing and are counted in `skipped`.
std::vector<Sample> BuildSamples(const std::vector<std::string>& keys,
                                 const DescriptionCorpus& corpus,
                                 const Tokenizer& tok, size_t max_words,
                                 TeacherForcing mode, size_t* skipped = nullptr);

// rows.size() x vocab matrix; row r is the one-hot of rows[r], or all zero
// when rows[r] == 0.
Matrix<float> OneHotRows(const std::vector<TokenIndex>& rows, size_t vocab);

// Per-epoch shuffled batches over a fixed sample set. The last batch may be
// short.
class BatchGenerator {
 public:
  BatchGenerator(std::vector<Sample> samples, size_t batch_size, uint64_t seed);

  // Sample indices for each batch of `epoch`, shuffled with a seed derived
  // from (seed, epoch).
  std::vector<std::vector<size_t>> EpochBatches(size_t epoch) const;

  const std::vector<Sample>& samples() const { return samples_; }
  size_t batch_size() const { return batch_size_; }

 private:
  std::vector<Sample> samples_;
  size_t batch_size_;
  uint64_t seed_;
};

// Builds the generator for `keys`, failing if any key lacks features.
BatchGenerator MakeBatches(const std::vector<std::string>& keys,
                           const DescriptionCorpus& corpus,
                           const FeatureStore& features, const Tokenizer& tok,
                           const ModelConfig& model, const TrainConfig& cfg);

// Fraction of counted rows whose argmax (lowest index on ties) equals the
// target's hot column. All-zero target rows are skipped when mask_padding is
// set; otherwise their target column is taken as 0.
template <typename T>
double Accuracy(const Matrix<T>& probs, const Matrix<T>& target,
                bool mask_padding);

struct EpochMetrics {
  size_t epoch = 0;
  double train_loss = 0.0;
  double train_acc = 0.0;
  double val_loss = 0.0;
  double val_acc = 0.0;
  bool operator==(const EpochMetrics&) const = default;
};

using MetricsHistory = std::vector<EpochMetrics>;

void WriteMetricsCsv(const MetricsHistory& history, std::ostream& out);
void WriteMetricsCsv(const MetricsHistory& history,
                     const std::filesystem::path& path);

struct SetMetrics {
  double loss = 0.0;
  double accuracy = 0.0;
};

// Forward-only mean loss and accuracy over `samples`.
SetMetrics EvaluateSamples(const ModelParams<float>& params,
                           const std::vector<Sample>& samples,
                           const FeatureStore& features, bool mask_padding,
                           size_t threads);

class TrainingAborted : public Error {
 public:
  using Error::Error;
};

struct TrainResult {
  ModelParams<float> params;
  nn::AdamState<float> adam;
  MetricsHistory history;
};

// Mini-batch Adam over `train`. Each batch applies the sample-mean gradient;
// per-sample gradients are computed in parallel and summed in sample order,
// so results do not depend on `threads`. Throws TrainingAborted on a
// non-finite loss, leaving earlier checkpoints in place.
TrainResult Train(ModelParams<float> params, const TrainConfig& cfg,
                  const BatchGenerator& train, const std::vector<Sample>& val,
                  const FeatureStore& features,
                  const std::function<void(const EpochMetrics&)>& on_epoch = {});

std::filesystem::path CheckpointPath(const std::filesystem::path& dir,
                                     size_t epoch);

}  // namespace vidcap

#endif  // VIDCAP_TRAINER_H_
