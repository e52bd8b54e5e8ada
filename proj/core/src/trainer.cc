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

#include "vidcap/trainer.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <numeric>
#include <ostream>
#include <thread>
#include <utility>

#include "vidcap/checkpoint.h"
#include "vidcap/error.h"
#include "vidcap/rng.h"
#include "vidcap/text_util.h"

namespace vidcap {

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is handled
// by exactly one worker; callers write results to per-index slots.
template <typename Fn>
void ParallelFor(size_t n, size_t threads, Fn&& fn) {
  threads = std::max<size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (size_t i = 0; i < n; ++i) fn(i, 0);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (size_t i = w; i < n; i += threads) fn(i, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct SampleOutcome {
  double loss = 0.0;
  double accuracy = 0.0;
};

SampleOutcome ForwardSample(const ModelParams<float>& params,
                            const Sample& sample, const FeatureStore& features,
                            bool mask_padding, ModelParams<float>* grads) {
  const size_t vocab = params.config.vocab;
  const auto feat = features.Get(sample.video_id);
  const Matrix<float> input = OneHotRows(sample.input, vocab);
  const Matrix<float> target = OneHotRows(sample.target, vocab);
  ForwardPass<float> pass = TrainingForward(params, *feat, input);
  SampleOutcome out;
  out.accuracy = Accuracy(pass.probs, target, mask_padding);
  if (grads != nullptr) {
    out.loss = TrainingBackward(params, pass, target, mask_padding, *grads);
  } else {
    out.loss = nn::CrossEntropy(pass.probs, target, mask_padding).loss;
  }
  return out;
}

void AddParams(const ModelParams<float>& src, ModelParams<float>& dst) {
  const auto s = src.Tensors();
  const auto d = dst.Tensors();
  for (size_t k = 0; k < s.size(); ++k) nn::AddInPlace<float>(s[k].values, d[k].values);
}

void ScaleParams(ModelParams<float>& p, float factor) {
  for (auto& t : p.Tensors()) {
    for (float& v : t.values) v *= factor;
  }
}

}  // namespace

void TrainConfig::Validate() const {
  if (batch_size < 1) throw ValidationError("batch size must be >= 1");
  if (epochs < 1) throw ValidationError("epochs must be >= 1");
  if (!(lr >= 0.0) || !std::isfinite(lr)) {
    throw ValidationError("learning rate must be finite and non-negative");
  }
  if (threads < 1) throw ValidationError("threads must be >= 1");
}

std::vector<Sample> BuildSamples(const std::vector<std::string>& keys,
                                 const DescriptionCorpus& corpus,
                                 const Tokenizer& tok, size_t max_words,
                                 TeacherForcing mode, size_t* skipped) {
  std::vector<Sample> samples;
  size_t dropped = 0;
  for (const std::string& key : keys) {
    for (const TokenList& caption : corpus.at(key)) {
      const std::vector<TokenIndex> enc = tok.Encode(caption);
      if (enc.size() < 2) {
        ++dropped;
        continue;
      }
      if (enc.size() - 1 > max_words) {
        throw ValidationError("caption of video '" + key + "' has " +
                              std::to_string(enc.size()) +
                              " tokens; the decoder fits " +
                              std::to_string(max_words + 1));
      }
      if (mode == TeacherForcing::kShift) {
        Sample s{key, std::vector<TokenIndex>(max_words, 0),
                 std::vector<TokenIndex>(max_words, 0)};
        for (size_t r = 0; r + 1 < enc.size(); ++r) {
          s.input[r] = enc[r];
          s.target[r] = enc[r + 1];
        }
        samples.push_back(std::move(s));
      } else {
        for (size_t k = 1; k < enc.size(); ++k) {
          Sample s{key, std::vector<TokenIndex>(max_words, 0),
                   std::vector<TokenIndex>(max_words, 0)};
          std::copy(enc.begin(), enc.begin() + k, s.input.begin());
          s.target[k - 1] = enc[k];
          samples.push_back(std::move(s));
        }
      }
    }
  }
  if (skipped != nullptr) *skipped = dropped;
  return samples;
}

Matrix<float> OneHotRows(const std::vector<TokenIndex>& rows, size_t vocab) {
  Matrix<float> m(rows.size(), vocab);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] == 0) continue;
    if (rows[r] > vocab) {
      throw ValidationError("token index " + std::to_string(rows[r]) +
                            " exceeds vocab " + std::to_string(vocab));
    }
    m(r, rows[r] - 1) = 1.0f;
  }
  return m;
}

BatchGenerator::BatchGenerator(std::vector<Sample> samples, size_t batch_size,
                               uint64_t seed)
    : samples_(std::move(samples)), batch_size_(batch_size), seed_(seed) {
  if (batch_size_ == 0) throw ValidationError("batch size must be >= 1");
}

std::vector<std::vector<size_t>> BatchGenerator::EpochBatches(
    size_t epoch) const {
  std::vector<size_t> order(samples_.size());
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(DeriveSeed(seed_, epoch));
  rng.Shuffle(order);
  std::vector<std::vector<size_t>> batches;
  for (size_t i = 0; i < order.size(); i += batch_size_) {
    const size_t end = std::min(order.size(), i + batch_size_);
    batches.emplace_back(order.begin() + i, order.begin() + end);
  }
  return batches;
}

BatchGenerator MakeBatches(const std::vector<std::string>& keys,
                           const DescriptionCorpus& corpus,
                           const FeatureStore& features, const Tokenizer& tok,
                           const ModelConfig& model, const TrainConfig& cfg) {
  for (const std::string& key : keys) {
    if (!features.Contains(key)) {
      throw ValidationError("training video '" + key + "' has no features");
    }
  }
  return BatchGenerator(
      BuildSamples(keys, corpus, tok, model.max_words, cfg.mode), cfg.batch_size,
      cfg.seed);
}

template <typename T>
double Accuracy(const Matrix<T>& probs, const Matrix<T>& target,
                bool mask_padding) {
  size_t counted = 0;
  size_t hits = 0;
  for (size_t t = 0; t < probs.rows(); ++t) {
    std::span<const T> y = target.row(t);
    const auto hot = std::max_element(y.begin(), y.end());
    if (*hot == T{0} && mask_padding) continue;
    std::span<const T> p = probs.row(t);
    const auto best = std::max_element(p.begin(), p.end());
    ++counted;
    if (best - p.begin() == hot - y.begin()) ++hits;
  }
  return counted == 0 ? 0.0
                      : static_cast<double>(hits) / static_cast<double>(counted);
}

template double Accuracy<float>(const Matrix<float>&, const Matrix<float>&, bool);
template double Accuracy<double>(const Matrix<double>&, const Matrix<double>&,
                                 bool);

void WriteMetricsCsv(const MetricsHistory& history, std::ostream& out) {
  out << "epoch,train_loss,train_acc,val_loss,val_acc\n";
  for (const EpochMetrics& m : history) {
    out << m.epoch << ',' << FormatSig6(m.train_loss) << ','
        << FormatSig6(m.train_acc) << ',' << FormatSig6(m.val_loss) << ','
        << FormatSig6(m.val_acc) << '\n';
  }
}

void WriteMetricsCsv(const MetricsHistory& history,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write metrics file '" + path.string() + "'");
  WriteMetricsCsv(history, out);
}

SetMetrics EvaluateSamples(const ModelParams<float>& params,
                           const std::vector<Sample>& samples,
                           const FeatureStore& features, bool mask_padding,
                           size_t threads) {
  if (samples.empty()) return {};
  std::vector<SampleOutcome> outcomes(samples.size());
  ParallelFor(samples.size(), threads, [&](size_t i, size_t) {
    outcomes[i] = ForwardSample(params, samples[i], features, mask_padding,
                                nullptr);
  });
  SetMetrics m;
  for (const SampleOutcome& o : outcomes) {
    m.loss += o.loss;
    m.accuracy += o.accuracy;
  }
  m.loss /= static_cast<double>(samples.size());
  m.accuracy /= static_cast<double>(samples.size());
  return m;
}

std::filesystem::path CheckpointPath(const std::filesystem::path& dir,
                                     size_t epoch) {
  return dir / ("ckpt-" + std::to_string(epoch) + ".sq2s");
}

TrainResult Train(ModelParams<float> params, const TrainConfig& cfg,
                  const BatchGenerator& train, const std::vector<Sample>& val,
                  const FeatureStore& features,
                  const std::function<void(const EpochMetrics&)>& on_epoch) {
  cfg.Validate();
  if (train.samples().empty()) {
    throw ValidationError("training split produced no samples");
  }
  nn::AdamConfig adam_cfg;
  adam_cfg.lr = cfg.lr;
  TrainResult result{std::move(params), {}, {}};
  ModelParams<float>& model = result.params;
  result.adam = nn::MakeAdamState<float>(model.Tensors(), adam_cfg);

  const bool write_files = !cfg.out_dir.empty();
  auto save = [&](size_t epoch) {
    if (!write_files) return;
    SaveCheckpoint(CheckpointPath(cfg.out_dir, epoch), model,
                   cfg.save_optimizer ? &result.adam : nullptr);
  };
  if (write_files) std::filesystem::create_directories(cfg.out_dir);
  save(0);

  const size_t wave = std::max<size_t>(1, cfg.threads);
  std::vector<ModelParams<float>> slots(wave, ModelParams<float>::Zeros(model.config));
  ModelParams<float> batch_grad = ModelParams<float>::Zeros(model.config);
  const auto& samples = train.samples();

  for (size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    double loss_sum = 0.0;
    double acc_sum = 0.0;
    for (const std::vector<size_t>& batch : train.EpochBatches(epoch)) {
      batch_grad.SetZero();
      std::vector<SampleOutcome> outcomes(batch.size());
      for (size_t start = 0; start < batch.size(); start += wave) {
        const size_t count = std::min(wave, batch.size() - start);
        ParallelFor(count, count, [&](size_t i, size_t) {
          slots[i].SetZero();
          outcomes[start + i] =
              ForwardSample(model, samples[batch[start + i]], features,
                            cfg.mask_padding, &slots[i]);
        });
        for (size_t i = 0; i < count; ++i) AddParams(slots[i], batch_grad);
      }
      for (const SampleOutcome& o : outcomes) {
        if (!std::isfinite(o.loss)) {
          throw TrainingAborted("non-finite loss in epoch " +
                                std::to_string(epoch) +
                                "; last good checkpoint retained");
        }
        loss_sum += o.loss;
        acc_sum += o.accuracy;
      }
      ScaleParams(batch_grad, 1.0f / static_cast<float>(batch.size()));
      try {
        nn::AdamStep<float>(result.adam, model.Tensors(),
                            std::as_const(batch_grad).Tensors());
      } catch (const Error& e) {
        throw TrainingAborted(std::string(e.what()) + " in epoch " +
                              std::to_string(epoch) +
                              "; last good checkpoint retained");
      }
    }

    EpochMetrics m;
    m.epoch = epoch;
    m.train_loss = loss_sum / static_cast<double>(samples.size());
    m.train_acc = acc_sum / static_cast<double>(samples.size());
    const SetMetrics v =
        EvaluateSamples(model, val, features, cfg.mask_padding, cfg.threads);
    m.val_loss = v.loss;
    m.val_acc = v.accuracy;
    result.history.push_back(m);

    if (write_files) {
      WriteMetricsCsv(result.history, cfg.out_dir / "metrics.csv");
      const bool cadence = cfg.checkpoint_every != 0 &&
                           epoch % cfg.checkpoint_every == 0;
      if (cadence || epoch == cfg.epochs) save(epoch);
    }
    if (on_epoch) on_epoch(m);
  }
  return result;
}

}  // namespace vidcap
