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

#ifndef VIDCAP_SEQ2SEQ_H_
#define VIDCAP_SEQ2SEQ_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vidcap/dense.h"
#include "vidcap/lstm.h"
#include "vidcap/matrix.h"
#include "vidcap/tensor.h"
#include "vidcap/tokenizer.h"

namespace vidcap {

template <typename T>
using Matrix = nn::Matrix<T>;

// Encoder-decoder dimensions. Defaults are the full-scale model: 80 frames of
// 4096 features, 512 latent units, 10 decoder steps, 1500 words.
struct ModelConfig {
  size_t frames = 80;
  size_t feature_dim = 4096;
  size_t latent = 512;
  size_t max_words = 10;
  size_t vocab = 1500;

  void Validate() const;
  bool operator==(const ModelConfig&) const = default;
};

struct ParamCount {
  size_t encoder = 0;
  size_t decoder = 0;
  size_t head = 0;
  size_t total = 0;
  bool operator==(const ParamCount&) const = default;
};

ParamCount CountParams(const ModelConfig& cfg);

template <typename T>
struct ModelParams {
  ModelConfig config;
  nn::LstmParams<T> encoder;  // feature_dim -> latent
  nn::LstmParams<T> decoder;  // vocab (one-hot) -> latent
  nn::DenseParams<T> head;    // latent -> vocab, softmax

  static ModelParams Zeros(const ModelConfig& cfg);
  // Deterministic initialization; see nn::InitLstm / nn::InitDense.
  static ModelParams Init(const ModelConfig& cfg, uint64_t seed);

  // Tensors in checkpoint order: encoder.{W,U,b}, decoder.{W,U,b}, head.{W,b}.
  std::vector<nn::TensorView<T>> Tensors();
  std::vector<nn::TensorView<const T>> Tensors() const;

  void SetZero();
  size_t ParamCount() const;
  bool operator==(const ModelParams&) const = default;
};

template <typename To, typename From>
ModelParams<To> CastParams(const ModelParams<From>& p);

template <typename T>
struct ForwardPass {
  nn::LstmSequence<T> encoder;
  nn::LstmSequence<T> decoder;
  Matrix<T> probs;  // max_words x vocab
};

// Teacher-forced pass: the encoder reads every feature row, its final (h, c)
// seed the decoder, and the head maps each decoder state to a distribution.
template <typename T>
ForwardPass<T> TrainingForward(const ModelParams<T>& params,
                               const Matrix<T>& features,
                               const Matrix<T>& decoder_input);

// Returns the mean cross-entropy and accumulates every parameter gradient,
// including the encoder's via the initial-state connection, into `grads`.
template <typename T>
T TrainingBackward(const ModelParams<T>& params, const ForwardPass<T>& pass,
                   const Matrix<T>& target, bool mask_padding,
                   ModelParams<T>& grads);

template <typename T>
struct DecodeState {
  std::vector<T> h;
  std::vector<T> c;
  std::vector<TokenIndex> emitted;
};

// Final encoder state only.
template <typename T>
DecodeState<T> EncodeVideo(const ModelParams<T>& params,
                           const Matrix<T>& features);

// One decoder step on the one-hot of `token`, updating (h, c) in place.
// Returns the head distribution over the vocab.
template <typename T>
std::vector<T> DecodeStep(const ModelParams<T>& params, DecodeState<T>& state,
                          TokenIndex token);

// Greedy search from the bos token. Stops when eos is predicted or
// max_words words have been emitted. The result excludes bos and eos.
// Argmax ties go to the lowest index.
std::vector<TokenIndex> GreedyDecodeIndices(const ModelParams<float>& params,
                                            const Matrix<float>& features,
                                            TokenIndex bos, TokenIndex eos);

// Same, mapped to words. Indices with no vocabulary word are dropped.
TokenList GreedyDecode(const ModelParams<float>& params, const Tokenizer& tok,
                       const Matrix<float>& features);

}  // namespace vidcap

#endif  // VIDCAP_SEQ2SEQ_H_
