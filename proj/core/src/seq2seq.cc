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

#include "vidcap/seq2seq.h"

#include <algorithm>
#include <string>

#include "vidcap/corpus.h"
#include "vidcap/error.h"
#include "vidcap/init.h"
#include "vidcap/rng.h"

namespace vidcap {

void ModelConfig::Validate() const {
  if (frames == 0 || feature_dim == 0 || latent == 0 || max_words == 0 ||
      vocab == 0) {
    throw ValidationError("model dimensions must all be positive");
  }
}

ParamCount CountParams(const ModelConfig& cfg) {
  ParamCount c;
  c.encoder = nn::LstmParamCount(cfg.feature_dim, cfg.latent);
  c.decoder = nn::LstmParamCount(cfg.vocab, cfg.latent);
  c.head = nn::DenseParamCount(cfg.latent, cfg.vocab);
  c.total = c.encoder + c.decoder + c.head;
  return c;
}

template <typename T>
ModelParams<T> ModelParams<T>::Zeros(const ModelConfig& cfg) {
  cfg.Validate();
  return {cfg, nn::LstmParams<T>::Zeros(cfg.feature_dim, cfg.latent),
          nn::LstmParams<T>::Zeros(cfg.vocab, cfg.latent),
          nn::DenseParams<T>::Zeros(cfg.latent, cfg.vocab)};
}

template <typename T>
ModelParams<T> ModelParams<T>::Init(const ModelConfig& cfg, uint64_t seed) {
  ModelParams p = Zeros(cfg);
  Rng rng(seed);
  nn::InitLstm(p.encoder, rng);
  nn::InitLstm(p.decoder, rng);
  nn::InitDense(p.head, rng);
  return p;
}

namespace {

// Shared by the const and mutable overloads; V is T or const T.
template <typename V, typename Params>
std::vector<nn::TensorView<V>> CollectTensors(Params& p) {
  auto mat = [](const char* name, auto& m) {
    return nn::TensorView<V>{name, {m.rows(), m.cols()}, m.values()};
  };
  auto vec = [](const char* name, auto& v) {
    return nn::TensorView<V>{name, {v.size()}, std::span<V>(v)};
  };
  return {mat("encoder.W", p.encoder.W), mat("encoder.U", p.encoder.U),
          vec("encoder.b", p.encoder.b), mat("decoder.W", p.decoder.W),
          mat("decoder.U", p.decoder.U), vec("decoder.b", p.decoder.b),
          mat("head.W", p.head.W),       vec("head.b", p.head.b)};
}

}  // namespace

template <typename T>
std::vector<nn::TensorView<T>> ModelParams<T>::Tensors() {
  return CollectTensors<T>(*this);
}

template <typename T>
std::vector<nn::TensorView<const T>> ModelParams<T>::Tensors() const {
  return CollectTensors<const T>(*this);
}

template <typename T>
void ModelParams<T>::SetZero() {
  for (auto& t : Tensors()) std::fill(t.values.begin(), t.values.end(), T{0});
}

template <typename T>
size_t ModelParams<T>::ParamCount() const {
  return encoder.ParamCount() + decoder.ParamCount() + head.ParamCount();
}

template <typename To, typename From>
ModelParams<To> CastParams(const ModelParams<From>& p) {
  ModelParams<To> out = ModelParams<To>::Zeros(p.config);
  auto src = p.Tensors();
  auto dst = out.Tensors();
  for (size_t k = 0; k < src.size(); ++k) {
    std::transform(src[k].values.begin(), src[k].values.end(),
                   dst[k].values.begin(),
                   [](From v) { return static_cast<To>(v); });
  }
  return out;
}

namespace {

void CheckShape(const char* what, size_t rows, size_t cols, size_t want_rows,
                size_t want_cols) {
  if (rows != want_rows || cols != want_cols) {
    throw ValidationError(std::string(what) + " has shape " +
                          std::to_string(rows) + "x" + std::to_string(cols) +
                          ", model expects " + std::to_string(want_rows) + "x" +
                          std::to_string(want_cols));
  }
}

}  // namespace

template <typename T>
ForwardPass<T> TrainingForward(const ModelParams<T>& params,
                               const Matrix<T>& features,
                               const Matrix<T>& decoder_input) {
  const ModelConfig& cfg = params.config;
  CheckShape("feature matrix", features.rows(), features.cols(), cfg.frames,
             cfg.feature_dim);
  CheckShape("decoder input", decoder_input.rows(), decoder_input.cols(),
             cfg.max_words, cfg.vocab);
  const std::vector<T> zeros(cfg.latent, T{0});
  ForwardPass<T> pass;
  pass.encoder = nn::LstmForward<T>(params.encoder, features, zeros, zeros);
  pass.decoder = nn::LstmForward<T>(params.decoder, decoder_input,
                                    pass.encoder.h_last, pass.encoder.c_last);
  pass.probs = nn::DenseSoftmaxForward(params.head, pass.decoder.H);
  return pass;
}

template <typename T>
T TrainingBackward(const ModelParams<T>& params, const ForwardPass<T>& pass,
                   const Matrix<T>& target, bool mask_padding,
                   ModelParams<T>& grads) {
  const ModelConfig& cfg = params.config;
  CheckShape("target", target.rows(), target.cols(), cfg.max_words, cfg.vocab);
  if (pass.decoder.caches.size() != cfg.max_words ||
      pass.encoder.caches.size() != cfg.frames) {
    throw Error("training backward: forward pass does not match the model");
  }
  nn::CrossEntropyResult<T> ce =
      nn::CrossEntropy(pass.probs, target, mask_padding);
  Matrix<T> dH =
      nn::DenseBackward(params.head, pass.decoder.H, ce.dlogits, grads.head);
  const std::vector<T> zeros(cfg.latent, T{0});
  nn::LstmInputGrads<T> dec = nn::LstmBackward<T>(
      params.decoder, pass.decoder.caches, dH, zeros, zeros, grads.decoder,
      /*want_dx=*/false);
  const Matrix<T> no_seq_grad(cfg.frames, cfg.latent);
  nn::LstmBackward<T>(params.encoder, pass.encoder.caches, no_seq_grad,
                      dec.dh0, dec.dc0, grads.encoder, /*want_dx=*/false);
  return ce.loss;
}

template <typename T>
DecodeState<T> EncodeVideo(const ModelParams<T>& params,
                           const Matrix<T>& features) {
  const ModelConfig& cfg = params.config;
  CheckShape("feature matrix", features.rows(), features.cols(), cfg.frames,
             cfg.feature_dim);
  const std::vector<T> zeros(cfg.latent, T{0});
  nn::LstmSequence<T> seq =
      nn::LstmForward<T>(params.encoder, features, zeros, zeros);
  return {std::move(seq.h_last), std::move(seq.c_last), {}};
}

template <typename T>
std::vector<T> DecodeStep(const ModelParams<T>& params, DecodeState<T>& state,
                          TokenIndex token) {
  const ModelConfig& cfg = params.config;
  if (token == 0 || token > cfg.vocab) {
    throw ValidationError("decode step: token index " + std::to_string(token) +
                          " outside [1, " + std::to_string(cfg.vocab) + "]");
  }
  std::vector<T> x(cfg.vocab, T{0});
  x[token - 1] = T{1};
  nn::LstmStep<T> step =
      nn::LstmCellForward<T>(params.decoder, x, state.h, state.c);
  state.h = std::move(step.h);
  state.c = std::move(step.c);
  Matrix<T> h_row(1, cfg.latent, state.h);
  Matrix<T> probs = nn::DenseSoftmaxForward(params.head, h_row);
  return std::vector<T>(probs.values().begin(), probs.values().end());
}

std::vector<TokenIndex> GreedyDecodeIndices(const ModelParams<float>& params,
                                            const Matrix<float>& features,
                                            TokenIndex bos, TokenIndex eos) {
  DecodeState<float> state = EncodeVideo(params, features);
  std::vector<TokenIndex> words;
  TokenIndex token = bos;
  for (size_t step = 0; step < params.config.max_words; ++step) {
    const std::vector<float> probs = DecodeStep(params, state, token);
    // max_element returns the first maximum: lowest index wins ties.
    const auto best = std::max_element(probs.begin(), probs.end());
    token = static_cast<TokenIndex>(best - probs.begin()) + 1;
    state.emitted.push_back(token);
    if (token == eos) break;
    if (token != bos) words.push_back(token);
  }
  return words;
}

TokenList GreedyDecode(const ModelParams<float>& params, const Tokenizer& tok,
                       const Matrix<float>& features) {
  const auto bos = tok.Lookup(std::string(kBos));
  const auto eos = tok.Lookup(std::string(kEos));
  if (!bos || !eos) {
    throw ValidationError("tokenizer has no 'bos'/'eos' entries");
  }
  if (tok.cap() != params.config.vocab) {
    throw ValidationError("tokenizer cap " + std::to_string(tok.cap()) +
                          " does not match model vocab " +
                          std::to_string(params.config.vocab));
  }
  TokenList out;
  for (TokenIndex idx : GreedyDecodeIndices(params, features, *bos, *eos)) {
    if (const std::string* w = tok.WordAt(idx)) out.push_back(*w);
  }
  return out;
}

template struct ModelParams<float>;
template struct ModelParams<double>;
template ModelParams<double> CastParams<double, float>(const ModelParams<float>&);
template ModelParams<float> CastParams<float, double>(const ModelParams<double>&);

#define VIDCAP_INSTANTIATE_SEQ2SEQ(T)                                          \
  template ForwardPass<T> TrainingForward<T>(                                  \
      const ModelParams<T>&, const Matrix<T>&, const Matrix<T>&);              \
  template T TrainingBackward<T>(const ModelParams<T>&, const ForwardPass<T>&, \
                                 const Matrix<T>&, bool, ModelParams<T>&);     \
  template DecodeState<T> EncodeVideo<T>(const ModelParams<T>&,                \
                                         const Matrix<T>&);                    \
  template std::vector<T> DecodeStep<T>(const ModelParams<T>&,                 \
                                        DecodeState<T>&, TokenIndex);

VIDCAP_INSTANTIATE_SEQ2SEQ(float)
VIDCAP_INSTANTIATE_SEQ2SEQ(double)

#undef VIDCAP_INSTANTIATE_SEQ2SEQ

}  // namespace vidcap
