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

#include "vidcap/lstm.h"

#include <cmath>
#include <string>

#include "vidcap/error.h"

namespace vidcap::nn {

namespace {

template <typename T>
T Sigmoid(T z) {
  // Branches keep exp() from overflowing for large |z|.
  if (z >= T{0}) {
    const T e = std::exp(-z);
    return T{1} / (T{1} + e);
  }
  const T e = std::exp(z);
  return e / (T{1} + e);
}

void CheckDim(const char* what, size_t got, size_t want) {
  if (got != want) {
    throw Error(std::string("lstm: ") + what + " has size " +
                std::to_string(got) + ", expected " + std::to_string(want));
  }
}

}  // namespace

template <typename T>
LstmStep<T> LstmCellForward(const LstmParams<T>& p, std::span<const T> x,
                            std::span<const T> h_prev,
                            std::span<const T> c_prev) {
  const size_t hid = p.hidden();
  CheckDim("input", x.size(), p.input_dim());
  CheckDim("h_prev", h_prev.size(), hid);
  CheckDim("c_prev", c_prev.size(), hid);
  CheckDim("bias", p.b.size(), 4 * hid);
  CheckDim("recurrent kernel width", p.U.cols(), 4 * hid);
  CheckDim("input kernel width", p.W.cols(), 4 * hid);

  std::vector<T> z(p.b);
  AddVecMat<T>(x, p.W, z);
  AddVecMat<T>(h_prev, p.U, z);

  LstmStep<T> out;
  LstmStepCache<T>& cache = out.cache;
  cache.x.assign(x.begin(), x.end());
  cache.h_prev.assign(h_prev.begin(), h_prev.end());
  cache.c_prev.assign(c_prev.begin(), c_prev.end());
  cache.i.resize(hid);
  cache.f.resize(hid);
  cache.g.resize(hid);
  cache.o.resize(hid);
  cache.c.resize(hid);
  cache.tanh_c.resize(hid);
  out.h.resize(hid);
  for (size_t k = 0; k < hid; ++k) {
    cache.i[k] = Sigmoid(z[kInputGate * hid + k]);
    cache.f[k] = Sigmoid(z[kForgetGate * hid + k]);
    cache.g[k] = std::tanh(z[kCellGate * hid + k]);
    cache.o[k] = Sigmoid(z[kOutputGate * hid + k]);
    cache.c[k] = cache.f[k] * c_prev[k] + cache.i[k] * cache.g[k];
    cache.tanh_c[k] = std::tanh(cache.c[k]);
    out.h[k] = cache.o[k] * cache.tanh_c[k];
  }
  out.c = cache.c;
  return out;
}

template <typename T>
LstmSequence<T> LstmForward(const LstmParams<T>& p, const Matrix<T>& X,
                            std::span<const T> h0, std::span<const T> c0) {
  if (X.rows() == 0) throw Error("lstm: sequence must have at least one step");
  CheckDim("input width", X.cols(), p.input_dim());
  const size_t hid = p.hidden();
  LstmSequence<T> seq;
  seq.H = Matrix<T>(X.rows(), hid);
  seq.caches.reserve(X.rows());
  std::vector<T> h(h0.begin(), h0.end());
  std::vector<T> c(c0.begin(), c0.end());
  for (size_t t = 0; t < X.rows(); ++t) {
    LstmStep<T> step = LstmCellForward<T>(p, X.row(t), h, c);
    std::copy(step.h.begin(), step.h.end(), seq.H.row(t).begin());
    h = std::move(step.h);
    c = std::move(step.c);
    seq.caches.push_back(std::move(step.cache));
  }
  seq.h_last = std::move(h);
  seq.c_last = std::move(c);
  return seq;
}

template <typename T>
LstmInputGrads<T> LstmBackward(const LstmParams<T>& p,
                               const std::vector<LstmStepCache<T>>& caches,
                               const Matrix<T>& dH, std::span<const T> dh_last,
                               std::span<const T> dc_last, LstmParams<T>& grads,
                               bool want_dx) {
  const size_t hid = p.hidden();
  const size_t steps = caches.size();
  if (steps == 0) throw Error("lstm backward: empty cache");
  CheckDim("dH rows", dH.rows(), steps);
  CheckDim("dH cols", dH.cols(), hid);
  CheckDim("dh_last", dh_last.size(), hid);
  CheckDim("dc_last", dc_last.size(), hid);
  CheckDim("grad W rows", grads.W.rows(), p.W.rows());
  CheckDim("grad W cols", grads.W.cols(), p.W.cols());
  CheckDim("grad U rows", grads.U.rows(), p.U.rows());
  CheckDim("grad b", grads.b.size(), p.b.size());

  LstmInputGrads<T> out;
  if (want_dx) out.dX = Matrix<T>(steps, p.input_dim());

  std::vector<T> dh(dh_last.begin(), dh_last.end());
  std::vector<T> dc(dc_last.begin(), dc_last.end());
  std::vector<T> dz(4 * hid);
  for (size_t s = steps; s-- > 0;) {
    const LstmStepCache<T>& cache = caches[s];
    CheckDim("cached input", cache.x.size(), p.input_dim());
    for (size_t k = 0; k < hid; ++k) {
      const T dh_k = dh[k] + dH(s, k);
      const T tc = cache.tanh_c[k];
      const T dc_k = dc[k] + dh_k * cache.o[k] * (T{1} - tc * tc);
      const T i = cache.i[k], f = cache.f[k], g = cache.g[k], o = cache.o[k];
      dz[kInputGate * hid + k] = dc_k * g * i * (T{1} - i);
      dz[kForgetGate * hid + k] = dc_k * cache.c_prev[k] * f * (T{1} - f);
      dz[kCellGate * hid + k] = dc_k * i * (T{1} - g * g);
      dz[kOutputGate * hid + k] = dh_k * tc * o * (T{1} - o);
      dc[k] = dc_k * f;
    }
    AddOuter<T>(cache.x, dz, grads.W);
    AddOuter<T>(cache.h_prev, dz, grads.U);
    AddInPlace<T>(dz, grads.b);
    if (want_dx) {
      std::span<T> dx = out.dX.row(s);
      AddMatVec<T>(p.W, dz, dx);
    }
    std::fill(dh.begin(), dh.end(), T{0});
    AddMatVec<T>(p.U, dz, dh);
  }
  out.dh0 = std::move(dh);
  out.dc0 = std::move(dc);
  return out;
}

#define VIDCAP_INSTANTIATE_LSTM(T)                                           \
  template LstmStep<T> LstmCellForward<T>(const LstmParams<T>&,              \
                                          std::span<const T>,                \
                                          std::span<const T>,                \
                                          std::span<const T>);               \
  template LstmSequence<T> LstmForward<T>(const LstmParams<T>&,              \
                                          const Matrix<T>&,                  \
                                          std::span<const T>,                \
                                          std::span<const T>);               \
  template LstmInputGrads<T> LstmBackward<T>(                                \
      const LstmParams<T>&, const std::vector<LstmStepCache<T>>&,            \
      const Matrix<T>&, std::span<const T>, std::span<const T>,              \
      LstmParams<T>&, bool);

VIDCAP_INSTANTIATE_LSTM(float)
VIDCAP_INSTANTIATE_LSTM(double)

#undef VIDCAP_INSTANTIATE_LSTM

}  // namespace vidcap::nn
