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

#include "vidcap/adam.h"

#include <cmath>
#include <string>

#include "vidcap/error.h"

namespace vidcap::nn {

template <typename T>
AdamState<T> MakeAdamState(std::span<const TensorView<T>> params,
                           const AdamConfig& config) {
  AdamState<T> state;
  state.config = config;
  for (const TensorView<T>& p : params) {
    state.m.emplace_back(p.values.size(), T{0});
    state.v.emplace_back(p.values.size(), T{0});
  }
  return state;
}

template <typename T>
void AdamStep(AdamState<T>& state, std::span<const TensorView<T>> params,
              std::span<const TensorView<const T>> grads) {
  if (params.size() != grads.size() || params.size() != state.m.size()) {
    throw Error("adam: parameter/gradient/state tensor counts differ");
  }
  for (size_t k = 0; k < params.size(); ++k) {
    if (params[k].values.size() != grads[k].values.size() ||
        params[k].values.size() != state.m[k].size()) {
      throw Error("adam: shape mismatch for tensor '" + params[k].name + "'");
    }
    for (T g : grads[k].values) {
      if (!std::isfinite(g)) {
        throw Error("adam: non-finite gradient in tensor '" + grads[k].name +
                    "'");
      }
    }
  }

  const AdamConfig& cfg = state.config;
  state.step += 1;
  const double t = static_cast<double>(state.step);
  const T lr_t = static_cast<T>(cfg.lr * std::sqrt(1.0 - std::pow(cfg.beta2, t)) /
                                (1.0 - std::pow(cfg.beta1, t)));
  const T b1 = static_cast<T>(cfg.beta1);
  const T b2 = static_cast<T>(cfg.beta2);
  const T one_minus_b1 = static_cast<T>(1.0 - cfg.beta1);
  const T one_minus_b2 = static_cast<T>(1.0 - cfg.beta2);
  const T eps = static_cast<T>(cfg.epsilon);

  for (size_t k = 0; k < params.size(); ++k) {
    std::span<T> p = params[k].values;
    std::span<const T> g = grads[k].values;
    std::vector<T>& m = state.m[k];
    std::vector<T>& v = state.v[k];
    for (size_t i = 0; i < p.size(); ++i) {
      m[i] = b1 * m[i] + one_minus_b1 * g[i];
      v[i] = b2 * v[i] + one_minus_b2 * g[i] * g[i];
      p[i] -= lr_t * m[i] / (std::sqrt(v[i]) + eps);
    }
  }
}

template AdamState<float> MakeAdamState<float>(std::span<const TensorView<float>>,
                                               const AdamConfig&);
template AdamState<double> MakeAdamState<double>(
    std::span<const TensorView<double>>, const AdamConfig&);
template void AdamStep<float>(AdamState<float>&,
                              std::span<const TensorView<float>>,
                              std::span<const TensorView<const float>>);
template void AdamStep<double>(AdamState<double>&,
                               std::span<const TensorView<double>>,
                               std::span<const TensorView<const double>>);

}  // namespace vidcap::nn
