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
#include <limits>

#include "gtest/gtest.h"
#include "oracles.h"
#include "vidcap/error.h"

namespace vidcap::nn {
namespace {

// One tensor holding `values`, with gradient tensor `grad`.
struct Single {
  std::vector<double> values;
  std::vector<double> grad;
  std::vector<TensorView<double>> params;
  std::vector<TensorView<const double>> grads;

  Single(std::vector<double> v, std::string name = "w")
      : values(std::move(v)), grad(values.size(), 0.0) {
    params.push_back({name, {values.size()}, values});
    grads.push_back({name, {grad.size()}, grad});
  }
};

TEST(Adam, FirstStepMovesByLearningRate) {
  AdamConfig cfg;
  Single unit({1.0});
  auto state = MakeAdamState<double>(unit.params, cfg);
  unit.grad[0] = 1.0;
  AdamStep<double>(state, unit.params, unit.grads);
  EXPECT_NEAR(1.0 - unit.values[0], cfg.lr, 1e-5 * cfg.lr);

  // In general |step| = lr * |g| / (|g| + eps / sqrt(1 - beta2)) at t = 1.
  const double eps_hat = cfg.epsilon / std::sqrt(1.0 - cfg.beta2);
  for (double g : {0.5, -3.0, 1e-3, -1e-6, 250.0}) {
    Single s({0.0});
    auto st = MakeAdamState<double>(s.params, cfg);
    s.grad[0] = g;
    AdamStep<double>(st, s.params, s.grads);
    const double want = cfg.lr * std::abs(g) / (std::abs(g) + eps_hat);
    EXPECT_NEAR(std::abs(s.values[0]), want, 1e-12 * cfg.lr) << "g=" << g;
    EXPECT_EQ(std::signbit(s.values[0]), !std::signbit(g));
  }
}

TEST(Adam, ZeroGradientLeavesParametersUnchanged) {
  Single s({0.25, -4.0, 7.5});
  auto state = MakeAdamState<double>(s.params, AdamConfig{});
  for (int t = 0; t < 5; ++t) AdamStep<double>(state, s.params, s.grads);
  EXPECT_EQ(s.values, (std::vector<double>{0.25, -4.0, 7.5}));
  EXPECT_EQ(state.step, 5u);
}

TEST(Adam, ThreeStepTraceMatchesOracle) {
  const std::vector<double> gs = {0.3, -1.2, 0.05};
  for (AdamConfig cfg : {AdamConfig{}, AdamConfig{1e-2, 0.8, 0.99, 1e-6}}) {
    Single s({2.0});
    auto state = MakeAdamState<double>(s.params, cfg);
    const auto want =
        oracle::AdamScalarTrace(2.0, gs, cfg.lr, cfg.beta1, cfg.beta2, cfg.epsilon);
    for (size_t t = 0; t < gs.size(); ++t) {
      s.grad[0] = gs[t];
      AdamStep<double>(state, s.params, s.grads);
      EXPECT_NEAR(s.values[0], want[t], 1e-12) << "step " << t + 1;
    }
  }
}

TEST(Adam, NonFiniteGradientNamesTensorAndLeavesStateAlone) {
  Single s({1.0, 2.0}, "decoder.U");
  auto state = MakeAdamState<double>(s.params, AdamConfig{});
  s.grad = {0.1, std::numeric_limits<double>::quiet_NaN()};
  try {
    AdamStep<double>(state, s.params, s.grads);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("decoder.U"), std::string::npos);
  }
  EXPECT_EQ(state.step, 0u);
  EXPECT_EQ(s.values, (std::vector<double>{1.0, 2.0}));
  s.grad[1] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(AdamStep<double>(state, s.params, s.grads), Error);
}

TEST(Adam, MismatchedTensorsRejected) {
  Single a({1.0});
  Single b({1.0, 2.0});
  auto state = MakeAdamState<double>(a.params, AdamConfig{});
  EXPECT_THROW(AdamStep<double>(state, b.params, b.grads), Error);
  EXPECT_THROW(AdamStep<double>(state, a.params, b.grads), Error);
}

}  // namespace
}  // namespace vidcap::nn
