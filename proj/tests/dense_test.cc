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

#include "vidcap/dense.h"

#include <cmath>
#include <limits>

#include "gtest/gtest.h"
#include "test_util.h"
#include "vidcap/error.h"
#include "vidcap/gradcheck.h"

namespace vidcap::nn {
namespace {

using vidcap::testing::RandomMatrix;
using vidcap::testing::RandomVector;

TEST(DenseSoftmax, ZeroParamsGiveUniformRows) {
  const auto p = DenseParams<double>::Zeros(3, 5);
  Rng rng(1);
  const auto P = DenseSoftmaxForward(p, RandomMatrix<double>(4, 3, rng));
  for (double v : P.values()) EXPECT_DOUBLE_EQ(v, 0.2);
}

TEST(DenseSoftmax, ClosedFormTwoClasses) {
  auto p = DenseParams<double>::Zeros(1, 2);
  p.b = {0.0, std::log(3.0)};
  const auto P = DenseSoftmaxForward(p, Matrix<double>(1, 1));
  EXPECT_NEAR(P(0, 0), 0.25, 1e-15);
  EXPECT_NEAR(P(0, 1), 0.75, 1e-15);
}

template <typename T>
void ExpectStableRows(uint64_t seed) {
  Rng rng(seed);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<T> logits = RandomVector<T>(1 + rng.UniformIndex(40), rng, 1e4);
    if (trial % 3 == 0) logits[0] = T(1e4);
    SoftmaxInPlace<T>(logits);
    double sum = 0.0;
    for (T v : logits) {
      ASSERT_TRUE(std::isfinite(v));
      ASSERT_GE(v, T{0});
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-6);
  }
}

TEST(DenseSoftmax, RowsSumToOneUnderExtremeLogits) {
  ExpectStableRows<float>(2);
  ExpectStableRows<double>(3);
}

TEST(DenseSoftmax, DimensionMismatch) {
  const auto p = DenseParams<double>::Zeros(3, 5);
  EXPECT_THROW(DenseSoftmaxForward(p, Matrix<double>(2, 4)), Error);
}

TEST(CrossEntropy, ExactTargetHasZeroLoss) {
  Matrix<double> P(1, 3), Y(1, 3);
  P(0, 1) = 1.0;
  Y(0, 1) = 1.0;
  const auto r = CrossEntropy(P, Y, true);
  EXPECT_EQ(r.loss, 0.0);
}

TEST(CrossEntropy, UniformOverFourClasses) {
  Matrix<double> P(2, 4, 0.25), Y(2, 4);
  Y(0, 2) = 1.0;
  Y(1, 0) = 1.0;
  const auto r = CrossEntropy(P, Y, true);
  EXPECT_NEAR(r.loss, std::log(4.0), 1e-15);
  EXPECT_NEAR(r.loss, 1.38629, 1e-5);
}

TEST(CrossEntropy, UnnormalizedRowsRejected) {
  Matrix<double> P(1, 2, 0.6), Y(1, 2);
  Y(0, 0) = 1.0;
  EXPECT_THROW(CrossEntropy(P, Y, true), Error);
  EXPECT_THROW(CrossEntropy(Matrix<double>(1, 2, 0.5), Matrix<double>(2, 2), true),
               Error);
}

TEST(CrossEntropy, MaskedRowsContributeNothing) {
  Rng rng(4);
  Matrix<double> logits = RandomMatrix<double>(3, 5, rng, 2.0);
  Matrix<double> P = logits;
  for (size_t t = 0; t < 3; ++t) SoftmaxInPlace<double>(P.row(t));
  Matrix<double> Y(3, 5);
  Y(0, 1) = 1.0;  // rows 1 and 2 are padding
  const auto masked = CrossEntropy(P, Y, true);
  EXPECT_EQ(masked.counted_rows, 1u);
  EXPECT_NEAR(masked.loss, -std::log(P(0, 1)), 1e-15);
  for (size_t t = 1; t < 3; ++t) {
    for (double v : masked.dlogits.row(t)) EXPECT_EQ(v, 0.0);
  }
  // Unmasked: same total, diluted over three rows; padding rows still have
  // zero gradient because their target mass is zero.
  const auto unmasked = CrossEntropy(P, Y, false);
  EXPECT_EQ(unmasked.counted_rows, 3u);
  EXPECT_NEAR(unmasked.loss, masked.loss / 3.0, 1e-15);
  for (double v : unmasked.dlogits.row(2)) EXPECT_EQ(v, 0.0);
}

// Loss as a function of logits through softmax then cross-entropy.
double SoftmaxCrossEntropy(const Matrix<double>& logits, const Matrix<double>& Y,
                           bool mask) {
  Matrix<double> P = logits;
  for (size_t t = 0; t < P.rows(); ++t) SoftmaxInPlace<double>(P.row(t));
  return CrossEntropy(P, Y, mask).loss;
}

TEST(CrossEntropy, LogitGradientMatchesFiniteDifferences) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t rows = 1 + rng.UniformIndex(5);
    const size_t cols = 2 + rng.UniformIndex(6);
    Matrix<double> logits = RandomMatrix<double>(rows, cols, rng, 2.0);
    Matrix<double> Y(rows, cols);
    for (size_t t = 0; t < rows; ++t) {
      if (rng.UniformIndex(4) != 0) Y(t, rng.UniformIndex(cols)) = 1.0;
    }
    const bool mask = trial % 2 == 0;
    Matrix<double> P = logits;
    for (size_t t = 0; t < rows; ++t) SoftmaxInPlace<double>(P.row(t));
    const auto r = CrossEntropy(P, Y, mask);
    const auto check = FiniteDifferenceCheck(
        [&] { return SoftmaxCrossEntropy(logits, Y, mask); }, logits.values(),
        r.dlogits.values());
    EXPECT_LT(check.max_rel_error, 1e-6);
  }
}

TEST(DenseBackward, MatchesFiniteDifferences) {
  Rng rng(6);
  DenseParams<double> p{RandomMatrix<double>(4, 6, rng), RandomVector<double>(6, rng)};
  Matrix<double> H = RandomMatrix<double>(3, 4, rng);
  Matrix<double> Y(3, 6);
  Y(0, 2) = Y(1, 5) = Y(2, 0) = 1.0;
  auto loss = [&] { return CrossEntropy(DenseSoftmaxForward(p, H), Y, true).loss; };
  const auto r = CrossEntropy(DenseSoftmaxForward(p, H), Y, true);
  auto g = DenseParams<double>::Zeros(4, 6);
  Matrix<double> dH = DenseBackward(p, H, r.dlogits, g);
  EXPECT_LT(FiniteDifferenceCheck(loss, p.W.values(), g.W.values()).max_rel_error, 1e-6);
  EXPECT_LT(FiniteDifferenceCheck(loss, p.b, g.b).max_rel_error, 1e-6);
  EXPECT_LT(FiniteDifferenceCheck(loss, H.values(), dH.values()).max_rel_error, 1e-6);
}

TEST(DenseParams, CountFormula) {
  EXPECT_EQ(DenseParamCount(512, 1500), 769500u);
  EXPECT_EQ(DenseParams<float>::Zeros(5, 7).ParamCount(), DenseParamCount(5, 7));
}

}  // namespace
}  // namespace vidcap::nn
