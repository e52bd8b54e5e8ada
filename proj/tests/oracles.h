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

// Reference implementations used only by tests. They are written as plain
// scalar loops and share no code with the library paths they check.

#ifndef VIDCAP_TESTS_ORACLES_H_
#define VIDCAP_TESTS_ORACLES_H_

#include <cstddef>
#include <string>
#include <vector>

namespace vidcap::oracle {

struct LstmCellOut {
  std::vector<double> h;
  std::vector<double> c;
};

// W is in x 4h row-major, U is h x 4h, gate order i, f, g, o.
LstmCellOut LstmCell(const std::vector<double>& W, const std::vector<double>& U,
                     const std::vector<double>& b, size_t in, size_t hid,
                     const std::vector<double>& x, const std::vector<double>& h,
                     const std::vector<double>& c);

// BLEU-2 by explicit n-gram enumeration.
double Bleu2(const std::vector<std::string>& cand,
             const std::vector<std::vector<std::string>>& refs);

// Adam trajectory of a scalar parameter for the given gradient sequence.
// Flattened encoder-decoder weights, row-major, gate blocks [i, f, g, o].
struct ModelWeights {
  size_t feature_dim = 0;
  size_t latent = 0;
  size_t vocab = 0;
  std::vector<double> enc_W, enc_U, enc_b;
  std::vector<double> dec_W, dec_U, dec_b;
  std::vector<double> head_W, head_b;
};

using Rows = std::vector<std::vector<double>>;

// Teacher-forced mean cross-entropy of the whole model, evaluated from
// scratch in long double. With `mask`, all-zero target rows are not counted.
long double ModelLoss(const ModelWeights& w, const Rows& features,
                      const Rows& input, const Rows& target, bool mask);

std::vector<double> AdamScalarTrace(double p0, const std::vector<double>& grads,
                                    double lr, double b1, double b2,
                                    double eps);

}  // namespace vidcap::oracle

#endif  // VIDCAP_TESTS_ORACLES_H_
