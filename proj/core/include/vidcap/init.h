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

#ifndef VIDCAP_INIT_H_
#define VIDCAP_INIT_H_

#include "vidcap/dense.h"
#include "vidcap/lstm.h"
#include "vidcap/matrix.h"
#include "vidcap/rng.h"

namespace vidcap::nn {

// Uniform in [-limit, limit] with limit = sqrt(6 / (rows + cols)).
template <typename T>
void GlorotUniform(Matrix<T>& m, Rng& rng);

// Matrix with orthonormal columns (rows >= cols): modified Gram-Schmidt QR of
// a Gaussian matrix, with column signs fixed so that diag(R) > 0.
Matrix<double> OrthonormalColumns(size_t rows, size_t cols, Rng& rng);

// Orthogonal init for an arbitrary shape: rows are orthonormal when
// rows <= cols, columns otherwise.
template <typename T>
void Orthogonal(Matrix<T>& m, Rng& rng);

// Glorot input kernel, orthogonal recurrent kernel, zero bias with the forget
// block set to 1.
template <typename T>
void InitLstm(LstmParams<T>& p, Rng& rng);

// Glorot kernel, zero bias.
template <typename T>
void InitDense(DenseParams<T>& p, Rng& rng);

}  // namespace vidcap::nn

#endif  // VIDCAP_INIT_H_
