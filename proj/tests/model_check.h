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

#ifndef VIDCAP_TESTS_MODEL_CHECK_H_
#define VIDCAP_TESTS_MODEL_CHECK_H_

#include <cstdint>

#include "vidcap/seq2seq.h"

namespace vidcap::check {

// D=3, latent=4, T_enc=5, T_dec=4, V=7.
ModelConfig ToyConfig();

// Random 64-bit toy instance; worst finite-difference relative error over
// every parameter of the full loss. Odd seeds disable padding masks.
double ModelGradientError(uint64_t seed, double step = 1e-5);

// Random 32-bit toy instance with a random prefix length k; max absolute
// difference between training-forward row k and k+1 chained decode steps.
double DecodeConsistencyError(uint64_t seed);

}  // namespace vidcap::check

#endif  // VIDCAP_TESTS_MODEL_CHECK_H_
