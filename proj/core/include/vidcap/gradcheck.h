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

#ifndef VIDCAP_GRADCHECK_H_
#define VIDCAP_GRADCHECK_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

namespace vidcap::nn {

struct GradCheckOptions {
  double step = 1e-5;
  // Coordinates checked per call; 0 checks every coordinate. Larger tensors
  // are sampled with `seed`.
  size_t max_coords = 0;
  uint64_t seed = 0;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  size_t worst_index = 0;
  size_t checked = 0;
};

// Relative error |fd - an| / max(|fd|, |an|, 1e-8).
double RelativeError(double numeric, double analytic);

// Central differences of `loss` with respect to `params`, which are perturbed
// in place and restored. `analytic` holds the gradient to verify.
GradCheckResult FiniteDifferenceCheck(const std::function<double()>& loss,
                                      std::span<double> params,
                                      std::span<const double> analytic,
                                      const GradCheckOptions& options = {});

}  // namespace vidcap::nn

#endif  // VIDCAP_GRADCHECK_H_
