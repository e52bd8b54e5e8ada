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

#include "vidcap/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "vidcap/error.h"
#include "vidcap/rng.h"

namespace vidcap::nn {

double RelativeError(double numeric, double analytic) {
  const double denom =
      std::max({std::abs(numeric), std::abs(analytic), 1e-8});
  return std::abs(numeric - analytic) / denom;
}

GradCheckResult FiniteDifferenceCheck(const std::function<double()>& loss,
                                      std::span<double> params,
                                      std::span<const double> analytic,
                                      const GradCheckOptions& options) {
  if (params.size() != analytic.size()) {
    throw Error("gradient check: parameter and gradient sizes differ");
  }
  std::vector<size_t> coords(params.size());
  std::iota(coords.begin(), coords.end(), size_t{0});
  if (options.max_coords != 0 && coords.size() > options.max_coords) {
    Rng rng(options.seed);
    rng.Shuffle(coords);
    coords.resize(options.max_coords);
    std::sort(coords.begin(), coords.end());
  }

  GradCheckResult result;
  for (size_t idx : coords) {
    const double saved = params[idx];
    params[idx] = saved + options.step;
    const double up = loss();
    params[idx] = saved - options.step;
    const double down = loss();
    params[idx] = saved;
    const double numeric = (up - down) / (2.0 * options.step);
    const double err = RelativeError(numeric, analytic[idx]);
    if (err > result.max_rel_error) {
      result.max_rel_error = err;
      result.worst_index = idx;
    }
    ++result.checked;
  }
  return result;
}

}  // namespace vidcap::nn
