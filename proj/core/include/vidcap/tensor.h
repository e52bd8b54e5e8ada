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

#ifndef VIDCAP_TENSOR_H_
#define VIDCAP_TENSOR_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace vidcap::nn {

// Non-owning view of one named parameter tensor. T may be const-qualified.
template <typename T>
struct TensorView {
  std::string name;
  std::vector<size_t> dims;
  std::span<T> values;
};

}  // namespace vidcap::nn

#endif  // VIDCAP_TENSOR_H_
