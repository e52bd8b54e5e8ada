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

#ifndef VIDCAP_CHECKPOINT_H_
#define VIDCAP_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "vidcap/adam.h"
#include "vidcap/seq2seq.h"

namespace vidcap {

inline constexpr uint32_t kCheckpointFormatVersion = 1;

// Layout (all integers little-endian):
//   "SQ2S" | version u32 | frames, feature_dim, latent, max_words, vocab u32
//   then per tensor: name_len u16 | name | rank u8 | dims u32 x rank |
//   binary32 payload
// Tensors follow ModelParams::Tensors() order, optionally followed by the
// Adam mirrors "adam.m.<name>", "adam.v.<name>" and a rank-0 "adam.step".
struct Checkpoint {
  ModelParams<float> params;
  std::optional<nn::AdamState<float>> adam;
};

std::string SerializeCheckpoint(const ModelParams<float>& params,
                                const nn::AdamState<float>* adam = nullptr);
Checkpoint ParseCheckpoint(const std::string& bytes);

void SaveCheckpoint(const std::filesystem::path& path,
                    const ModelParams<float>& params,
                    const nn::AdamState<float>* adam = nullptr);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

}  // namespace vidcap

#endif  // VIDCAP_CHECKPOINT_H_
