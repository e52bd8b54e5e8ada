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

#ifndef VIDCAP_FEATURE_STORE_H_
#define VIDCAP_FEATURE_STORE_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "vidcap/matrix.h"

namespace vidcap {

inline constexpr size_t kDefaultFrames = 80;
inline constexpr size_t kDefaultFeatureDim = 4096;

// T x D per-video feature matrix, one row per decimated frame.
using FeatureMatrix = nn::Matrix<float>;

// Linearly spaced frame indices: idx_i = round(i (frame_count - 1) /
// (target - 1)), rounding half away from zero. The first index is 0 and the
// last is frame_count - 1; short videos repeat frames.
std::vector<size_t> DecimationIndices(size_t frame_count, size_t target);

// Picks the rows of `frames` named by DecimationIndices.
FeatureMatrix DecimateFrames(const FeatureMatrix& frames, size_t target);

// .vfm layout: "VFM1", rows u32 LE, cols u32 LE, rows*cols binary32 LE,
// row-major.
void WriteFeatureFile(const std::filesystem::path& path, const FeatureMatrix& m);
FeatureMatrix ReadFeatureFile(const std::filesystem::path& path);

struct FeatureManifest {
  std::filesystem::path base_dir;
  std::map<std::string, std::filesystem::path> entries;  // relative paths

  std::filesystem::path Resolve(const std::string& video_id) const;
};

FeatureManifest LoadManifest(const std::filesystem::path& path);
void WriteManifest(const FeatureManifest& manifest,
                   const std::filesystem::path& path);

// Serves feature matrices by video id. In caching mode a matrix is read once
// and kept; lookups are safe from multiple threads.
class FeatureStore {
 public:
  struct Options {
    bool cache = true;
    // When set, every served matrix must have exactly this shape.
    std::optional<std::pair<size_t, size_t>> expected_shape;
  };

  FeatureStore(FeatureManifest manifest, Options options);

  std::shared_ptr<const FeatureMatrix> Get(const std::string& video_id) const;
  bool Contains(const std::string& video_id) const;
  const FeatureManifest& manifest() const { return manifest_; }

 private:
  std::shared_ptr<const FeatureMatrix> Load(const std::string& video_id) const;

  FeatureManifest manifest_;
  Options options_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<std::string, std::shared_ptr<const FeatureMatrix>>
      cache_;
};

}  // namespace vidcap

#endif  // VIDCAP_FEATURE_STORE_H_
