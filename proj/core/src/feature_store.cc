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

#include "vidcap/feature_store.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <mutex>

#include "vidcap/error.h"
#include "vidcap/text_util.h"

namespace vidcap {

namespace {

constexpr char kMagic[4] = {'V', 'F', 'M', '1'};

void PutU32(std::string& buf, uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint32_t GetU32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

}  // namespace

std::vector<size_t> DecimationIndices(size_t frame_count, size_t target) {
  if (frame_count < 1) throw ValidationError("frame_count must be >= 1");
  if (target < 1) throw ValidationError("decimation target must be >= 1");
  std::vector<size_t> idx(target, 0);
  if (target == 1) return idx;
  // round(i * num / den) in integer arithmetic; all terms are non-negative so
  // half-away-from-zero equals floor(x + 1/2).
  const uint64_t num = frame_count - 1;
  const uint64_t den = target - 1;
  for (size_t i = 0; i < target; ++i) {
    idx[i] = static_cast<size_t>((2 * i * num + den) / (2 * den));
  }
  return idx;
}

FeatureMatrix DecimateFrames(const FeatureMatrix& frames, size_t target) {
  const std::vector<size_t> idx = DecimationIndices(frames.rows(), target);
  FeatureMatrix out(target, frames.cols());
  for (size_t r = 0; r < target; ++r) {
    std::copy(frames.row(idx[r]).begin(), frames.row(idx[r]).end(),
              out.row(r).begin());
  }
  return out;
}

void WriteFeatureFile(const std::filesystem::path& path,
                      const FeatureMatrix& m) {
  if (m.rows() > UINT32_MAX || m.cols() > UINT32_MAX) {
    throw ValidationError("feature matrix too large for .vfm: " +
                          std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  }
  for (float v : m.values()) {
    if (!std::isfinite(v)) {
      throw ValidationError("feature matrix for '" + path.string() +
                            "' contains a non-finite value");
    }
  }
  std::string buf(kMagic, 4);
  PutU32(buf, static_cast<uint32_t>(m.rows()));
  PutU32(buf, static_cast<uint32_t>(m.cols()));
  buf.reserve(buf.size() + 4 * m.size());
  for (float v : m.values()) PutU32(buf, std::bit_cast<uint32_t>(v));

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write feature file '" + path.string() + "'");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

FeatureMatrix ReadFeatureFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open feature file '" + path.string() + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  const std::string where = " in '" + path.string() + "'";
  if (bytes.size() < 12) throw IoError("truncated header" + where);
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw IoError("bad magic" + where);
  const uint64_t rows = GetU32(bytes.data() + 4);
  const uint64_t cols = GetU32(bytes.data() + 8);
  const uint64_t count = rows * cols;  // cannot overflow: both < 2^32
  if (count > (UINT64_MAX - 12) / 4) {
    throw IoError("dimension overflow (" + std::to_string(rows) + "x" +
                  std::to_string(cols) + ")" + where);
  }
  const uint64_t need = 12 + 4 * count;
  if (bytes.size() < need) {
    throw IoError("truncated payload: expected " + std::to_string(need) +
                  " bytes, found " + std::to_string(bytes.size()) + where);
  }
  if (bytes.size() > need) {
    throw IoError("trailing bytes after payload" + where);
  }
  std::vector<float> values(count);
  for (uint64_t i = 0; i < count; ++i) {
    values[i] = std::bit_cast<float>(GetU32(bytes.data() + 12 + 4 * i));
  }
  return FeatureMatrix(rows, cols, std::move(values));
}

std::filesystem::path FeatureManifest::Resolve(
    const std::string& video_id) const {
  auto it = entries.find(video_id);
  if (it == entries.end()) {
    throw ValidationError("unknown video id '" + video_id +
                          "' (not in feature manifest)");
  }
  return base_dir / it->second;
}

FeatureManifest LoadManifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
  FeatureManifest manifest;
  manifest.base_dir = path.parent_path();
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = Trim(line);
    if (text.empty() || text.front() == '#') continue;
    const size_t tab = text.find('\t');
    if (tab == std::string_view::npos) {
      throw IoError("manifest line " + std::to_string(line_no) +
                    ": expected '<video_id>\\t<path>'");
    }
    std::string id(Trim(text.substr(0, tab)));
    std::string rel(Trim(text.substr(tab + 1)));
    if (id.empty() || rel.empty()) {
      throw IoError("manifest line " + std::to_string(line_no) +
                    ": empty id or path");
    }
    if (!manifest.entries.emplace(id, rel).second) {
      throw IoError("manifest line " + std::to_string(line_no) +
                    ": duplicate video id '" + id + "'");
    }
  }
  return manifest;
}

void WriteManifest(const FeatureManifest& manifest,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write manifest '" + path.string() + "'");
  for (const auto& [id, rel] : manifest.entries) {
    out << id << '\t' << rel.generic_string() << '\n';
  }
}

FeatureStore::FeatureStore(FeatureManifest manifest, Options options)
    : manifest_(std::move(manifest)), options_(options) {}

bool FeatureStore::Contains(const std::string& video_id) const {
  return manifest_.entries.count(video_id) != 0;
}

std::shared_ptr<const FeatureMatrix> FeatureStore::Load(
    const std::string& video_id) const {
  const std::filesystem::path path = manifest_.Resolve(video_id);
  FeatureMatrix m;
  try {
    m = ReadFeatureFile(path);
  } catch (const IoError& e) {
    throw IoError("features for video '" + video_id + "' (" + path.string() +
                  "): " + e.what());
  }
  if (options_.expected_shape) {
    const auto [rows, cols] = *options_.expected_shape;
    if (m.rows() != rows || m.cols() != cols) {
      throw ValidationError(
          "features for video '" + video_id + "' have shape " +
          std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
          ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
    }
  }
  return std::make_shared<const FeatureMatrix>(std::move(m));
}

std::shared_ptr<const FeatureMatrix> FeatureStore::Get(
    const std::string& video_id) const {
  if (!options_.cache) return Load(video_id);
  {
    std::shared_lock lock(mu_);
    auto it = cache_.find(video_id);
    if (it != cache_.end()) return it->second;
  }
  auto loaded = Load(video_id);
  std::unique_lock lock(mu_);
  // A concurrent reader may have inserted first; keep whichever landed.
  auto [it, inserted] = cache_.emplace(video_id, std::move(loaded));
  return it->second;
}

}  // namespace vidcap
