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

#ifndef VIDCAP_CORPUS_H_
#define VIDCAP_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vidcap {

inline constexpr std::string_view kBos = "bos";
inline constexpr std::string_view kEos = "eos";

// Inclusive bounds on caption length, counted with the bos/eos markers.
inline constexpr size_t kMinCaptionTokens = 6;
inline constexpr size_t kMaxCaptionTokens = 10;

struct RawDescription {
  std::string video_id;
  std::string caption;  // normalized: lowercase, punctuation stripped
};

struct RawDescriptionFile {
  std::vector<RawDescription> lines;
  size_t warnings = 0;  // malformed lines that were skipped
};

using TokenList = std::vector<std::string>;

// Filtered, bos/eos-wrapped captions grouped by video id. Keys iterate in
// lexicographic order.
struct DescriptionCorpus {
  std::map<std::string, std::vector<TokenList>> entries;
  size_t kept = 0;
  size_t dropped = 0;

  size_t size() const { return entries.size(); }
  const std::vector<TokenList>& at(const std::string& video_id) const;
};

struct SplitAssignment {
  std::vector<std::string> train_keys;
  std::vector<std::string> val_keys;
  std::vector<std::string> test_keys;
  uint64_t seed = 0;
};

struct SplitSizes {
  size_t train = 0;
  size_t val = 0;
  size_t test = 0;
  bool operator==(const SplitSizes&) const = default;
};

// Lowercases ASCII letters, removes , . ! ? " ' ( ) ; : and collapses
// whitespace runs to single spaces.
std::string NormalizeCaption(std::string_view text);

// Parses one "<video_id><ws><caption>" line. Returns false for lines with no
// caption text after normalization.
bool ParseDescriptionLine(std::string_view line, RawDescription& out);

RawDescriptionFile ParseDescriptions(std::istream& in);
RawDescriptionFile ParseDescriptions(const std::filesystem::path& path);

DescriptionCorpus BuildCorpus(const RawDescriptionFile& raw);

// Writes the corpus back in description-file format with the markers
// removed; parsing and rebuilding the output reproduces the corpus.
void WriteCorpus(const DescriptionCorpus& corpus, std::ostream& out);

// 90/5/5 sizes: train = round(0.9 N), val = ceil(0.05 N), test = the rest.
// When that leaves the test split empty (small N) one key moves from train to
// test so that all three splits are non-empty. Requires N >= 3.
SplitSizes ComputeSplitSizes(size_t n);

SplitAssignment SplitKeys(const DescriptionCorpus& corpus, uint64_t seed);

void WriteKeys(const std::vector<std::string>& keys,
               const std::filesystem::path& path);
std::vector<std::string> ReadKeys(const std::filesystem::path& path);

}  // namespace vidcap

#endif  // VIDCAP_CORPUS_H_
