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

#ifndef VIDCAP_TOKENIZER_H_
#define VIDCAP_TOKENIZER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vidcap/corpus.h"
#include "vidcap/matrix.h"

namespace vidcap {

inline constexpr size_t kDefaultVocabCap = 1500;

using TokenIndex = uint32_t;

// Frequency-ranked vocabulary. Indices are 1-based; 0 is the padding index
// and never maps to a word. Immutable after Fit/Load.
class Tokenizer {
 public:
  // Ranks tokens by descending count, ties broken by first occurrence in the
  // stream, and keeps the first `cap` of them.
  static Tokenizer Fit(const std::vector<TokenList>& captions,
                       size_t cap = kDefaultVocabCap);

  static Tokenizer Load(std::istream& in);
  static Tokenizer Load(const std::filesystem::path& path);
  void Save(std::ostream& out) const;
  void Save(const std::filesystem::path& path) const;

  // Out-of-vocabulary tokens are dropped.
  std::vector<TokenIndex> Encode(const TokenList& caption) const;
  // Throws for 0, indices above the cap, or indices with no word assigned.
  TokenList Decode(const std::vector<TokenIndex>& indices) const;

  std::optional<TokenIndex> Lookup(const std::string& word) const;
  // Word for an index, or nullptr when the index has no word.
  const std::string* WordAt(TokenIndex index) const;

  size_t cap() const { return cap_; }
  size_t size() const { return words_.size(); }
  // Count of each vocabulary word in the fitting stream (index - 1 order);
  // empty for tokenizers loaded from disk.
  const std::vector<size_t>& counts() const { return counts_; }

  bool operator==(const Tokenizer& other) const {
    return cap_ == other.cap_ && words_ == other.words_;
  }

 private:
  Tokenizer(size_t cap, std::vector<std::string> words,
            std::vector<size_t> counts);

  size_t cap_ = kDefaultVocabCap;
  std::vector<std::string> words_;  // words_[i] has index i + 1
  std::vector<size_t> counts_;
  std::unordered_map<std::string, TokenIndex> index_;
};

// L_max x V one-hot matrix; row r < length has a single 1 at column
// indices[r] - 1, rows from `length` on are all zero.
struct PaddedOneHot {
  nn::Matrix<float> matrix;
  size_t length = 0;
};

PaddedOneHot PadOneHot(const std::vector<TokenIndex>& indices, size_t vocab,
                       size_t max_len);

inline PaddedOneHot PadOneHot(const Tokenizer& tok,
                              const std::vector<TokenIndex>& indices,
                              size_t max_len) {
  return PadOneHot(indices, tok.cap(), max_len);
}

}  // namespace vidcap

#endif  // VIDCAP_TOKENIZER_H_
