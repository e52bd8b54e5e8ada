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

#include "vidcap/tokenizer.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>

#include "vidcap/error.h"
#include "vidcap/text_util.h"

namespace vidcap {

Tokenizer::Tokenizer(size_t cap, std::vector<std::string> words,
                     std::vector<size_t> counts)
    : cap_(cap), words_(std::move(words)), counts_(std::move(counts)) {
  for (size_t i = 0; i < words_.size(); ++i) {
    index_.emplace(words_[i], static_cast<TokenIndex>(i + 1));
  }
}

Tokenizer Tokenizer::Fit(const std::vector<TokenList>& captions, size_t cap) {
  if (cap == 0) throw ValidationError("vocabulary cap must be positive");
  std::vector<std::string> order;
  std::vector<size_t> counts;
  std::unordered_map<std::string, size_t> slot;
  for (const TokenList& caption : captions) {
    for (const std::string& tok : caption) {
      auto [it, inserted] = slot.emplace(tok, order.size());
      if (inserted) {
        order.push_back(tok);
        counts.push_back(0);
      }
      ++counts[it->second];
    }
  }
  if (order.empty()) throw ValidationError("cannot fit tokenizer: no tokens");

  std::vector<size_t> rank(order.size());
  std::iota(rank.begin(), rank.end(), size_t{0});
  // Stable sort keeps first-occurrence order among equal counts.
  std::stable_sort(rank.begin(), rank.end(), [&](size_t a, size_t b) {
    return counts[a] > counts[b];
  });
  rank.resize(std::min(rank.size(), cap));

  std::vector<std::string> words;
  std::vector<size_t> kept_counts;
  for (size_t r : rank) {
    words.push_back(order[r]);
    kept_counts.push_back(counts[r]);
  }
  return Tokenizer(cap, std::move(words), std::move(kept_counts));
}

Tokenizer Tokenizer::Load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("V=", 0) != 0) {
    throw IoError("tokenizer file: missing 'V=<cap>' header");
  }
  size_t cap = 0;
  try {
    cap = std::stoul(line.substr(2));
  } catch (const std::exception&) {
    throw IoError("tokenizer file: bad header '" + line + "'");
  }
  std::vector<std::string> words;
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw IoError("tokenizer file: malformed line '" + line + "'");
    }
    size_t index = 0;
    try {
      index = std::stoul(line.substr(0, tab));
    } catch (const std::exception&) {
      throw IoError("tokenizer file: bad index in '" + line + "'");
    }
    if (index != words.size() + 1) {
      throw IoError("tokenizer file: indices must be dense and ascending, got " +
                    std::to_string(index) + " after " +
                    std::to_string(words.size()));
    }
    words.push_back(line.substr(tab + 1));
  }
  if (words.size() > cap) {
    throw IoError("tokenizer file: " + std::to_string(words.size()) +
                  " words exceed cap " + std::to_string(cap));
  }
  return Tokenizer(cap, std::move(words), {});
}

Tokenizer Tokenizer::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open tokenizer file '" + path.string() + "'");
  return Load(in);
}

void Tokenizer::Save(std::ostream& out) const {
  out << "V=" << cap_ << '\n';
  for (size_t i = 0; i < words_.size(); ++i) {
    out << (i + 1) << '\t' << words_[i] << '\n';
  }
}

void Tokenizer::Save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write tokenizer file '" + path.string() + "'");
  Save(out);
}

std::vector<TokenIndex> Tokenizer::Encode(const TokenList& caption) const {
  std::vector<TokenIndex> out;
  out.reserve(caption.size());
  for (const std::string& tok : caption) {
    auto it = index_.find(tok);
    if (it != index_.end()) out.push_back(it->second);
  }
  return out;
}

TokenList Tokenizer::Decode(const std::vector<TokenIndex>& indices) const {
  TokenList out;
  out.reserve(indices.size());
  for (TokenIndex idx : indices) {
    const std::string* word = WordAt(idx);
    if (word == nullptr) {
      throw ValidationError("token index " + std::to_string(idx) +
                            " is outside the vocabulary [1, " +
                            std::to_string(words_.size()) + "]");
    }
    out.push_back(*word);
  }
  return out;
}

std::optional<TokenIndex> Tokenizer::Lookup(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string* Tokenizer::WordAt(TokenIndex index) const {
  if (index == 0 || index > words_.size()) return nullptr;
  return &words_[index - 1];
}

PaddedOneHot PadOneHot(const std::vector<TokenIndex>& indices, size_t vocab,
                       size_t max_len) {
  if (indices.size() > max_len) {
    throw ValidationError("sequence of length " +
                          std::to_string(indices.size()) +
                          " exceeds padded length " + std::to_string(max_len));
  }
  PaddedOneHot out{nn::Matrix<float>(max_len, vocab), indices.size()};
  for (size_t r = 0; r < indices.size(); ++r) {
    const TokenIndex idx = indices[r];
    if (idx == 0 || idx > vocab) {
      throw ValidationError("token index " + std::to_string(idx) +
                            " is outside [1, " + std::to_string(vocab) + "]");
    }
    out.matrix(r, idx - 1) = 1.0f;
  }
  return out;
}

}  // namespace vidcap
