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

#include "vidcap/corpus.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "vidcap/error.h"
#include "vidcap/rng.h"
#include "vidcap/text_util.h"

namespace vidcap {

const std::vector<TokenList>& DescriptionCorpus::at(
    const std::string& video_id) const {
  auto it = entries.find(video_id);
  if (it == entries.end()) {
    throw ValidationError("no descriptions for video '" + video_id + "'");
  }
  return it->second;
}

std::string NormalizeCaption(std::string_view text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case ',': case '.': case '!': case '?': case '"':
      case '\'': case '(': case ')': case ';': case ':':
        continue;
      default:
        break;
    }
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    cleaned.push_back(c);
  }
  return Join(SplitWhitespace(cleaned), " ");
}

bool ParseDescriptionLine(std::string_view line, RawDescription& out) {
  line = Trim(line);
  size_t id_end = 0;
  while (id_end < line.size() && line[id_end] != ' ' && line[id_end] != '\t' &&
         line[id_end] != '\r' && line[id_end] != '\v' && line[id_end] != '\f') {
    ++id_end;
  }
  std::string caption = NormalizeCaption(line.substr(id_end));
  if (id_end == 0 || caption.empty()) return false;
  out.video_id = std::string(line.substr(0, id_end));
  out.caption = std::move(caption);
  return true;
}

RawDescriptionFile ParseDescriptions(std::istream& in) {
  RawDescriptionFile raw;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    RawDescription desc;
    if (ParseDescriptionLine(trimmed, desc)) {
      raw.lines.push_back(std::move(desc));
    } else {
      ++raw.warnings;
    }
  }
  return raw;
}

RawDescriptionFile ParseDescriptions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open description file '" + path.string() + "'");
  }
  RawDescriptionFile raw = ParseDescriptions(in);
  if (in.bad()) {
    throw IoError("read failure on description file '" + path.string() + "'");
  }
  return raw;
}

DescriptionCorpus BuildCorpus(const RawDescriptionFile& raw) {
  DescriptionCorpus corpus;
  for (const RawDescription& desc : raw.lines) {
    TokenList tokens;
    tokens.emplace_back(kBos);
    for (std::string& w : SplitWhitespace(desc.caption)) {
      tokens.push_back(std::move(w));
    }
    tokens.emplace_back(kEos);
    if (tokens.size() < kMinCaptionTokens || tokens.size() > kMaxCaptionTokens) {
      ++corpus.dropped;
      continue;
    }
    corpus.entries[desc.video_id].push_back(std::move(tokens));
    ++corpus.kept;
  }
  return corpus;
}

void WriteCorpus(const DescriptionCorpus& corpus, std::ostream& out) {
  for (const auto& [id, captions] : corpus.entries) {
    for (const TokenList& tokens : captions) {
      out << id << '\t';
      for (size_t i = 1; i + 1 < tokens.size(); ++i) {
        if (i > 1) out << ' ';
        out << tokens[i];
      }
      out << '\n';
    }
  }
}

SplitSizes ComputeSplitSizes(size_t n) {
  if (n < 3) {
    throw ValidationError("need at least 3 videos to form train/val/test "
                          "splits, got " + std::to_string(n));
  }
  SplitSizes s;
  s.train = (9 * n + 5) / 10;  // round half away from zero of 0.9 n
  s.val = (n + 19) / 20;       // ceil(0.05 n)
  if (s.train + s.val >= n) s.train = n - s.val - 1;
  s.test = n - s.train - s.val;
  return s;
}

SplitAssignment SplitKeys(const DescriptionCorpus& corpus, uint64_t seed) {
  std::vector<std::string> keys;
  keys.reserve(corpus.entries.size());
  for (const auto& entry : corpus.entries) keys.push_back(entry.first);
  // std::map already yields sorted keys.
  const SplitSizes sizes = ComputeSplitSizes(keys.size());
  Rng rng(seed);
  rng.Shuffle(keys);

  SplitAssignment split;
  split.seed = seed;
  auto first = keys.begin();
  split.train_keys.assign(first, first + sizes.train);
  first += sizes.train;
  split.val_keys.assign(first, first + sizes.val);
  first += sizes.val;
  split.test_keys.assign(first, keys.end());
  return split;
}

void WriteKeys(const std::vector<std::string>& keys,
               const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  for (const std::string& k : keys) out << k << '\n';
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

std::vector<std::string> ReadKeys(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open key file '" + path.string() + "'");
  std::vector<std::string> keys;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view k = Trim(line);
    if (!k.empty()) keys.emplace_back(k);
  }
  return keys;
}

}  // namespace vidcap
