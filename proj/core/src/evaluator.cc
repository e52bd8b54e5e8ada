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

#include "vidcap/evaluator.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>

#include "vidcap/error.h"
#include "vidcap/text_util.h"

namespace vidcap {

namespace {

using NgramCounts = std::map<std::vector<std::string>, size_t>;

NgramCounts CountNgrams(const TokenList& tokens, size_t n) {
  NgramCounts counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i,
                                      tokens.begin() + i + n)];
  }
  return counts;
}

// Returns clipped matches / candidate n-gram count (0 when the candidate has
// no n-grams of this order).
double ModifiedPrecision(const TokenList& candidate,
                         const std::vector<TokenList>& references, size_t n) {
  const NgramCounts cand = CountNgrams(candidate, n);
  size_t total = 0;
  for (const auto& [gram, count] : cand) total += count;
  if (total == 0) return 0.0;

  NgramCounts max_ref;
  for (const TokenList& ref : references) {
    for (const auto& [gram, count] : CountNgrams(ref, n)) {
      size_t& slot = max_ref[gram];
      slot = std::max(slot, count);
    }
  }
  size_t clipped = 0;
  for (const auto& [gram, count] : cand) {
    auto it = max_ref.find(gram);
    if (it != max_ref.end()) clipped += std::min(count, it->second);
  }
  return static_cast<double>(clipped) / static_cast<double>(total);
}

}  // namespace

BleuScore Bleu2(const TokenList& candidate,
                const std::vector<TokenList>& references) {
  if (references.empty()) {
    throw ValidationError("bleu2: reference list is empty");
  }
  BleuScore score;
  const size_t c = candidate.size();
  if (c == 0) return score;

  size_t best_len = references.front().size();
  for (const TokenList& ref : references) {
    const size_t len = ref.size();
    const size_t d = len > c ? len - c : c - len;
    const size_t best_d = best_len > c ? best_len - c : c - best_len;
    if (d < best_d || (d == best_d && len < best_len)) best_len = len;
  }
  score.brevity_penalty =
      c > best_len ? 1.0
                   : std::exp(1.0 - static_cast<double>(best_len) /
                                        static_cast<double>(c));
  score.p1 = ModifiedPrecision(candidate, references, 1);
  score.p2 = ModifiedPrecision(candidate, references, 2);
  if (score.p1 > 0.0 && score.p2 > 0.0) {
    score.value = score.brevity_penalty *
                  std::exp(0.5 * (std::log(score.p1) + std::log(score.p2)));
  }
  return score;
}

TokenList StripMarkers(const TokenList& tokens) {
  auto first = tokens.begin();
  auto last = tokens.end();
  if (first != last && *first == kBos) ++first;
  if (first != last && *(last - 1) == kEos) --last;
  return TokenList(first, last);
}

std::vector<EvalRow> EvaluateSplit(
    const std::string& split, const std::map<std::string, TokenList>& predictions,
    const DescriptionCorpus& corpus, const std::vector<std::string>& keys) {
  std::vector<EvalRow> rows;
  rows.reserve(keys.size());
  for (const std::string& key : keys) {
    auto pred = predictions.find(key);
    if (pred == predictions.end()) {
      throw ValidationError("no prediction for video '" + key + "'");
    }
    std::vector<TokenList> refs;
    for (const TokenList& caption : corpus.at(key)) {
      refs.push_back(StripMarkers(caption));
    }
    rows.push_back({split, key, Bleu2(pred->second, refs).value, pred->second});
  }
  return rows;
}

size_t HistogramBin(double score) {
  if (!(score > 0.0)) return 0;
  const auto bin = static_cast<size_t>(score * kHistogramBins);
  return std::min(bin, kHistogramBins - 1);
}

SplitSummary Summarize(const std::string& split,
                       const std::vector<EvalRow>& rows) {
  SplitSummary s;
  s.split = split;
  double sum = 0.0;
  for (const EvalRow& r : rows) {
    if (r.split != split) continue;
    ++s.count;
    sum += r.bleu2;
    ++s.histogram[HistogramBin(r.bleu2)];
  }
  s.mean_bleu2 = s.count == 0 ? 0.0 : sum / static_cast<double>(s.count);
  return s;
}

namespace {

std::string Quote(const std::string& field) {
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void WriteReportCsv(const std::vector<EvalRow>& rows, std::ostream& out) {
  out << "split,video_id,bleu2,prediction\n";
  for (const EvalRow& r : rows) {
    out << r.split << ',' << r.video_id << ',' << FormatSig6(r.bleu2) << ','
        << Quote(Join(r.prediction, " ")) << '\n';
  }
}

void WriteSummaryCsv(const std::vector<SplitSummary>& summaries,
                     std::ostream& out) {
  out << "split,count,mean_bleu2\n";
  for (const SplitSummary& s : summaries) {
    out << s.split << ',' << s.count << ',' << FormatSig6(s.mean_bleu2) << '\n';
  }
}

void WriteHistogramCsv(const std::vector<SplitSummary>& summaries,
                       std::ostream& out) {
  out << "split,bin_low,bin_high,count\n";
  for (const SplitSummary& s : summaries) {
    for (size_t b = 0; b < kHistogramBins; ++b) {
      const double lo = static_cast<double>(b) / kHistogramBins;
      const double hi = static_cast<double>(b + 1) / kHistogramBins;
      out << s.split << ',' << FormatSig6(lo) << ',' << FormatSig6(hi) << ','
          << s.histogram[b] << '\n';
    }
  }
}

}  // namespace vidcap
