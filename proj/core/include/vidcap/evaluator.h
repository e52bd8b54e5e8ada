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

#ifndef VIDCAP_EVALUATOR_H_
#define VIDCAP_EVALUATOR_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "vidcap/corpus.h"

namespace vidcap {

// Sentence-level BLEU with n-grams up to 2, uniform weights and no
// smoothing.
struct BleuScore {
  double value = 0.0;
  double brevity_penalty = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
};

// Clipped (multi-reference) unigram and bigram precisions, and
// BP = min(1, exp(1 - r / c)) where r is the reference length closest to the
// candidate length c, shorter on ties. Any zero precision gives 0. Inputs must
// not contain the bos/eos markers. Throws on an empty reference list.
BleuScore Bleu2(const TokenList& candidate,
                const std::vector<TokenList>& references);

// Drops leading bos and trailing eos markers.
TokenList StripMarkers(const TokenList& tokens);

inline constexpr size_t kHistogramBins = 10;

struct EvalRow {
  std::string split;
  std::string video_id;
  double bleu2 = 0.0;
  TokenList prediction;
};

struct SplitSummary {
  std::string split;
  size_t count = 0;
  double mean_bleu2 = 0.0;
  // Equal-width bins over [0, 1]; right-open except the last.
  std::array<size_t, kHistogramBins> histogram{};
};

// One row per key, scored against every corpus description of that video.
std::vector<EvalRow> EvaluateSplit(
    const std::string& split, const std::map<std::string, TokenList>& predictions,
    const DescriptionCorpus& corpus, const std::vector<std::string>& keys);

SplitSummary Summarize(const std::string& split,
                       const std::vector<EvalRow>& rows);

size_t HistogramBin(double score);

void WriteReportCsv(const std::vector<EvalRow>& rows, std::ostream& out);
void WriteSummaryCsv(const std::vector<SplitSummary>& summaries,
                     std::ostream& out);
void WriteHistogramCsv(const std::vector<SplitSummary>& summaries,
                       std::ostream& out);

}  // namespace vidcap

#endif  // VIDCAP_EVALUATOR_H_
