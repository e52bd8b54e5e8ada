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

#include <cmath>
#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "vidcap/error.h"
#include "vidcap/rng.h"

namespace vidcap {
namespace {

RawDescriptionFile Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseDescriptions(in);
}

DescriptionCorpus CorpusWithKeys(size_t n) {
  DescriptionCorpus c;
  for (size_t i = 0; i < n; ++i) {
    c.entries["v" + std::to_string(i)].push_back(
        {"bos", "a", "b", "c", "d", "eos"});
  }
  return c;
}

TEST(ParseDescriptions, SplitsIdAndCaption) {
  const auto raw = Parse("vid42\ta man plays guitar\n");
  ASSERT_EQ(raw.lines.size(), 1u);
  EXPECT_EQ(raw.lines[0].video_id, "vid42");
  EXPECT_EQ(raw.lines[0].caption, "a man plays guitar");
}

TEST(ParseDescriptions, NormalizesCaseAndPunctuation) {
  const auto raw = Parse("vid42\tA MAN, plays GUITAR!\n");
  ASSERT_EQ(raw.lines.size(), 1u);
  EXPECT_EQ(raw.lines[0].caption, "a man plays guitar");
  EXPECT_EQ(NormalizeCaption("  (Hi):  \"there\";  it's. ok? "),
            "hi there its ok");
}

TEST(ParseDescriptions, EmptyFileYieldsNothing) {
  const auto raw = Parse("");
  EXPECT_TRUE(raw.lines.empty());
  EXPECT_EQ(raw.warnings, 0u);
}

TEST(ParseDescriptions, SkipsCommentsBlankAndMalformedLines) {
  const auto raw = Parse("# header\n\n   \nvid1\nvid2 ,,,!\nvid3 ok then\n");
  ASSERT_EQ(raw.lines.size(), 1u);
  EXPECT_EQ(raw.lines[0].video_id, "vid3");
  EXPECT_EQ(raw.warnings, 2u);
}

TEST(ParseDescriptions, MissingFileIsAnIoErrorNamingThePath) {
  try {
    ParseDescriptions(std::filesystem::path("/nonexistent/desc.txt"));
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/desc.txt"),
              std::string::npos);
  }
}

TEST(BuildCorpus, KeepsFigureThreeSentenceWithMarkers) {
  const auto corpus =
      BuildCorpus(Parse("v1 a man slicing butter into a bowl\n"));
  ASSERT_EQ(corpus.size(), 1u);
  const TokenList want = {"bos", "a",    "man", "slicing", "butter",
                          "into", "a", "bowl", "eos"};
  EXPECT_EQ(corpus.at("v1").front(), want);
}

TEST(BuildCorpus, LengthFilterCountsMarkers) {
  const auto corpus = BuildCorpus(Parse(
      "short hi there\n"
      "four w1 w2 w3 w4\n"                    // 6 tokens: kept
      "eight w1 w2 w3 w4 w5 w6 w7 w8\n"       // 10 tokens: kept
      "nine w1 w2 w3 w4 w5 w6 w7 w8 w9\n"));  // 11 tokens: dropped
  EXPECT_EQ(corpus.kept, 2u);
  EXPECT_EQ(corpus.dropped, 2u);
  EXPECT_TRUE(corpus.entries.count("four"));
  EXPECT_TRUE(corpus.entries.count("eight"));
  EXPECT_FALSE(corpus.entries.count("short"));
  EXPECT_FALSE(corpus.entries.count("nine"));
}

TEST(BuildCorpus, LengthHistogramMatchesDirectCount) {
  Rng rng(7);
  std::string text;
  std::map<size_t, size_t> expected;  // token count -> captions
  for (int i = 0; i < 500; ++i) {
    const size_t words = 1 + rng.UniformIndex(12);
    text += "v" + std::to_string(rng.UniformIndex(40));
    for (size_t w = 0; w < words; ++w) text += " w" + std::to_string(w);
    text += "\n";
    if (words + 2 >= 6 && words + 2 <= 10) ++expected[words + 2];
  }
  const auto corpus = BuildCorpus(Parse(text));
  std::map<size_t, size_t> got;
  for (const auto& [id, caps] : corpus.entries) {
    ASSERT_FALSE(caps.empty());
    for (const auto& c : caps) {
      EXPECT_EQ(c.front(), "bos");
      EXPECT_EQ(c.back(), "eos");
      ++got[c.size()];
    }
  }
  EXPECT_EQ(got, expected);
}

TEST(BuildCorpus, ReserializationIsIdempotent) {
  const auto first = BuildCorpus(Parse(
      "b two words here now\n"
      "a, A MAN slicing butter!\n"
      "a another caption for this video\n"
      "c too short\n"));
  std::stringstream ss;
  WriteCorpus(first, ss);
  const auto second = BuildCorpus(ParseDescriptions(ss));
  EXPECT_EQ(first.entries, second.entries);
}

TEST(SplitSizes, MatchesFullScaleCounts) {
  EXPECT_EQ(ComputeSplitSizes(1970), (SplitSizes{1773, 99, 98}));
  EXPECT_EQ(ComputeSplitSizes(20), (SplitSizes{18, 1, 1}));
}

TEST(SplitSizes, FormulaHoldsWheneverItLeavesATestSplit) {
  for (size_t n = 3; n <= 5000; ++n) {
    const SplitSizes s = ComputeSplitSizes(n);
    ASSERT_EQ(s.train + s.val + s.test, n) << n;
    ASSERT_GE(s.train, 1u);
    ASSERT_GE(s.val, 1u);
    ASSERT_GE(s.test, 1u);
    const size_t train = static_cast<size_t>(std::llround(0.9 * n));
    const size_t val = static_cast<size_t>(std::ceil(0.05 * n - 1e-9));
    ASSERT_EQ(s.val, val) << n;
    if (train + val < n) {
      ASSERT_EQ(s.train, train) << n;
    } else {
      ASSERT_EQ(s.test, 1u) << n;
    }
  }
}

TEST(SplitKeys, TooFewKeysIsAnError) {
  EXPECT_THROW(SplitKeys(CorpusWithKeys(2), 1), ValidationError);
}

TEST(SplitKeys, DeterministicAndPartitions) {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const size_t n = 3 + rng.UniformIndex(400);
    const uint64_t seed = rng.NextU64();
    const auto corpus = CorpusWithKeys(n);
    const SplitAssignment a = SplitKeys(corpus, seed);
    const SplitAssignment b = SplitKeys(corpus, seed);
    EXPECT_EQ(a.train_keys, b.train_keys);
    EXPECT_EQ(a.val_keys, b.val_keys);
    EXPECT_EQ(a.test_keys, b.test_keys);

    std::set<std::string> all;
    for (const auto* part : {&a.train_keys, &a.val_keys, &a.test_keys}) {
      EXPECT_FALSE(part->empty());
      for (const auto& k : *part) EXPECT_TRUE(all.insert(k).second) << k;
    }
    EXPECT_EQ(all.size(), n);
    for (const auto& [k, v] : corpus.entries) EXPECT_TRUE(all.count(k));
  }
}

TEST(SplitKeys, InputOrderDoesNotMatter) {
  const auto a = BuildCorpus(Parse("x w1 w2 w3 w4\ny w1 w2 w3 w4\nz w1 w2 w3 w4\n"
                                   "q w1 w2 w3 w4\n"));
  const auto b = BuildCorpus(Parse("q w1 w2 w3 w4\nz w1 w2 w3 w4\ny w1 w2 w3 w4\n"
                                   "x w1 w2 w3 w4\n"));
  const auto sa = SplitKeys(a, 5);
  const auto sb = SplitKeys(b, 5);
  EXPECT_EQ(sa.train_keys, sb.train_keys);
  EXPECT_EQ(sa.test_keys, sb.test_keys);
}

}  // namespace
}  // namespace vidcap
