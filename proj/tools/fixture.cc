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

#include <cstdio>
#include <fstream>

#include "commands.h"
#include "vidcap/error.h"
#include "vidcap/feature_store.h"
#include "vidcap/rng.h"

namespace vidcap::cli {

namespace {

constexpr const char* kSubjects[] = {"a man", "a woman", "a boy", "a girl",
                                     "the dog", "a cat", "the chef", "a player"};
constexpr const char* kVerbs[] = {"is slicing", "is playing", "is riding",
                                  "is cutting", "is eating", "is throwing",
                                  "is washing", "is holding"};
constexpr const char* kObjects[] = {"a guitar", "the bread", "a horse",
                                    "an onion", "the ball", "some butter",
                                    "a bowl", "the car"};
constexpr const char* kPlaces[] = {"outside", "on stage", "in water",
                                   "at home", "quickly", "slowly"};

template <size_t N>
const char* Pick(const char* const (&pool)[N], Rng& rng) {
  return pool[rng.UniformIndex(N)];
}

// 4 to 7 words: subject (2) + verb (2) + object (2) + optional adverbial.
std::string MakeCaption(Rng& rng) {
  std::string caption = std::string(Pick(kSubjects, rng)) + " " +
                        Pick(kVerbs, rng) + " " + Pick(kObjects, rng);
  if (rng.UniformIndex(2) == 1) caption += std::string(" ") + Pick(kPlaces, rng);
  return caption;
}

}  // namespace

void RunMakeFixture(const FixtureOptions& opts) {
  if (opts.videos < 3) throw ValidationError("fixture needs at least 3 videos");
  if (opts.captions_per_video < 1 || opts.variants < 1 || opts.frames < 1 ||
      opts.feature_dim < 1) {
    throw ValidationError("fixture sizes must be positive");
  }
  fs::create_directories(opts.out_dir / "feat");
  FeatureManifest manifest;
  manifest.base_dir = opts.out_dir;
  std::ofstream desc(opts.out_dir / "descriptions.txt", std::ios::binary);
  if (!desc) throw IoError("cannot write fixture descriptions");
  desc << "# synthetic fixture: " << opts.videos << " videos, seed "
       << opts.seed << '\n';

  for (size_t v = 0; v < opts.videos; ++v) {
    char id[32];
    std::snprintf(id, sizeof(id), "vid%03zu", v);
    Rng rng(DeriveSeed(opts.seed, v));

    // Raw clip of varying length around a per-video prototype, then decimated
    // to the fixed temporal size.
    const size_t raw_frames =
        opts.frames / 2 + 1 + rng.UniformIndex(3 * opts.frames);
    std::vector<double> proto(opts.feature_dim);
    for (double& p : proto) p = rng.Gaussian();
    FeatureMatrix raw(raw_frames, opts.feature_dim);
    for (size_t t = 0; t < raw_frames; ++t) {
      const double phase = static_cast<double>(t) / static_cast<double>(raw_frames);
      for (size_t d = 0; d < opts.feature_dim; ++d) {
        raw(t, d) = static_cast<float>(proto[d] * (1.0 - 0.5 * phase) +
                                       0.1 * rng.Gaussian());
      }
    }
    const fs::path rel = fs::path("feat") / (std::string(id) + ".vfm");
    WriteFeatureFile(opts.out_dir / rel, DecimateFrames(raw, opts.frames));
    manifest.entries.emplace(id, rel);

    std::vector<std::string> variants;
    for (size_t k = 0; k < opts.variants; ++k) variants.push_back(MakeCaption(rng));
    for (size_t k = 0; k < opts.captions_per_video; ++k) {
      desc << id << '\t' << variants[k % variants.size()] << '\n';
    }
  }
  WriteManifest(manifest, opts.out_dir / "manifest.tsv");
}

}  // namespace vidcap::cli
