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

#ifndef VIDCAP_TEXT_UTIL_H_
#define VIDCAP_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace vidcap {

std::vector<std::string> SplitWhitespace(std::string_view text);
std::string Join(const std::vector<std::string>& words, std::string_view sep);
std::string_view Trim(std::string_view text);

// printf("%.6g") formatting used by every CSV writer.
std::string FormatSig6(double value);

}  // namespace vidcap

#endif  // VIDCAP_TEXT_UTIL_H_
