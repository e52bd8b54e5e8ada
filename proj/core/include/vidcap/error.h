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

#ifndef VIDCAP_ERROR_H_
#define VIDCAP_ERROR_H_

#include <stdexcept>
#include <string>

namespace vidcap {

// Base class for every failure raised by the library. Callers that only need
// a message can catch std::runtime_error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent user input (bad flags, shape mismatches against a
// config, unknown ids). The CLI maps this to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Filesystem and format failures.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace vidcap

#endif  // VIDCAP_ERROR_H_
