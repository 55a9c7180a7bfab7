// Copyright 2026 The tgraphon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TGRAPHON_ERROR_HPP
#define TGRAPHON_ERROR_HPP

#include <stdexcept>

namespace tgraphon {

/// Two objects that must share a block resolution (or time grid) do not.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A model contract (bound, Lipschitz constant, contraction) was violated at runtime.
class SpecViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tgraphon

#endif
