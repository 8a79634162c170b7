// Copyright 2026 The cutlab Authors
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

#ifndef CUTLAB_ERROR_HPP_
#define CUTLAB_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace cutlab {

enum class ErrorKind {
  kNonSquare,
  kSingular,
  kDimensionMismatch,
  kNotEqualityForm,
  kUnboundedRelaxation,
  kTooLarge,
  kEvenN,
  kParseError,
  kDegenerateCut,
  kIntegralCoordinate,
  kSingularAugmentedSystem,
  kBudgetExceeded,
  kInvalidArgument,
};

std::string_view ErrorKindName(ErrorKind kind);

// Every library failure is reported through this one exception type; callers
// dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cutlab

#endif  // CUTLAB_ERROR_HPP_
