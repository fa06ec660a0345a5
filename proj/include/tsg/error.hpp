// Copyright 2026 The tsgauto Authors.
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsg {

enum class ErrorKind {
  EmptyCorpus,
  IndexOutOfVocab,
  NoPositivePairs,
  NoNegativePairs,
  SingleClassCorpus,
  EmptyClass,
  NoPrototypes,
  EmptyTrainingSet,
  NoOccurrence,
  SynthesisFailure,
  ParseError,
  OverlapDetected,
  ClassTooSmall,
  InvalidArgument,
  Io,
  Format,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every hard failure raised by the library. Recoverable
/// conditions (unbalanced braces, iteration limits, failed extractions) are
/// reported as data instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Non-fatal condition attached to a result.
struct Warning {
  std::string code;
  std::string message;
  std::size_t line = 0;  // 0 when not tied to a source line

  bool operator==(const Warning&) const = default;
};

}  // namespace tsg
