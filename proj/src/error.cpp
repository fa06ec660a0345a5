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

#include "tsg/error.hpp"

namespace tsg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::IndexOutOfVocab: return "IndexOutOfVocab";
    case ErrorKind::NoPositivePairs: return "NoPositivePairs";
    case ErrorKind::NoNegativePairs: return "NoNegativePairs";
    case ErrorKind::SingleClassCorpus: return "SingleClassCorpus";
    case ErrorKind::EmptyClass: return "EmptyClass";
    case ErrorKind::NoPrototypes: return "NoPrototypes";
    case ErrorKind::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorKind::NoOccurrence: return "NoOccurrence";
    case ErrorKind::SynthesisFailure: return "SynthesisFailure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::OverlapDetected: return "OverlapDetected";
    case ErrorKind::ClassTooSmall: return "ClassTooSmall";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Format: return "Format";
  }
  return "Unknown";
}

}  // namespace tsg
