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

// Lexicon-driven clause tagging for conditional instructions. Wraps the
// condition in <CL1>...</CL1> and the consequence in <CL2>...</CL2> so that
// extraction programs can anchor on the tags rather than on punctuation.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tsg {

/// Phrases are stored lowercase, one vector of words per phrase.
struct ClauseLexicon {
  std::vector<std::vector<std::string>> subordinators;
  std::vector<std::vector<std::string>> second_clause_signals;

  static ClauseLexicon builtin();
};

/// Plain-text lexicon with `[subordinators]` and `[second_clause_signals]`
/// sections, one phrase per line; `#` starts a comment. Throws Error(Format).
ClauseLexicon parse_lexicon(const std::string& text);
ClauseLexicon load_lexicon(const std::string& path);
std::string serialize_lexicon(const ClauseLexicon& lex);

struct ClauseSpan {
  std::size_t begin = 0;  // offsets into `original`
  std::size_t end = 0;
  bool operator==(const ClauseSpan&) const = default;
};

struct TaggedSentence {
  std::string text;
  std::string original;
  std::optional<ClauseSpan> cl1;
  std::optional<ClauseSpan> cl2;
  bool has_subordinate = false;  // the sentence opens with a subordinator
};

TaggedSentence tag_clauses(std::string_view sentence,
                           const ClauseLexicon& lex = ClauseLexicon::builtin());

/// Removes the tags inserted by tag_clauses; equals `t.original`.
std::string strip_tags(const TaggedSentence& t);

}  // namespace tsg
