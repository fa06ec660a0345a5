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

#include "tsg/clause_tagger.hpp"

#include <algorithm>

#include "tsg/error.hpp"
#include "tsg/ingest.hpp"
#include "tsg/io.hpp"

namespace tsg {

namespace {

constexpr std::string_view kOpen1 = "<CL1>";
constexpr std::string_view kClose1 = "</CL1>";
constexpr std::string_view kOpen2 = "<CL2>";
constexpr std::string_view kClose2 = "</CL2>";

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '\'';
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = lower(c);
  return out;
}

struct Word {
  std::size_t begin;
  std::size_t end;
  std::string lower;
};

std::vector<Word> words_of(std::string_view s) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_word_char(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && is_word_char(s[j])) ++j;
    out.push_back({i, j, lowercase(s.substr(i, j - i))});
    i = j;
  }
  return out;
}

std::vector<std::string> phrase_words(std::string_view line) {
  std::vector<std::string> out;
  for (const auto& w : words_of(line)) out.push_back(w.lower);
  return out;
}

// Length in words of the longest phrase matching at word w, 0 if none.
std::size_t match_phrase(const std::vector<Word>& words, std::size_t w,
                         const std::vector<std::vector<std::string>>& phrases) {
  std::size_t best = 0;
  for (const auto& p : phrases) {
    if (p.empty() || p.size() <= best || w + p.size() > words.size()) continue;
    bool ok = true;
    for (std::size_t k = 0; k < p.size() && ok; ++k) ok = words[w + k].lower == p[k];
    if (ok) best = p.size();
  }
  return best;
}

std::size_t skip_space(std::string_view s, std::size_t i) {
  while (i < s.size() && is_space(s[i])) ++i;
  return i;
}

// End of [begin, end) after dropping trailing whitespace and, when
// `punct` is set, sentence-final punctuation.
std::size_t trim_back(std::string_view s, std::size_t begin, std::size_t end, bool punct) {
  while (end > begin) {
    const char c = s[end - 1];
    if (is_space(c) || (punct && (c == '.' || c == '!' || c == '?'))) {
      --end;
    } else {
      break;
    }
  }
  return end;
}

// Word index of the first word starting at or after offset i.
std::size_t word_at_or_after(const std::vector<Word>& words, std::size_t i) {
  std::size_t w = 0;
  while (w < words.size() && words[w].begin < i) ++w;
  return w;
}

std::string render(std::string_view s, const std::optional<ClauseSpan>& cl1,
                   const std::optional<ClauseSpan>& cl2) {
  std::string out;
  std::size_t at = 0;
  auto wrap = [&](const ClauseSpan& span, std::string_view open, std::string_view close) {
    out.append(s.substr(at, span.begin - at));
    out.append(open);
    out.append(s.substr(span.begin, span.end - span.begin));
    out.append(close);
    at = span.end;
  };
  if (cl1) wrap(*cl1, kOpen1, kClose1);
  if (cl2) wrap(*cl2, kOpen2, kClose2);
  out.append(s.substr(at));
  return out;
}

}  // namespace

ClauseLexicon ClauseLexicon::builtin() {
  ClauseLexicon lex;
  for (const char* p : {"if", "when", "once", "in case", "unless"}) {
    lex.subordinators.push_back(phrase_words(p));
  }
  for (const char* p : {"then", "you", "we", "please", "contact", "run", "check", "create",
                        "delete", "use", "escalate", "restart", "close", "notify", "retry",
                        "mitigate", "can", "should", "must", "it is", "it's"}) {
    lex.second_clause_signals.push_back(phrase_words(p));
  }
  return lex;
}

ClauseLexicon parse_lexicon(const std::string& text) {
  ClauseLexicon lex;
  std::vector<std::vector<std::string>>* section = nullptr;
  std::size_t line_no = 0;
  for (const auto& raw : split_lines(text)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line == "[subordinators]") {
      section = &lex.subordinators;
    } else if (line == "[second_clause_signals]") {
      section = &lex.second_clause_signals;
    } else if (line.front() == '[') {
      throw Error(ErrorKind::Format,
                  "lexicon line " + std::to_string(line_no) + ": unknown section");
    } else if (!section) {
      throw Error(ErrorKind::Format,
                  "lexicon line " + std::to_string(line_no) + ": phrase outside a section");
    } else {
      auto words = phrase_words(line);
      if (!words.empty()) section->push_back(std::move(words));
    }
  }
  return lex;
}

ClauseLexicon load_lexicon(const std::string& path) { return parse_lexicon(read_file(path)); }

std::string serialize_lexicon(const ClauseLexicon& lex) {
  auto join = [](const std::vector<std::string>& words) {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i) out += ' ';
      out += words[i];
    }
    return out;
  };
  std::string out = "[subordinators]\n";
  for (const auto& p : lex.subordinators) out += join(p) + "\n";
  out += "\n[second_clause_signals]\n";
  for (const auto& p : lex.second_clause_signals) out += join(p) + "\n";
  return out;
}

TaggedSentence tag_clauses(std::string_view s, const ClauseLexicon& lex) {
  TaggedSentence t;
  t.original = std::string(s);
  const auto words = words_of(s);

  const std::size_t lead = skip_space(s, 0);
  const std::size_t sub_len =
      (!words.empty() && words[0].begin == lead) ? match_phrase(words, 0, lex.subordinators) : 0;

  if (sub_len == 0 || sub_len >= words.size()) {
    const std::size_t end = trim_back(s, lead, s.size(), false);
    if (end > lead) t.cl1 = ClauseSpan{lead, end};
    t.text = render(s, t.cl1, t.cl2);
    return t;
  }

  t.has_subordinate = true;
  const std::size_t w0 = sub_len;
  const std::size_t cl1_begin = words[w0].begin;

  const std::size_t comma = s.find(',', cl1_begin);
  std::optional<std::size_t> signal_word;
  std::size_t signal_len = 0;
  for (std::size_t w = w0 + 1; w < words.size(); ++w) {
    if (comma != std::string_view::npos && words[w].begin > comma) break;
    if (std::size_t n = match_phrase(words, w, lex.second_clause_signals)) {
      signal_word = w;
      signal_len = n;
      break;
    }
  }

  std::size_t cl1_end = s.size();
  std::optional<std::size_t> cl2_begin;
  auto after_then = [&](std::size_t i) {
    i = skip_space(s, i);
    const std::size_t w = word_at_or_after(words, i);
    if (w < words.size() && words[w].begin == i && words[w].lower == "then") {
      i = skip_space(s, words[w].end);
      if (i < s.size() && s[i] == ',') i = skip_space(s, i + 1);
    }
    return i;
  };

  if (signal_word) {
    const Word& sw = words[*signal_word];
    cl1_end = sw.begin;
    if (signal_len == 1 && sw.lower == "then") {
      cl2_begin = after_then(sw.begin);
    } else {
      cl2_begin = sw.begin;
    }
  } else if (comma != std::string_view::npos) {
    cl1_end = comma;
    cl2_begin = after_then(comma + 1);
  }

  cl1_end = trim_back(s, cl1_begin, cl1_end, cl2_begin ? false : true);
  if (cl1_end > cl1_begin) t.cl1 = ClauseSpan{cl1_begin, cl1_end};
  if (cl2_begin) {
    const std::size_t end = trim_back(s, *cl2_begin, s.size(), true);
    if (end > *cl2_begin) t.cl2 = ClauseSpan{*cl2_begin, end};
  }
  t.text = render(s, t.cl1, t.cl2);
  return t;
}

std::string strip_tags(const TaggedSentence& t) {
  std::string out = t.text;
  // Erase right to left so earlier offsets stay valid.
  std::vector<std::pair<std::size_t, std::size_t>> cuts;
  std::size_t shift = 0;
  auto note = [&](const ClauseSpan& span, std::string_view open, std::string_view close) {
    cuts.emplace_back(span.begin + shift, open.size());
    shift += open.size();
    cuts.emplace_back(span.end + shift, close.size());
    shift += close.size();
  };
  if (t.cl1) note(*t.cl1, kOpen1, kClose1);
  if (t.cl2) note(*t.cl2, kOpen2, kClose2);
  for (auto it = cuts.rbegin(); it != cuts.rend(); ++it) out.erase(it->first, it->second);
  return out;
}

}  // namespace tsg
