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

#include "tsg/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

namespace tsg {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_alpha(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

// Bytes >= 0x80 belong to multi-byte UTF-8 sequences and are kept inside
// words.
bool is_word(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || u >= 0x80;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (is_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_table_row(std::string_view line) {
  auto t = trim(line);
  return t.size() >= 2 && t.front() == '|' && t.back() == '|' &&
         std::count(t.begin(), t.end(), '|') >= 2;
}

const std::regex& image_pattern() {
  static const std::regex re(R"(!\[[^\]]*\]\([^)]*\))");
  return re;
}

// Only known HTML element names count as markup; placeholders such as
// "<your tenant id>" and clause anchors survive.
const std::regex& html_pattern() {
  static const std::regex re(
      R"(<\/?(a|abbr|b|blockquote|br|caption|center|code|dd|del|details|div|dl|dt|em|font|h[1-6]|hr|i|img|kbd|li|mark|ol|p|pre|s|section|small|span|strong|sub|summary|sup|table|tbody|td|th|thead|tr|u|ul)(\s[^<>]*)?\/?>)",
      std::regex::icase);
  return re;
}

// Net `{` minus `}` outside of quoted spans.
int brace_delta(std::string_view line) {
  int delta = 0;
  char quote = 0;
  for (char c : line) {
    if (quote) {
      if (c == quote) quote = 0;
      continue;
    }
    if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '{') {
      ++delta;
    } else if (c == '}') {
      --delta;
    }
  }
  return delta;
}

// scheme://... up to whitespace; returns length of the URL at `pos` or 0.
std::size_t url_length(std::string_view s, std::size_t pos) {
  if (pos > 0 && is_word(s[pos - 1])) return 0;
  if (!is_alpha(s[pos])) return 0;
  std::size_t i = pos + 1;
  while (i < s.size()) {
    char c = s[i];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '.' ||
        c == '-') {
      ++i;
    } else {
      break;
    }
  }
  if (s.substr(i, 3) != "://") return 0;
  std::size_t end = i + 3;
  if (end >= s.size() || is_space(s[end])) return 0;
  while (end < s.size() && !is_space(s[end])) ++end;
  return end - pos;
}

void append_camel_parts(std::string_view word, std::vector<std::string>& out) {
  std::vector<std::size_t> cuts;
  for (std::size_t k = 1; k < word.size(); ++k) {
    if (is_lower(word[k - 1]) && is_upper(word[k])) cuts.push_back(k);
  }
  out.push_back(lower(word));
  if (cuts.empty()) return;
  std::size_t begin = 0;
  for (std::size_t cut : cuts) {
    out.push_back(lower(word.substr(begin, cut - begin)));
    begin = cut;
  }
  out.push_back(lower(word.substr(begin)));
}

}  // namespace

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  if (text.empty()) return lines;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t nl = text.find('\n', begin);
    if (nl == std::string_view::npos) {
      if (begin < text.size()) lines.emplace_back(text.substr(begin));
      break;
    }
    std::string_view line = text.substr(begin, nl - begin);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    begin = nl + 1;
  }
  if (!lines.empty() && !lines.back().empty() && lines.back().back() == '\r') {
    lines.back().pop_back();
  }
  return lines;
}

RawDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) {
    name = name.substr(slash + 1);
  }
  if (name.empty()) name = "document";
  return RawDocument{buf.str(), name, {}};
}

RawDocument clean_document(const RawDocument& doc) {
  RawDocument out;
  out.source_name = doc.source_name;
  const auto lines = split_lines(doc.text);
  std::string text;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (is_table_row(line)) continue;
    std::string kept = std::regex_replace(line, image_pattern(), "");
    kept = std::regex_replace(kept, html_pattern(), "");
    if (kept != line && trim(kept).empty()) continue;
    if (!out.line_numbers.empty()) text.push_back('\n');
    text += kept;
    out.line_numbers.push_back(doc.original_line(i));
  }
  out.text = std::move(text);
  return out;
}

Segmentation segment(const RawDocument& doc) {
  Segmentation result;
  auto& stmts = result.statements;
  const auto lines = split_lines(doc.text);

  int depth = 0;  // open braces of the current script block
  std::size_t block_line = 0;

  auto append = [](Statement& s, std::string_view part, std::size_t line) {
    s.raw.push_back(' ');
    s.raw.append(part);
    s.parts.emplace_back(part);
    s.line_end = line;
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = doc.original_line(i);
    const std::string_view t = trim(lines[i]);
    if (depth > 0) {
      if (t.empty()) continue;
      append(stmts.back(), t, line_no);
      depth = std::max(0, depth + brace_delta(t));
      continue;
    }
    if (t.empty()) continue;
    if (t.front() == '|' && !stmts.empty()) {
      append(stmts.back(), t, line_no);
    } else {
      Statement s;
      s.raw = std::string(t);
      s.parts.emplace_back(t);
      s.line_start = line_no;
      s.line_end = line_no;
      stmts.push_back(std::move(s));
    }
    int delta = brace_delta(t);
    if (delta > 0) {
      depth = delta;
      block_line = stmts.back().line_start;
    }
  }
  if (depth > 0) {
    result.warnings.push_back(
        {"UnbalancedBraces",
         "script block opened here is not closed before end of document",
         block_line});
  }
  for (auto& s : stmts) s.tokens = tokenize(s.raw);
  return result;
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (std::size_t n = url_length(s, i); n > 0) {
      const std::string_view url = s.substr(i, n);
      out.emplace_back(url);
      // The scheme://host origin follows as its own token, so links to the
      // same service share a feature even when the full URL is unseen.
      const std::size_t host = url.find("://") + 3;
      const std::size_t stop = url.find_first_of("/?#", host);
      if (stop != std::string_view::npos) out.emplace_back(url.substr(0, stop));
      i += n;
      continue;
    }
    if (!is_word(c)) {
      out.emplace_back(1, c);
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && is_word(s[j])) ++j;
    // Command names: Word-Word[-Word...], the first part starting with a
    // letter.
    std::size_t k = j;
    if (is_alpha(c)) {
      while (k + 1 < s.size() && s[k] == '-' && is_alpha(s[k + 1])) {
        k += 1;
        while (k < s.size() && is_word(s[k])) ++k;
      }
    }
    if (k > j) {
      out.push_back(lower(s.substr(i, k - i)));
      i = k;
      continue;
    }
    append_camel_parts(s.substr(i, j - i), out);
    i = j;
  }
  return out;
}

Statement make_statement(std::string_view text, std::size_t line) {
  Statement s;
  s.raw = std::string(trim(text));
  s.parts.push_back(s.raw);
  s.line_start = line;
  s.line_end = line;
  s.tokens = tokenize(s.raw);
  return s;
}

}  // namespace tsg
