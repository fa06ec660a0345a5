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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tsg/error.hpp"

namespace tsg {

/// A Markdown troubleshooting guide. `line_numbers[i]` is the 1-based line
/// of the original document that line i of `text` came from; an empty vector
/// means the identity mapping.
struct RawDocument {
  std::string text;
  std::string source_name;
  std::vector<std::size_t> line_numbers;

  std::size_t original_line(std::size_t index) const {
    return line_numbers.empty() ? index + 1 : line_numbers[index];
  }
};

/// One logical statement. Merged multi-line statements keep their source
/// lines (trimmed) in `parts`, so `raw` equals the parts joined by a space.
struct Statement {
  std::string raw;
  std::size_t line_start = 0;
  std::size_t line_end = 0;
  std::vector<std::string> tokens;
  std::vector<std::string> parts;
};

struct Segmentation {
  std::vector<Statement> statements;
  std::vector<Warning> warnings;
};

RawDocument load_document(const std::string& path);

/// Drops image embeds, Markdown table rows and HTML markup. Lines that are
/// not touched are kept byte-for-byte.
RawDocument clean_document(const RawDocument& doc);

/// Splits a cleaned document into statements, folding Kusto `|`
/// continuation lines and `{ ... }` script blocks into their opening line.
Segmentation segment(const RawDocument& doc);

/// URLs stay whole (followed by their scheme://host origin), Word-Word
/// command names stay whole, punctuation is split off, camel-case words add
/// their parts. Everything but URLs is lowercased.
std::vector<std::string> tokenize(std::string_view raw);

/// A statement built from a single line of text (corpus records, CLI input).
Statement make_statement(std::string_view text, std::size_t line = 1);

std::vector<std::string> split_lines(std::string_view text);
std::string_view trim(std::string_view s);

}  // namespace tsg
