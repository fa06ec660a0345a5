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

// The `tsgauto` command line: configuration and subcommand dispatch.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsg/error.hpp"
#include "tsg/metric_model.hpp"
#include "tsg/synthesizer.hpp"

namespace tsg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitSynthesis = 4;

/// Bad or missing configuration, including artifacts the config points at.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error(ErrorKind::InvalidArgument, message) {}
};

struct Config {
  std::string vocab = "artifacts/vocab.tsv";
  std::string model = "artifacts/model.bin";
  std::string prototypes = "artifacts/prototypes.tsv";
  std::string registry = "artifacts/registry.tsv";
  std::string lexicon;  // empty: built-in lexicon
  std::optional<std::uint64_t> seed;
  Hyper hyper;
  ModelShape shape;
  std::size_t pairs = 1024;
  SynthesisBounds bounds;
  std::map<std::string, std::size_t> caps;  // per-class corpus caps
  std::size_t folds = 5;
  std::size_t knn_k = 3;
  std::size_t max_iterations = 100;
};

/// Every key accepted in a config file; each is also a `--key` flag.
const std::vector<std::string>& config_keys();

/// Sets one key from its text form. Relative paths are joined to
/// `base_dir` when it is non-empty. Throws ConfigError.
void set_config_value(Config& cfg, const std::string& key, const std::string& value,
                      const std::string& base_dir = "");

/// `key = value` lines; `#` starts a comment, `[section]` headers are
/// accepted and ignored, values may be double-quoted. Throws ConfigError.
Config parse_config(const std::string& text, const std::string& base_dir = "");
Config load_config(const std::string& path);

/// Runs one invocation; `args` excludes the program name. Returns the exit
/// code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsg::cli
