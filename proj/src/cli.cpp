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

#include "tsg/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <json.hpp>
#include <map>
#include <ostream>
#include <sstream>

#include "tsg/clause_tagger.hpp"
#include "tsg/constituent_extractor.hpp"
#include "tsg/evalharness.hpp"
#include "tsg/identifier.hpp"
#include "tsg/ingest.hpp"
#include "tsg/io.hpp"
#include "tsg/pipeline.hpp"
#include "tsg/vectorize.hpp"

namespace tsg::cli {

namespace fs = std::filesystem;

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = first + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("bad value for '" + key + "': '" + value + "'");
  }
  return out;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  const auto n = parse_number<std::size_t>(key, value);
  if (n == 0) throw ConfigError("'" + key + "' must be positive");
  return n;
}

double parse_positive_real(const std::string& key, const std::string& value) {
  const auto x = parse_number<double>(key, value);
  if (!(x > 0.0)) throw ConfigError("'" + key + "' must be positive");
  return x;
}

std::string resolve(const std::string& path, const std::string& base_dir) {
  if (path.empty() || base_dir.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).lexically_normal().string();
}

using Setter = std::function<void(Config&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto path = [](std::string Config::*field) {
      return [field](Config& c, const std::string& v, const std::string& base) {
        c.*field = resolve(v, base);
      };
    };
    t["vocab"] = path(&Config::vocab);
    t["model"] = path(&Config::model);
    t["prototypes"] = path(&Config::prototypes);
    t["registry"] = path(&Config::registry);
    t["lexicon"] = path(&Config::lexicon);
    t["seed"] = [](Config& c, const std::string& v, const std::string&) {
      c.seed = parse_number<std::uint64_t>("seed", v);
    };
    t["max_len"] = [](Config& c, const std::string& v, const std::string&) {
      c.hyper.max_len = parse_count("max_len", v);
    };
    t["learning_rate"] = [](Config& c, const std::string& v, const std::string&) {
      c.hyper.learning_rate = parse_positive_real("learning_rate", v);
    };
    t["epochs"] = [](Config& c, const std::string& v, const std::string&) {
      c.hyper.epochs = parse_count("epochs", v);
    };
    t["batch_size"] = [](Config& c, const std::string& v, const std::string&) {
      c.hyper.batch_size = parse_count("batch_size", v);
    };
    t["init_scale"] = [](Config& c, const std::string& v, const std::string&) {
      c.hyper.init_scale = parse_positive_real("init_scale", v);
    };
    t["pairs"] = [](Config& c, const std::string& v, const std::string&) {
      c.pairs = parse_count("pairs", v);
    };
    t["embed_dim"] = [](Config& c, const std::string& v, const std::string&) {
      c.shape.embed_dim = parse_count("embed_dim", v);
    };
    t["filters"] = [](Config& c, const std::string& v, const std::string&) {
      c.shape.filters = parse_count("filters", v);
    };
    t["kernel"] = [](Config& c, const std::string& v, const std::string&) {
      c.shape.kernel = parse_count("kernel", v);
    };
    t["dense_dim"] = [](Config& c, const std::string& v, const std::string&) {
      c.shape.dense_dim = parse_count("dense_dim", v);
    };
    t["max_occurrence"] = [](Config& c, const std::string& v, const std::string&) {
      const auto n = parse_number<int>("max_occurrence", v);
      if (n < 1) throw ConfigError("'max_occurrence' must be at least 1");
      c.bounds.max_occurrence = n;
    };
    t["abs_window"] = [](Config& c, const std::string& v, const std::string&) {
      const auto n = parse_number<int>("abs_window", v);
      if (n < 0) throw ConfigError("'abs_window' must not be negative");
      c.bounds.abs_window = n;
    };
    t["max_atoms"] = [](Config& c, const std::string& v, const std::string&) {
      c.bounds.max_atoms = parse_count("max_atoms", v);
    };
    t["max_branches"] = [](Config& c, const std::string& v, const std::string&) {
      c.bounds.max_branches = parse_count("max_branches", v);
    };
    // caps = natural_language:60,kusto:40
    t["caps"] = [](Config& c, const std::string& v, const std::string&) {
      c.caps.clear();
      std::size_t begin = 0;
      while (begin < v.size()) {
        std::size_t comma = v.find(',', begin);
        if (comma == std::string::npos) comma = v.size();
        const std::string item(trim(std::string_view(v).substr(begin, comma - begin)));
        begin = comma + 1;
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw ConfigError("caps entry '" + item + "' needs class:count");
        const std::string cls(trim(std::string_view(item).substr(0, colon)));
        if (!is_valid_component_name(cls)) throw ConfigError("caps: bad class '" + cls + "'");
        c.caps[cls] = parse_count("caps", std::string(trim(std::string_view(item).substr(colon + 1))));
      }
    };
    t["folds"] = [](Config& c, const std::string& v, const std::string&) {
      const auto n = parse_count("folds", v);
      if (n < 2) throw ConfigError("'folds' must be at least 2");
      c.folds = n;
    };
    t["knn_k"] = [](Config& c, const std::string& v, const std::string&) {
      c.knn_k = parse_count("knn_k", v);
    };
    t["max_iterations"] = [](Config& c, const std::string& v, const std::string&) {
      c.max_iterations = parse_count("max_iterations", v);
    };
    return t;
  }();
  return table;
}

std::string unquote(std::string_view v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    return std::string(v.substr(1, v.size() - 2));
  }
  return std::string(v);
}

// --- shared command plumbing ---

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  std::map<std::string, std::string> overrides;
};

Config effective_config(const Globals& g) {
  Config cfg = g.config_path.empty() ? Config{} : load_config(g.config_path);
  for (const auto& [key, value] : g.overrides) set_config_value(cfg, key, value);
  if (g.seed) cfg.seed = *g.seed;
  return cfg;
}

std::uint64_t require_seed(const Config& cfg) {
  if (!cfg.seed) throw ConfigError("a seed is required (set 'seed' or pass --seed)");
  return *cfg.seed;
}

// Artifact named by the config; its absence is a configuration problem.
std::string read_artifact(const std::string& what, const std::string& path) {
  if (path.empty() || !fs::is_regular_file(path)) {
    throw ConfigError(what + " not found: '" + path + "'");
  }
  return read_file(path);
}

// Input named on the command line; its absence is an input problem.
void require_input(const std::string& path) {
  if (!fs::is_regular_file(path)) throw Error(ErrorKind::Io, "cannot read '" + path + "'");
}

void ensure_parent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

LabeledCorpus with_caps(LabeledCorpus corpus, const Config& cfg) {
  for (const auto& [cls, n] : cfg.caps) corpus.caps[cls] = n;
  return corpus;
}

ClauseLexicon lexicon_of(const Config& cfg) {
  if (cfg.lexicon.empty()) return ClauseLexicon::builtin();
  return parse_lexicon(read_artifact("lexicon", cfg.lexicon));
}

ComponentIdentifier identifier_of(const Config& cfg) {
  ComponentIdentifier id;
  id.vocab = Vocabulary::parse(read_artifact("vocabulary", cfg.vocab));
  id.model = parse_model(read_artifact("model", cfg.model));
  id.prototypes = parse_prototypes(read_artifact("prototypes", cfg.prototypes));
  if (id.model.vocab_size != id.vocab.size()) {
    throw ConfigError("model vocabulary size " + std::to_string(id.model.vocab_size) +
                      " does not match vocabulary file (" + std::to_string(id.vocab.size()) + ")");
  }
  return id;
}

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

std::vector<std::string> spec_files(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const auto& a : args) {
    if (fs::is_directory(a)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(a)) {
        if (e.is_regular_file() && e.path().extension() == ".jsonl") {
          found.push_back(e.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      require_input(a);
      out.push_back(a);
    }
  }
  return out;
}

nlohmann::ordered_json constituents_json(const ParsedComponent& p) {
  nlohmann::ordered_json o = nlohmann::ordered_json::object();
  for (const auto& [name, v] : p.constituents) {
    if (const auto* s = std::get_if<std::string>(&v)) {
      o[name] = *s;
    } else {
      o[name] = std::get<std::vector<std::string>>(v);
    }
  }
  return o;
}

// --- commands ---

int cmd_train(const Globals& g, const std::string& corpus_path, std::ostream& out) {
  const Config cfg = effective_config(g);
  const std::uint64_t seed = require_seed(cfg);
  require_input(corpus_path);
  const LabeledCorpus corpus = apply_caps(with_caps(load_corpus(corpus_path), cfg), seed);

  std::vector<Statement> stmts;
  for (const auto& e : corpus.examples) stmts.push_back(e.stmt);
  const Vocabulary vocab = build_vocabulary(stmts);
  Hyper hyper = cfg.hyper;
  hyper.seed = seed;

  std::vector<std::pair<IndexSequence, std::string>> seqs;
  SupportSet support;
  for (const auto& e : corpus.examples) {
    auto x = encode(e.stmt, vocab, hyper.max_len);
    support[e.label].push_back(x);
    seqs.emplace_back(std::move(x), e.label);
  }
  const auto pairs = sample_pairs(seqs, seed, cfg.pairs);
  const TrainResult res = train(pairs, vocab.size(), hyper, cfg.shape);
  const auto protos = compute_prototypes(res.model, support);

  if (!g.quiet) {
    for (std::size_t i = 0; i < res.epoch_loss.size(); ++i) {
      out << "epoch " << (i + 1) << " loss " << fixed(res.epoch_loss[i], 6) << "\n";
    }
  }
  for (const auto* p : {&cfg.vocab, &cfg.model, &cfg.prototypes}) ensure_parent(*p);
  write_file(cfg.vocab, vocab.serialize());
  save_model(res.model, cfg.model);
  write_file(cfg.prototypes, serialize_prototypes(protos));
  if (!g.quiet) {
    out << "vocabulary " << vocab.size() << " tokens -> " << cfg.vocab << "\n";
    out << "model -> " << cfg.model << "\n";
    out << "prototypes " << protos.size() << " classes -> " << cfg.prototypes << "\n";
  }
  return kExitOk;
}

int cmd_classify(const Globals& g, const std::string& text, std::ostream& out) {
  const Config cfg = effective_config(g);
  const ComponentIdentifier id = identifier_of(cfg);
  const Classification c = id.classify(make_statement(text));
  out << c.label << "\t" << fixed(c.similarity, 6) << "\n";
  if (!g.quiet) {
    for (const auto& [label, sim] : c.per_class) out << "  " << label << "\t" << fixed(sim, 6) << "\n";
  }
  return kExitOk;
}

int cmd_synthesize(const Globals& g, const std::vector<std::string>& inputs, std::ostream& out,
                   std::ostream& err) {
  const Config cfg = effective_config(g);
  const ClauseLexicon lex = lexicon_of(cfg);
  const auto files = spec_files(inputs);
  if (files.empty()) throw Error(ErrorKind::Io, "no spec files given");
  ParserRegistry registry =
      fs::is_regular_file(cfg.registry) ? load_registry(cfg.registry) : ParserRegistry{};
  for (const auto& f : files) {
    const ExampleSpec spec = load_example_spec(f);
    try {
      ParserEntry e = learn_parser(spec, cfg.bounds, lex);
      if (!g.quiet) {
        out << e.component << "/" << e.constituent << "\t" << serialize(e.program) << "\n";
      }
      registry.put(std::move(e));
    } catch (const SynthesisError& se) {
      err << "synthesis failed for " << spec.component << "/" << spec.constituent << " (" << f
          << ")\n";
      for (std::size_t i : se.unmet()) {
        err << "  unmet example " << i << ": " << spec.pairs[i].input << " -> "
            << spec.pairs[i].output << "\n";
      }
      return kExitSynthesis;
    }
  }
  ensure_parent(cfg.registry);
  save_registry(registry, cfg.registry);
  if (!g.quiet) out << "registry " << registry.size() << " entries -> " << cfg.registry << "\n";
  return kExitOk;
}

int cmd_parse(const Globals& g, const std::string& text, std::string component,
              std::ostream& out) {
  const Config cfg = effective_config(g);
  const ClauseLexicon lex = lexicon_of(cfg);
  const ParserRegistry registry = ParserRegistry::parse(read_artifact("registry", cfg.registry));
  const Statement stmt = make_statement(text);
  if (component.empty()) component = identifier_of(cfg).classify(stmt).label;
  ExtractOptions opts;
  opts.max_iterations = cfg.max_iterations;
  const ParsedComponent p = extract(stmt, component, registry, lex, opts);
  nlohmann::ordered_json o;
  o["component"] = component;
  o["constituents"] = constituents_json(p);
  o["missing"] = std::vector<std::string>(p.missing.begin(), p.missing.end());
  out << o.dump(2) << "\n";
  return kExitOk;
}

int cmd_automate(const Globals& g, const std::string& tsg_path, const std::string& out_dir,
                 std::ostream& out) {
  const Config cfg = effective_config(g);
  const ComponentIdentifier id = identifier_of(cfg);
  const ParserRegistry registry = ParserRegistry::parse(read_artifact("registry", cfg.registry));
  const ClauseLexicon lex = lexicon_of(cfg);
  require_input(tsg_path);
  const RawDocument doc = load_document(tsg_path);

  PipelineContext ctx{id, registry, lex, default_required_constituents(), ExtractOptions{}};
  ctx.extract.max_iterations = cfg.max_iterations;
  const SchematizedTSG schema = schematize(doc, ctx);
  const Workflow wf = emit_workflow(schema);

  const std::string name = fs::path(tsg_path).stem().string();
  const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  fs::create_directories(dir);
  const std::string schema_path = (dir / (name + ".schema.json")).string();
  const std::string workflow_path = (dir / (name + ".workflow.json")).string();
  write_file(schema_path, schema_to_json(schema));
  write_file(workflow_path, workflow_to_json(wf));

  const AutomationSummary sum = summarize(schema);
  if (!g.quiet) {
    for (const auto& [component, n] : sum.per_component) out << component << "\t" << n << "\n";
  }
  out << "automatable " << sum.automatable << "/" << sum.entries << " ("
      << fixed(100.0 * sum.automatable_fraction(), 1) << "%)\n";
  if (!g.quiet) {
    out << "schema -> " << schema_path << "\n";
    out << "workflow -> " << workflow_path << "\n";
  }
  return kExitOk;
}

int cmd_eval(const Globals& g, const std::string& corpus_path, const std::string& testset_path,
             const std::vector<std::string>& spec_inputs, bool json, std::ostream& out) {
  const Config cfg = effective_config(g);
  const std::uint64_t seed = require_seed(cfg);
  require_input(corpus_path);
  const LabeledCorpus corpus = apply_caps(with_caps(load_corpus(corpus_path), cfg), seed);

  SiameseOptions so;
  so.hyper = cfg.hyper;
  so.hyper.seed = seed;
  so.shape = cfg.shape;
  so.pairs = cfg.pairs;
  std::map<std::string, Metrics> by_model;
  by_model["knn_bow"] = kfold_eval(corpus, cfg.folds, seed, knn_bow_learner(cfg.knn_k)).metrics;
  by_model["siamese"] = kfold_eval(corpus, cfg.folds, seed, siamese_learner(so)).metrics;
  out << (json ? metrics_json(by_model) : metrics_table(by_model));

  if (!testset_path.empty()) {
    require_input(testset_path);
    const auto testset = load_parsing_testset(testset_path);
    std::vector<ExampleSpec> specs;
    for (const auto& f : spec_files(spec_inputs)) specs.push_back(load_example_spec(f));
    const ParserRegistry registry = ParserRegistry::parse(read_artifact("registry", cfg.registry));
    const ParsingReport r = parsing_report(specs, registry, testset, lexicon_of(cfg));
    out << (json ? parsing_json(r) : parsing_table(r));
  }
  return kExitOk;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, _] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

void set_config_value(Config& cfg, const std::string& key, const std::string& value,
                      const std::string& base_dir) {
  auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("unknown config key '" + key + "'");
  it->second(cfg, value, base_dir);
}

Config parse_config(const std::string& text, const std::string& base_dir) {
  Config cfg;
  std::size_t line_no = 0;
  for (const auto& raw : split_lines(text)) {
    ++line_no;
    std::string_view line = raw;
    // A '#' inside a quoted value is kept.
    bool in_quote = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_quote = !in_quote;
      if (line[i] == '#' && !in_quote) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty() || (line.front() == '[' && line.back() == ']')) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    try {
      set_config_value(cfg, key, value, base_dir);
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

Config load_config(const std::string& path) {
  if (!fs::is_regular_file(path)) throw ConfigError("config file not found: '" + path + "'");
  return parse_config(read_file(path), fs::path(path).parent_path().string());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Troubleshooting-guide automation: classify, parse and convert TSGs", "tsgauto"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::uint64_t seed = 0;
  app.add_option("--config", g.config_path, "Config file (key = value lines)");
  auto* seed_opt = app.add_option("--seed", seed, "Random seed (required by train and eval)");
  app.add_flag("--quiet", g.quiet, "Print only essential output");
  for (const auto& key : config_keys()) {
    if (key == "seed") continue;
    app.add_option_function<std::string>(
        "--" + key, [&g, key](const std::string& v) { g.overrides[key] = v; },
        "Overrides config key '" + key + "'");
  }

  std::string corpus, text, component, tsg_path, out_dir, testset;
  std::vector<std::string> specs, eval_specs;
  bool json = false;

  auto* train = app.add_subcommand("train", "Train the metric model and prototypes");
  train->add_option("corpus", corpus, "Labeled corpus (JSONL)")->required();
  auto* classify = app.add_subcommand("classify", "Classify one statement");
  classify->add_option("text", text, "Statement text")->required();
  auto* synth = app.add_subcommand("synthesize", "Learn parsers from example specs");
  synth->add_option("specs", specs, "Spec files or directories of *.jsonl")->required();
  auto* parse = app.add_subcommand("parse", "Extract constituents from one statement");
  parse->add_option("text", text, "Statement text")->required();
  parse->add_option("--component", component, "Component type (default: classify first)");
  auto* automate = app.add_subcommand("automate", "Convert a TSG into schema and workflow files");
  automate->add_option("tsg", tsg_path, "Markdown TSG")->required();
  automate->add_option("--out", out_dir, "Output directory (default: current directory)");
  auto* eval = app.add_subcommand("eval", "Cross-validated classifier and parser evaluation");
  eval->add_option("corpus", corpus, "Labeled corpus (JSONL)")->required();
  eval->add_option("--testset", testset, "Parsing test set (JSONL)");
  eval->add_option("--specs", eval_specs, "Spec files or directories checked for overlap");
  eval->add_flag("--json", json, "Emit JSON instead of tables");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  if (seed_opt->count() > 0) g.seed = seed;

  try {
    if (*train) return cmd_train(g, corpus, out);
    if (*classify) return cmd_classify(g, text, out);
    if (*synth) return cmd_synthesize(g, specs, out, err);
    if (*parse) return cmd_parse(g, text, component, out);
    if (*automate) return cmd_automate(g, tsg_path, out_dir, out);
    if (*eval) return cmd_eval(g, corpus, testset, eval_specs, json, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SynthesisError& e) {
    err << e.what() << "\n";
    return kExitSynthesis;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace tsg::cli
