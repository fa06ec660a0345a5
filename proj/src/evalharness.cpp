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

#include "tsg/evalharness.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>
#include <memory>
#include <set>

#include "tsg/identifier.hpp"
#include "tsg/io.hpp"
#include "tsg/pipeline.hpp"
#include "tsg/rng.hpp"
#include "tsg/vectorize.hpp"

namespace tsg {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

template <typename F>
void for_each_json_line(const std::string& text, const std::string& what, F&& f) {
  std::size_t line_no = 0;
  for (const auto& line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = what + " line " + std::to_string(line_no);
    try {
      const json j = json::parse(line);
      if (!j.is_object()) throw Error(ErrorKind::Format, where + ": expected an object");
      f(j, where);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Format, where + ": " + e.what());
    }
  }
}

double safe_div(double a, double b) { return b == 0.0 ? 0.0 : a / b; }

void finish(ParsingScore& s) {
  s.precision_undefined = s.extracted == 0;
  s.precision = safe_div(static_cast<double>(s.correct), static_cast<double>(s.extracted));
  s.recall = safe_div(static_cast<double>(s.correct), static_cast<double>(s.expected));
}

void add(ParsingScore& into, const ParsingScore& s) {
  into.extracted += s.extracted;
  into.expected += s.expected;
  into.correct += s.correct;
  into.cases += s.cases;
}

std::size_t list_size(const ConstituentValue& v) {
  if (const auto* l = std::get_if<std::vector<std::string>>(&v)) return l->size();
  return 1;
}

// Position-wise agreement of two values of the same constituent.
std::size_t agreement(const ConstituentValue& got, const ConstituentValue& want) {
  const auto* gs = std::get_if<std::string>(&got);
  const auto* ws = std::get_if<std::string>(&want);
  if (gs && ws) return *gs == *ws ? 1 : 0;
  if (gs || ws) return 0;
  const auto& gl = std::get<std::vector<std::string>>(got);
  const auto& wl = std::get<std::vector<std::string>>(want);
  std::size_t n = 0;
  for (std::size_t i = 0; i < gl.size() && i < wl.size(); ++i) n += gl[i] == wl[i] ? 1 : 0;
  return n;
}

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

LabeledCorpus parse_corpus(const std::string& text) {
  LabeledCorpus c;
  std::size_t n = 0;
  for_each_json_line(text, "corpus", [&](const json& j, const std::string& where) {
    ++n;
    const auto t = j.at("text").get<std::string>();
    const auto label = j.at("label").get<std::string>();
    if (!is_valid_component_name(label)) {
      throw Error(ErrorKind::Format, where + ": invalid label '" + label + "'");
    }
    if (trim(t).empty()) throw Error(ErrorKind::Format, where + ": empty text");
    c.examples.push_back({make_statement(t, n), label});
  });
  if (c.examples.empty()) throw Error(ErrorKind::EmptyCorpus, "corpus has no examples");
  return c;
}

LabeledCorpus load_corpus(const std::string& path) { return parse_corpus(read_file(path)); }

LabeledCorpus apply_caps(const LabeledCorpus& corpus, std::uint64_t seed) {
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < corpus.examples.size(); ++i) {
    by_class[corpus.examples[i].label].push_back(i);
  }
  Rng rng(seed);
  std::vector<char> keep(corpus.examples.size(), 1);
  for (auto& [label, idx] : by_class) {
    auto cap = corpus.caps.find(label);
    if (cap == corpus.caps.end() || idx.size() <= cap->second) continue;
    rng.shuffle(idx);
    for (std::size_t j = cap->second; j < idx.size(); ++j) keep[idx[j]] = 0;
  }
  LabeledCorpus out;
  out.caps = corpus.caps;
  for (std::size_t i = 0; i < corpus.examples.size(); ++i) {
    if (keep[i]) out.examples.push_back(corpus.examples[i]);
  }
  return out;
}

Metrics compute_metrics(std::span<const std::string> truth, std::span<const std::string> pred) {
  if (truth.size() != pred.size()) {
    throw Error(ErrorKind::InvalidArgument, "truth and prediction lengths differ");
  }
  std::set<std::string> classes(truth.begin(), truth.end());
  classes.insert(pred.begin(), pred.end());
  Metrics m;
  m.total = truth.size();
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) correct += truth[i] == pred[i] ? 1 : 0;
  m.accuracy = safe_div(static_cast<double>(correct), static_cast<double>(m.total));
  double f1_sum = 0.0;
  for (const auto& c : classes) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const bool t = truth[i] == c;
      const bool p = pred[i] == c;
      tp += (t && p) ? 1 : 0;
      fp += (!t && p) ? 1 : 0;
      fn += (t && !p) ? 1 : 0;
    }
    ClassMetrics cm;
    cm.support = tp + fn;
    cm.precision = safe_div(static_cast<double>(tp), static_cast<double>(tp + fp));
    cm.recall = safe_div(static_cast<double>(tp), static_cast<double>(tp + fn));
    cm.f1 = safe_div(2.0 * cm.precision * cm.recall, cm.precision + cm.recall);
    f1_sum += cm.f1;
    m.per_class[c] = cm;
  }
  m.macro_f1 = safe_div(f1_sum, static_cast<double>(classes.size()));
  return m;
}

std::vector<std::size_t> stratified_folds(std::span<const std::string> labels, std::size_t k,
                                          std::uint64_t seed) {
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "k must be at least 2");
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  Rng rng(seed);
  std::vector<std::size_t> fold(labels.size(), 0);
  std::size_t offset = 0;
  for (auto& [label, idx] : by_class) {
    if (idx.size() < k) {
      throw Error(ErrorKind::ClassTooSmall, "class '" + label + "' has " +
                                                std::to_string(idx.size()) +
                                                " examples, fewer than k=" + std::to_string(k));
    }
    rng.shuffle(idx);
    // Rotating the starting fold keeps the overall fold sizes balanced.
    for (std::size_t j = 0; j < idx.size(); ++j) fold[idx[j]] = (offset + j) % k;
    offset = (offset + idx.size()) % k;
  }
  return fold;
}

FoldResult kfold_eval(const LabeledCorpus& corpus, std::size_t k, std::uint64_t seed,
                      const Learner& learner) {
  std::vector<std::string> labels;
  for (const auto& e : corpus.examples) labels.push_back(e.label);
  FoldResult res;
  res.folds = stratified_folds(labels, k, seed);
  res.predictions.assign(labels.size(), std::string());
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<LabeledExample> train;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (res.folds[i] != f) train.push_back(corpus.examples[i]);
    }
    const Predictor predict = learner(train, f);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (res.folds[i] == f) res.predictions[i] = predict(corpus.examples[i].stmt);
    }
  }
  res.metrics = compute_metrics(labels, res.predictions);
  return res;
}

Learner siamese_learner(const SiameseOptions& opts) {
  return [opts](std::span<const LabeledExample> train, std::size_t fold) -> Predictor {
    std::vector<Statement> stmts;
    for (const auto& e : train) stmts.push_back(e.stmt);
    auto id = std::make_shared<ComponentIdentifier>();
    id->vocab = build_vocabulary(stmts);
    Hyper hyper = opts.hyper;
    hyper.seed = opts.hyper.seed + 1000003ULL * fold;
    std::vector<std::pair<IndexSequence, std::string>> seqs;
    SupportSet support;
    for (const auto& e : train) {
      auto x = encode(e.stmt, id->vocab, hyper.max_len);
      support[e.label].push_back(x);
      seqs.emplace_back(std::move(x), e.label);
    }
    const auto pairs = sample_pairs(seqs, hyper.seed, opts.pairs);
    id->model = tsg::train(pairs, id->vocab.size(), hyper, opts.shape).model;
    id->prototypes = compute_prototypes(id->model, support);
    return [id](const Statement& s) { return id->classify(s).label; };
  };
}

Learner knn_bow_learner(std::size_t k) {
  return [k](std::span<const LabeledExample> train, std::size_t) -> Predictor {
    std::vector<Statement> stmts;
    for (const auto& e : train) stmts.push_back(e.stmt);
    auto vocab = std::make_shared<Vocabulary>(build_vocabulary(stmts));
    auto vecs = std::make_shared<std::vector<std::pair<BowVector, std::string>>>();
    for (const auto& e : train) vecs->emplace_back(bow(e.stmt, *vocab), e.label);
    const std::size_t kk = std::min(k, vecs->size());
    return [vocab, vecs, kk](const Statement& s) {
      return knn_bow_classify(*vecs, bow(s, *vocab), kk);
    };
  };
}

ParsingReport parsing_report(std::span<const ExampleSpec> specs, const ParserRegistry& registry,
                             std::span<const ParsingTestCase> testset, const ClauseLexicon& lex) {
  std::set<std::string> spec_inputs;
  for (const auto& s : specs) {
    for (const auto& p : s.pairs) spec_inputs.insert(p.input);
  }
  for (const auto& t : testset) {
    if (spec_inputs.count(t.text)) {
      throw Error(ErrorKind::OverlapDetected, "test input is also a spec example: " + t.text);
    }
  }
  ParsingReport r;
  for (const auto& t : testset) {
    const ParsedComponent got = extract(make_statement(t.text), t.component, registry, lex);
    ParsingScore s;
    s.cases = 1;
    for (const auto& [name, v] : got.constituents) s.extracted += list_size(v);
    for (const auto& [name, v] : t.expected.constituents) {
      s.expected += list_size(v);
      if (auto it = got.constituents.find(name); it != got.constituents.end()) {
        s.correct += agreement(it->second, v);
      }
    }
    add(r.per_component[t.component], s);
    add(r.overall, s);
  }
  for (auto& [_, s] : r.per_component) finish(s);
  finish(r.overall);
  return r;
}

std::vector<ParsingTestCase> parse_parsing_testset(const std::string& text) {
  std::vector<ParsingTestCase> out;
  for_each_json_line(text, "testset", [&](const json& j, const std::string& where) {
    ParsingTestCase t;
    t.text = j.at("text").get<std::string>();
    t.component = j.at("component").get<std::string>();
    t.expected.component = t.component;
    for (const auto& [name, v] : j.at("constituents").items()) {
      if (v.is_string()) {
        t.expected.constituents[name] = v.get<std::string>();
      } else if (v.is_array()) {
        t.expected.constituents[name] = v.get<std::vector<std::string>>();
      } else {
        throw Error(ErrorKind::Format, where + ": constituent '" + name + "' is not a string or list");
      }
    }
    out.push_back(std::move(t));
  });
  return out;
}

std::vector<ParsingTestCase> load_parsing_testset(const std::string& path) {
  return parse_parsing_testset(read_file(path));
}

std::string metrics_table(const std::map<std::string, Metrics>& by_model) {
  std::string out;
  for (const auto& [model, m] : by_model) {
    out += model + "\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  %-18s %9s %9s %9s %8s\n", "class", "precision", "recall",
                  "f1", "support");
    out += buf;
    for (const auto& [c, cm] : m.per_class) {
      std::snprintf(buf, sizeof(buf), "  %-18s %9.3f %9.3f %9.3f %8zu\n", c.c_str(),
                    cm.precision, cm.recall, cm.f1, cm.support);
      out += buf;
    }
    out += "  macro_f1 " + fmt3(m.macro_f1) + "  accuracy " + fmt3(m.accuracy) + "  n " +
           std::to_string(m.total) + "\n";
  }
  return out;
}

std::string metrics_json(const std::map<std::string, Metrics>& by_model) {
  ojson root = ojson::object();
  for (const auto& [model, m] : by_model) {
    ojson o;
    ojson pc = ojson::object();
    for (const auto& [c, cm] : m.per_class) {
      pc[c] = {{"precision", cm.precision}, {"recall", cm.recall}, {"f1", cm.f1},
               {"support", cm.support}};
    }
    o["per_class"] = std::move(pc);
    o["macro_f1"] = m.macro_f1;
    o["accuracy"] = m.accuracy;
    o["total"] = m.total;
    root[model] = std::move(o);
  }
  return root.dump(2) + "\n";
}

std::string parsing_table(const ParsingReport& r) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-18s %6s %9s %9s\n", "component", "cases", "precision",
                "recall");
  out += buf;
  auto row = [&](const std::string& name, const ParsingScore& s) {
    std::snprintf(buf, sizeof(buf), "%-18s %6zu %9s %9.3f\n", name.c_str(), s.cases,
                  s.precision_undefined ? "n/a" : fmt3(s.precision).c_str(), s.recall);
    out += buf;
  };
  for (const auto& [c, s] : r.per_component) row(c, s);
  row("overall", r.overall);
  return out;
}

std::string parsing_json(const ParsingReport& r) {
  auto score = [](const ParsingScore& s) {
    ojson o;
    o["cases"] = s.cases;
    o["extracted"] = s.extracted;
    o["expected"] = s.expected;
    o["correct"] = s.correct;
    o["precision"] = s.precision;
    o["recall"] = s.recall;
    o["precision_undefined"] = s.precision_undefined;
    return o;
  };
  ojson root;
  ojson pc = ojson::object();
  for (const auto& [c, s] : r.per_component) pc[c] = score(s);
  root["per_component"] = std::move(pc);
  root["overall"] = score(r.overall);
  return root.dump(2) + "\n";
}

}  // namespace tsg
