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

#include "tsg/metric_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "tsg/error.hpp"
#include "tsg/rng.hpp"

namespace tsg {

namespace {

struct Dims {
  std::size_t len, embed, filters, kernel, dense, len1, len2;

  Dims(const SiameseModel& m, std::size_t seq_len)
      : len(seq_len),
        embed(m.shape.embed_dim),
        filters(m.shape.filters),
        kernel(m.shape.kernel),
        dense(m.shape.dense_dim),
        len1((seq_len + 1) / 2),
        len2((len1 + 1) / 2) {}
};

// Activations kept for the backward pass.
struct Trace {
  std::vector<double> x0;           // len x embed
  std::vector<double> h1;           // len x filters, post-ReLU
  std::vector<double> p1;           // len1 x filters
  std::vector<std::uint32_t> arg1;  // row of h1 selected by pool 1
  std::vector<double> h2;           // len1 x filters, post-ReLU
  std::vector<double> p2;           // len2 x filters
  std::vector<std::uint32_t> arg2;  // row of h2 selected by pool 2
  std::vector<double> g;            // filters
  std::vector<std::uint32_t> argg;  // row of p2 selected by the global max
  std::vector<double> out;          // dense, post-sigmoid
};

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

// Identical input windows give identical outputs; runs of padding collapse
// to one computation this way.
bool same_window(const std::vector<double>& in, std::size_t rows,
                 std::size_t channels, std::size_t kernel, std::size_t t) {
  const std::ptrdiff_t pad = static_cast<std::ptrdiff_t>(kernel / 2);
  for (std::size_t k = 0; k < kernel; ++k) {
    const std::ptrdiff_t r = static_cast<std::ptrdiff_t>(t + k) - pad;
    const std::ptrdiff_t q = r - 1;
    const bool r_in = r >= 0 && r < static_cast<std::ptrdiff_t>(rows);
    const bool q_in = q >= 0 && q < static_cast<std::ptrdiff_t>(rows);
    if (r_in != q_in) return false;
    if (!r_in) continue;
    if (std::memcmp(&in[r * channels], &in[q * channels],
                    channels * sizeof(double)) != 0) {
      return false;
    }
  }
  return true;
}

// Same-padded 1-D convolution followed by ReLU.
void conv_relu(const std::vector<double>& in, std::size_t rows,
               std::size_t channels, const std::vector<double>& w,
               const std::vector<double>& b, std::size_t filters,
               std::size_t kernel, std::vector<double>& out) {
  out.assign(rows * filters, 0.0);
  const std::ptrdiff_t pad = static_cast<std::ptrdiff_t>(kernel / 2);
  for (std::size_t t = 0; t < rows; ++t) {
    if (t > 0 && same_window(in, rows, channels, kernel, t)) {
      std::copy_n(&out[(t - 1) * filters], filters, &out[t * filters]);
      continue;
    }
    for (std::size_t f = 0; f < filters; ++f) {
      double acc = b[f];
      for (std::size_t k = 0; k < kernel; ++k) {
        const std::ptrdiff_t r = static_cast<std::ptrdiff_t>(t + k) - pad;
        if (r < 0 || r >= static_cast<std::ptrdiff_t>(rows)) continue;
        acc += dot(&w[(f * kernel + k) * channels], &in[r * channels], channels);
      }
      out[t * filters + f] = acc > 0.0 ? acc : 0.0;
    }
  }
}

// Width-2 stride-2 max pool; a trailing odd row forms its own window.
void max_pool(const std::vector<double>& in, std::size_t rows,
              std::size_t channels, std::vector<double>& out,
              std::vector<std::uint32_t>& arg) {
  const std::size_t out_rows = (rows + 1) / 2;
  out.assign(out_rows * channels, 0.0);
  arg.assign(out_rows * channels, 0);
  for (std::size_t i = 0; i < out_rows; ++i) {
    const std::size_t r0 = 2 * i;
    const std::size_t r1 = r0 + 1;
    for (std::size_t c = 0; c < channels; ++c) {
      double best = in[r0 * channels + c];
      std::size_t at = r0;
      if (r1 < rows && in[r1 * channels + c] > best) {
        best = in[r1 * channels + c];
        at = r1;
      }
      out[i * channels + c] = best;
      arg[i * channels + c] = static_cast<std::uint32_t>(at);
    }
  }
}

void forward(const SiameseModel& m, const IndexSequence& x, Trace& tr) {
  const Dims d(m, x.indices.size());
  const auto& p = m.params;
  if (d.len == 0) throw Error(ErrorKind::InvalidArgument, "empty index sequence");
  tr.x0.resize(d.len * d.embed);
  for (std::size_t t = 0; t < d.len; ++t) {
    const std::size_t idx = x.indices[t];
    if (idx >= m.vocab_size) {
      throw Error(ErrorKind::IndexOutOfVocab,
                  "index " + std::to_string(idx) + " >= vocabulary size " +
                      std::to_string(m.vocab_size));
    }
    std::copy_n(&p.embedding[idx * d.embed], d.embed, &tr.x0[t * d.embed]);
  }
  conv_relu(tr.x0, d.len, d.embed, p.conv1_w, p.conv1_b, d.filters, d.kernel, tr.h1);
  max_pool(tr.h1, d.len, d.filters, tr.p1, tr.arg1);
  conv_relu(tr.p1, d.len1, d.filters, p.conv2_w, p.conv2_b, d.filters, d.kernel, tr.h2);
  max_pool(tr.h2, d.len1, d.filters, tr.p2, tr.arg2);

  tr.g.assign(d.filters, 0.0);
  tr.argg.assign(d.filters, 0);
  for (std::size_t f = 0; f < d.filters; ++f) {
    double best = tr.p2[f];
    std::uint32_t at = 0;
    for (std::size_t t = 1; t < d.len2; ++t) {
      if (tr.p2[t * d.filters + f] > best) {
        best = tr.p2[t * d.filters + f];
        at = static_cast<std::uint32_t>(t);
      }
    }
    tr.g[f] = best;
    tr.argg[f] = at;
  }

  tr.out.assign(p.dense_b.begin(), p.dense_b.end());
  for (std::size_t i = 0; i < d.filters; ++i) {
    const double gi = tr.g[i];
    if (gi == 0.0) continue;
    const double* row = &p.dense_w[i * d.dense];
    for (std::size_t j = 0; j < d.dense; ++j) tr.out[j] += gi * row[j];
  }
  for (auto& z : tr.out) z = 1.0 / (1.0 + std::exp(-z));
}

// Accumulates d(loss)/d(params) into `grad`, given d(loss)/d(output).
void backward(const SiameseModel& m, const IndexSequence& x, const Trace& tr,
              const std::vector<double>& d_out, Parameters& grad) {
  const Dims d(m, x.indices.size());
  const auto& p = m.params;
  const std::ptrdiff_t pad = static_cast<std::ptrdiff_t>(d.kernel / 2);

  std::vector<double> dz(d.dense);
  for (std::size_t j = 0; j < d.dense; ++j) {
    const double e = tr.out[j];
    dz[j] = d_out[j] * e * (1.0 - e);
    grad.dense_b[j] += dz[j];
  }
  std::vector<double> dg(d.filters, 0.0);
  for (std::size_t i = 0; i < d.filters; ++i) {
    const double gi = tr.g[i];
    double* grow = &grad.dense_w[i * d.dense];
    if (gi != 0.0) {
      for (std::size_t j = 0; j < d.dense; ++j) grow[j] += gi * dz[j];
    }
    dg[i] = dot(&p.dense_w[i * d.dense], dz.data(), d.dense);
  }

  // Global max and pool 2 route each filter's gradient to a single row of
  // the second conv output.
  std::vector<double> dp1(d.len1 * d.filters, 0.0);
  for (std::size_t f = 0; f < d.filters; ++f) {
    const std::size_t t2 = tr.argg[f];
    const std::size_t t = tr.arg2[t2 * d.filters + f];
    if (tr.h2[t * d.filters + f] <= 0.0 || dg[f] == 0.0) continue;
    const double delta = dg[f];
    grad.conv2_b[f] += delta;
    for (std::size_t k = 0; k < d.kernel; ++k) {
      const std::ptrdiff_t r = static_cast<std::ptrdiff_t>(t + k) - pad;
      if (r < 0 || r >= static_cast<std::ptrdiff_t>(d.len1)) continue;
      const std::size_t woff = (f * d.kernel + k) * d.filters;
      const double* in = &tr.p1[r * d.filters];
      double* gw = &grad.conv2_w[woff];
      const double* w = &p.conv2_w[woff];
      double* din = &dp1[r * d.filters];
      for (std::size_t c = 0; c < d.filters; ++c) {
        gw[c] += delta * in[c];
        din[c] += delta * w[c];
      }
    }
  }

  std::vector<double> dx0(d.len * d.embed, 0.0);
  for (std::size_t i = 0; i < d.len1; ++i) {
    for (std::size_t f = 0; f < d.filters; ++f) {
      const double delta = dp1[i * d.filters + f];
      if (delta == 0.0) continue;
      const std::size_t t = tr.arg1[i * d.filters + f];
      if (tr.h1[t * d.filters + f] <= 0.0) continue;
      grad.conv1_b[f] += delta;
      for (std::size_t k = 0; k < d.kernel; ++k) {
        const std::ptrdiff_t r = static_cast<std::ptrdiff_t>(t + k) - pad;
        if (r < 0 || r >= static_cast<std::ptrdiff_t>(d.len)) continue;
        const std::size_t woff = (f * d.kernel + k) * d.embed;
        const double* in = &tr.x0[r * d.embed];
        double* gw = &grad.conv1_w[woff];
        const double* w = &p.conv1_w[woff];
        double* din = &dx0[r * d.embed];
        for (std::size_t c = 0; c < d.embed; ++c) {
          gw[c] += delta * in[c];
          din[c] += delta * w[c];
        }
      }
    }
  }

  for (std::size_t t = 0; t < d.len; ++t) {
    double* ge = &grad.embedding[x.indices[t] * d.embed];
    const double* src = &dx0[t * d.embed];
    for (std::size_t c = 0; c < d.embed; ++c) ge[c] += src[c];
  }
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Returns the pair loss and accumulates its gradient into `grad`.
double accumulate_pair(const SiameseModel& m, const TrainingPair& pair,
                       Trace& ta, Trace& tb, Parameters& grad,
                       double* similarity = nullptr) {
  forward(m, pair.a, ta);
  forward(m, pair.b, tb);
  const double dist = l1_distance(ta.out, tb.out);
  const double p = std::exp(-dist);
  if (similarity) *similarity = p;
  const double loss = pair_loss(p, pair.label);
  // Inside the clamp range dL/dp = -y/p + (1-y)/(1-p), and dp/dD = -p.
  double dl_dd = 0.0;
  if (p > kProbabilityEpsilon && p < 1.0 - kProbabilityEpsilon) {
    const double y = pair.label;
    const double dl_dp = -y / p + (1.0 - y) / (1.0 - p);
    dl_dd = -p * dl_dp;
  }
  if (dl_dd == 0.0) return loss;
  const std::size_t n = ta.out.size();
  std::vector<double> da(n), db(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = sign(ta.out[j] - tb.out[j]);
    da[j] = dl_dd * s;
    db[j] = -dl_dd * s;
  }
  backward(m, pair.a, ta, da, grad);
  backward(m, pair.b, tb, db, grad);
  return loss;
}

// --- little-endian binary helpers ---

template <typename T>
void put(std::string& out, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes, bytes + sizeof(T));
  }
  out.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    if (pos_ + sizeof(T) > bytes_.size()) {
      throw Error(ErrorKind::Format, "truncated model file");
    }
    unsigned char raw[sizeof(T)];
    std::memcpy(raw, bytes_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
      std::reverse(raw, raw + sizeof(T));
    }
    pos_ += sizeof(T);
    T v;
    std::memcpy(&v, raw, sizeof(T));
    return v;
  }

  std::string take(std::size_t n) {
    if (pos_ + n > bytes_.size()) throw Error(ErrorKind::Format, "truncated model file");
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

constexpr char kMagic[8] = {'T', 'S', 'G', 'S', 'I', 'A', 'M', '\0'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

Parameters Parameters::zeros_like() const {
  Parameters z = *this;
  for (auto* t : z.tensors()) std::fill(t->begin(), t->end(), 0.0);
  return z;
}

Parameters make_parameters(std::size_t vocab_size, const ModelShape& s) {
  Parameters p;
  p.embedding.assign(vocab_size * s.embed_dim, 0.0);
  p.conv1_w.assign(s.filters * s.kernel * s.embed_dim, 0.0);
  p.conv1_b.assign(s.filters, 0.0);
  p.conv2_w.assign(s.filters * s.kernel * s.filters, 0.0);
  p.conv2_b.assign(s.filters, 0.0);
  p.dense_w.assign(s.filters * s.dense_dim, 0.0);
  p.dense_b.assign(s.dense_dim, 0.0);
  return p;
}

SiameseModel init_model(std::size_t vocab_size, const Hyper& hyper,
                        const ModelShape& shape) {
  if (vocab_size < 2) throw Error(ErrorKind::InvalidArgument, "vocabulary too small");
  if (shape.kernel == 0 || shape.filters == 0 || shape.embed_dim == 0 ||
      shape.dense_dim == 0) {
    throw Error(ErrorKind::InvalidArgument, "model dimensions must be positive");
  }
  SiameseModel m;
  m.vocab_size = vocab_size;
  m.shape = shape;
  m.hyper = hyper;
  m.params = make_parameters(vocab_size, shape);
  Rng rng(hyper.seed);
  for (auto* t : m.params.tensors()) {
    for (auto& v : *t) v = rng.uniform(-hyper.init_scale, hyper.init_scale);
  }
  return m;
}

Embedding embed(const SiameseModel& model, const IndexSequence& x) {
  Trace tr;
  forward(model, x, tr);
  return tr.out;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

double pair_similarity(const SiameseModel& model, const IndexSequence& a,
                       const IndexSequence& b) {
  return std::exp(-l1_distance(embed(model, a), embed(model, b)));
}

double pair_loss(double p, int y) {
  const double pc = std::clamp(p, kProbabilityEpsilon, 1.0 - kProbabilityEpsilon);
  return y == 1 ? -std::log(pc) : -std::log(1.0 - pc);
}

PairGradient pair_loss_gradient(const SiameseModel& model,
                                const TrainingPair& pair) {
  PairGradient out;
  out.grad = model.params.zeros_like();
  Trace ta, tb;
  out.loss = accumulate_pair(model, pair, ta, tb, out.grad, &out.similarity);
  return out;
}

TrainResult train(std::span<const TrainingPair> pairs, std::size_t vocab_size,
                  const Hyper& hyper, const ModelShape& shape) {
  const bool has_pos = std::any_of(pairs.begin(), pairs.end(),
                                   [](const auto& p) { return p.label == 1; });
  const bool has_neg = std::any_of(pairs.begin(), pairs.end(),
                                   [](const auto& p) { return p.label == 0; });
  if (!has_pos) throw Error(ErrorKind::NoPositivePairs, "training requires a positive pair");
  if (!has_neg) throw Error(ErrorKind::NoNegativePairs, "training requires a negative pair");
  if (hyper.batch_size == 0) throw Error(ErrorKind::InvalidArgument, "batch_size must be >= 1");

  TrainResult result{init_model(vocab_size, hyper, shape), {}};
  SiameseModel& m = result.model;

  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kAdamEps = 1e-8;
  Parameters grad = m.params.zeros_like();
  Parameters first = grad;
  Parameters second = grad;

  // The shuffle stream is decorrelated from the initializer stream.
  Rng rng(hyper.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> order(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  Trace ta, tb;
  std::uint64_t step = 0;
  for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_loss = 0.0;
    for (std::size_t begin = 0; begin < order.size(); begin += hyper.batch_size) {
      const std::size_t end = std::min(order.size(), begin + hyper.batch_size);
      for (auto* t : grad.tensors()) std::fill(t->begin(), t->end(), 0.0);
      for (std::size_t i = begin; i < end; ++i) {
        epoch_loss += accumulate_pair(m, pairs[order[i]], ta, tb, grad);
      }
      const double scale = 1.0 / static_cast<double>(end - begin);
      ++step;
      const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
      auto params = m.params.tensors();
      auto grads = grad.tensors();
      auto m1 = first.tensors();
      auto m2 = second.tensors();
      for (std::size_t k = 0; k < Parameters::kTensorCount; ++k) {
        auto& w = *params[k];
        const auto& g = *grads[k];
        auto& mm = *m1[k];
        auto& vv = *m2[k];
        for (std::size_t i = 0; i < w.size(); ++i) {
          const double gi = g[i] * scale;
          mm[i] = kBeta1 * mm[i] + (1.0 - kBeta1) * gi;
          vv[i] = kBeta2 * vv[i] + (1.0 - kBeta2) * gi * gi;
          const double mhat = mm[i] / c1;
          const double vhat = vv[i] / c2;
          w[i] -= hyper.learning_rate * mhat / (std::sqrt(vhat) + kAdamEps);
        }
      }
    }
    result.epoch_loss.push_back(
        order.empty() ? 0.0 : epoch_loss / static_cast<double>(order.size()));
  }
  return result;
}

std::vector<TrainingPair> sample_pairs(
    std::span<const std::pair<IndexSequence, std::string>> examples,
    std::uint64_t seed, std::size_t n_pairs) {
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    by_class[examples[i].second].push_back(i);
  }
  if (by_class.size() < 2) {
    throw Error(ErrorKind::SingleClassCorpus, "pair sampling needs at least two classes");
  }
  std::vector<const std::vector<std::size_t>*> classes;
  for (const auto& [name, members] : by_class) classes.push_back(&members);

  Rng rng(seed);
  std::vector<TrainingPair> pairs;
  pairs.reserve(n_pairs);
  for (std::size_t n = 0; n < n_pairs; ++n) {
    TrainingPair tp;
    if (n % 2 == 0) {
      const auto& members = *classes[rng.below(classes.size())];
      std::size_t i = members[rng.below(members.size())];
      std::size_t j = i;
      if (members.size() > 1) {
        std::size_t pick = rng.below(members.size() - 1);
        j = members[pick];
        if (j == i) j = members.back();
      }
      tp = {examples[i].first, examples[j].first, 1};
    } else {
      std::size_t ca = rng.below(classes.size());
      std::size_t cb = rng.below(classes.size() - 1);
      if (cb >= ca) ++cb;
      const auto& ma = *classes[ca];
      const auto& mb = *classes[cb];
      tp = {examples[ma[rng.below(ma.size())]].first,
            examples[mb[rng.below(mb.size())]].first, 0};
    }
    pairs.push_back(std::move(tp));
  }
  return pairs;
}

std::string serialize_model(const SiameseModel& m) {
  std::string out(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kVersion);
  put<std::uint64_t>(out, m.vocab_size);
  put<std::uint64_t>(out, m.hyper.max_len);
  put<std::uint64_t>(out, m.hyper.seed);
  put<std::uint64_t>(out, m.shape.embed_dim);
  put<std::uint64_t>(out, m.shape.filters);
  put<std::uint64_t>(out, m.shape.kernel);
  put<std::uint64_t>(out, m.shape.dense_dim);
  put<double>(out, m.hyper.learning_rate);
  put<std::uint64_t>(out, m.hyper.epochs);
  put<std::uint64_t>(out, m.hyper.batch_size);
  put<double>(out, m.hyper.init_scale);
  for (const auto* t : m.params.tensors()) {
    put<std::uint64_t>(out, t->size());
    for (double v : *t) put<double>(out, v);
  }
  return out;
}

SiameseModel parse_model(const std::string& bytes) {
  Reader in(bytes);
  if (in.take(sizeof(kMagic)) != std::string(kMagic, sizeof(kMagic))) {
    throw Error(ErrorKind::Format, "not a model file");
  }
  if (auto v = in.get<std::uint32_t>(); v != kVersion) {
    throw Error(ErrorKind::Format, "unsupported model version " + std::to_string(v));
  }
  SiameseModel m;
  m.vocab_size = in.get<std::uint64_t>();
  m.hyper.max_len = in.get<std::uint64_t>();
  m.hyper.seed = in.get<std::uint64_t>();
  m.shape.embed_dim = in.get<std::uint64_t>();
  m.shape.filters = in.get<std::uint64_t>();
  m.shape.kernel = in.get<std::uint64_t>();
  m.shape.dense_dim = in.get<std::uint64_t>();
  m.hyper.learning_rate = in.get<double>();
  m.hyper.epochs = in.get<std::uint64_t>();
  m.hyper.batch_size = in.get<std::uint64_t>();
  m.hyper.init_scale = in.get<double>();
  m.params = make_parameters(m.vocab_size, m.shape);
  for (auto* t : m.params.tensors()) {
    if (in.get<std::uint64_t>() != t->size()) {
      throw Error(ErrorKind::Format, "tensor size does not match header");
    }
    for (auto& v : *t) {
      v = in.get<double>();
      if (!std::isfinite(v)) throw Error(ErrorKind::Format, "non-finite parameter");
    }
  }
  if (!in.done()) throw Error(ErrorKind::Format, "trailing bytes in model file");
  return m;
}

void save_model(const SiameseModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  const std::string bytes = serialize_model(model);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

SiameseModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace tsg
