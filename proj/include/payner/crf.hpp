#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>
#include <zlib.h>

#include "payner/eval.hpp"
#include "payner/features.hpp"
#include "payner/gazetteer.hpp"
#include "payner/lbfgs.hpp"
#include "payner/spans.hpp"
#include "payner/types.hpp"

namespace payner {

inline constexpr std::size_t kBosRow = kNumLabels;  // transition row for the sequence start

struct TrainConfig {
  double l2_lambda = 0.1;
  std::size_t max_iterations = 200;
  std::size_t prune_threshold = 2;
  double convergence_tol = 1e-6;
  std::size_t lbfgs_history = 10;
  std::uint64_t seed = 42;
  std::size_t workers = 1;  // gradient threads; results do not depend on it

  void validate() const {
    if (!(l2_lambda >= 0.0) || !std::isfinite(l2_lambda)) throw DataError("l2_lambda must be finite and >= 0");
    if (max_iterations < 1) throw DataError("max_iterations must be >= 1");
    if (!(convergence_tol >= 0.0)) throw DataError("convergence_tol must be >= 0");
    if (workers < 1) throw DataError("workers must be >= 1");
  }

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

/// All 13 labels in model order: O, then B-/I- per entity type.
inline const std::array<Label, kNumLabels>& model_labels() {
  static const auto labels = [] {
    std::array<Label, kNumLabels> a{};
    for (std::size_t i = 0; i < kNumLabels; ++i) a[i] = Label::from_id(i);
    return a;
  }();
  return labels;
}

/// BIO mask over (previous label or BOS row, label).
inline const std::array<bool, (kNumLabels + 1) * kNumLabels>& bio_mask() {
  static const auto mask = [] {
    std::array<bool, (kNumLabels + 1) * kNumLabels> m{};
    for (std::size_t p = 0; p <= kNumLabels; ++p)
      for (std::size_t y = 0; y < kNumLabels; ++y) {
        std::optional<Label> prev;
        if (p < kNumLabels) prev = Label::from_id(p);
        m[p * kNumLabels + y] = bio_transition_allowed(prev, Label::from_id(y));
      }
    return m;
  }();
  return mask;
}

/// Read-only view of model weights; training evaluates views over the
/// optimizer's parameter vector without copying.
struct WeightsView {
  const double* emission = nullptr;    // num_features x 13, feature-major
  const double* transition = nullptr;  // 14 x 13, BOS row last
  std::size_t num_features = 0;

  double trans(std::size_t prev, std::size_t y) const { return transition[prev * kNumLabels + y]; }
};

struct CrfModel {
  FeatureIndex features;
  std::vector<double> emission_weights;
  std::vector<double> transition_weights = std::vector<double>((kNumLabels + 1) * kNumLabels, 0.0);
  TrainConfig config;

  CrfModel() = default;
  explicit CrfModel(FeatureIndex index, TrainConfig cfg = {})
      : features(std::move(index)), emission_weights(features.size() * kNumLabels, 0.0), config(cfg) {}

  static const std::array<Label, kNumLabels>& labels() { return model_labels(); }
  std::size_t num_features() const { return features.size(); }
  std::size_t num_weights() const { return emission_weights.size() + transition_weights.size(); }

  double& emission(FeatureId f, std::size_t y) { return emission_weights[f * kNumLabels + y]; }
  double emission(FeatureId f, std::size_t y) const { return emission_weights[f * kNumLabels + y]; }
  double& transition(std::size_t prev, std::size_t y) { return transition_weights[prev * kNumLabels + y]; }
  double transition(std::size_t prev, std::size_t y) const { return transition_weights[prev * kNumLabels + y]; }

  WeightsView view() const { return {emission_weights.data(), transition_weights.data(), features.size()}; }

  /// Parameter vector layout used by training: emissions then transitions.
  std::vector<double> parameters() const {
    std::vector<double> p(emission_weights);
    p.insert(p.end(), transition_weights.begin(), transition_weights.end());
    return p;
  }
  void set_parameters(const std::vector<double>& p) {
    if (p.size() != num_weights()) throw std::invalid_argument("parameter vector has wrong size");
    std::copy(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(emission_weights.size()), emission_weights.begin());
    std::copy(p.begin() + static_cast<std::ptrdiff_t>(emission_weights.size()), p.end(), transition_weights.begin());
  }
};

inline WeightsView view_of(const std::vector<double>& params, std::size_t num_features) {
  return {params.data(), params.data() + num_features * kNumLabels, num_features};
}

namespace detail {

inline double log_sum_exp(const double* v, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, v[i]);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::exp(v[i] - m);
  return m + std::log(s);
}

/// unary[i*L + y] = sum of emission weights of active features under y.
inline void unary_scores(const WeightsView& w, const SequenceFeatures& feats, std::vector<double>& unary) {
  constexpr std::size_t L = kNumLabels;
  unary.assign(feats.size() * L, 0.0);
  for (std::size_t i = 0; i < feats.size(); ++i) {
    double* u = &unary[i * L];
    for (FeatureId f : feats[i]) {
      if (f >= w.num_features) continue;
      const double* e = w.emission + static_cast<std::size_t>(f) * L;
      for (std::size_t y = 0; y < L; ++y) u[y] += e[y];
    }
  }
}

/// exp(T - tmax) for the 13 x 13 block; tmax returned.
inline double shifted_exp_transitions(const WeightsView& w, std::array<double, kNumLabels * kNumLabels>& out) {
  double tmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < kNumLabels * kNumLabels; ++i) tmax = std::max(tmax, w.transition[i]);
  for (std::size_t i = 0; i < kNumLabels * kNumLabels; ++i) out[i] = std::exp(w.transition[i] - tmax);
  return tmax;
}

struct Lattice {
  std::vector<double> unary, alpha, beta;
  std::array<double, kNumLabels * kNumLabels> exp_t{};
  double tmax = 0.0;
  double log_z = 0.0;
};

/// Log-space forward pass. Each step factors out the largest incoming alpha
/// and the largest transition weight before exponentiating.
inline void forward(const WeightsView& w, const SequenceFeatures& feats, Lattice& lat, bool with_unary = true) {
  constexpr std::size_t L = kNumLabels;
  const std::size_t n = feats.size();
  if (with_unary) unary_scores(w, feats, lat.unary);
  lat.tmax = shifted_exp_transitions(w, lat.exp_t);
  lat.alpha.assign(n * L, 0.0);
  for (std::size_t y = 0; y < L; ++y) lat.alpha[y] = w.trans(kBosRow, y) + lat.unary[y];
  std::array<double, L> a{};
  for (std::size_t i = 1; i < n; ++i) {
    const double* prev = &lat.alpha[(i - 1) * L];
    double m = *std::max_element(prev, prev + L);
    for (std::size_t p = 0; p < L; ++p) a[p] = std::exp(prev[p] - m);
    double* cur = &lat.alpha[i * L];
    for (std::size_t y = 0; y < L; ++y) {
      double s = 0.0;
      for (std::size_t p = 0; p < L; ++p) s += a[p] * lat.exp_t[p * L + y];
      cur[y] = lat.unary[i * L + y] + m + lat.tmax + std::log(s);
    }
  }
  lat.log_z = log_sum_exp(&lat.alpha[(n - 1) * L], L);
}

inline void backward(Lattice& lat, std::size_t n) {
  constexpr std::size_t L = kNumLabels;
  lat.beta.assign(n * L, 0.0);
  std::array<double, L> b{};
  for (std::size_t i = n - 1; i-- > 0;) {
    const double* next = &lat.beta[(i + 1) * L];
    const double* u = &lat.unary[(i + 1) * L];
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < L; ++y) m = std::max(m, u[y] + next[y]);
    for (std::size_t y = 0; y < L; ++y) b[y] = std::exp(u[y] + next[y] - m);
    double* cur = &lat.beta[i * L];
    for (std::size_t p = 0; p < L; ++p) {
      double s = 0.0;
      for (std::size_t y = 0; y < L; ++y) s += lat.exp_t[p * L + y] * b[y];
      cur[p] = m + lat.tmax + std::log(s);
    }
  }
}

}  // namespace detail

inline void check_sequence(const SequenceFeatures& feats, const char* op) {
  if (feats.empty()) throw std::invalid_argument(std::string(op) + ": empty sequence");
}

/// Unnormalized log score of a labeling.
inline double sequence_score(const WeightsView& w, const SequenceFeatures& feats, const LabelSequence& labels) {
  if (feats.size() != labels.size())
    throw std::invalid_argument("sequence_score: " + std::to_string(feats.size()) + " positions but " +
                                std::to_string(labels.size()) + " labels");
  double s = 0.0;
  std::size_t prev = kBosRow;
  for (std::size_t i = 0; i < feats.size(); ++i) {
    const std::size_t y = labels[i].id();
    for (FeatureId f : feats[i])
      if (f < w.num_features) s += w.emission[static_cast<std::size_t>(f) * kNumLabels + y];
    s += w.trans(prev, y);
    prev = y;
  }
  return s;
}

inline double sequence_score(const CrfModel& m, const SequenceFeatures& feats, const LabelSequence& labels) {
  return sequence_score(m.view(), feats, labels);
}

inline double log_partition(const WeightsView& w, const SequenceFeatures& feats) {
  check_sequence(feats, "log_partition");
  detail::Lattice lat;
  detail::forward(w, feats, lat);
  return lat.log_z;
}

inline double log_partition(const CrfModel& m, const SequenceFeatures& feats) {
  return log_partition(m.view(), feats);
}

struct Marginals {
  std::size_t length = 0;
  std::vector<double> unary;  // length x 13
  std::vector<double> pair;   // (length - 1) x 13 x 13; entry i covers positions (i, i+1)
  double log_z = 0.0;

  double at(std::size_t i, std::size_t y) const { return unary[i * kNumLabels + y]; }
  /// P(y_{i-1} = p, y_i = y), for i >= 1.
  double pair_at(std::size_t i, std::size_t p, std::size_t y) const {
    return pair[((i - 1) * kNumLabels + p) * kNumLabels + y];
  }
};

namespace detail {

/// Adds expected feature counts of one sequence into `grad` (same layout as
/// the parameter vector) and returns log Z. Pair marginals are optional.
inline double expectations(const WeightsView& w, const SequenceFeatures& feats, Lattice& lat, double* grad,
                           Marginals* out = nullptr) {
  constexpr std::size_t L = kNumLabels;
  const std::size_t n = feats.size();
  forward(w, feats, lat);
  backward(lat, n);
  const double log_z = lat.log_z;
  if (!std::isfinite(log_z)) return log_z;
  if (out) {
    out->length = n;
    out->log_z = log_z;
    out->unary.assign(n * L, 0.0);
    out->pair.assign(n > 1 ? (n - 1) * L * L : 0, 0.0);
  }
  double* g_trans = grad ? grad + w.num_features * L : nullptr;
  std::array<double, L> p_unary{};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t y = 0; y < L; ++y) p_unary[y] = std::exp(lat.alpha[i * L + y] + lat.beta[i * L + y] - log_z);
    if (out) std::copy(p_unary.begin(), p_unary.end(), out->unary.begin() + static_cast<std::ptrdiff_t>(i * L));
    if (grad) {
      for (FeatureId f : feats[i]) {
        if (f >= w.num_features) continue;
        double* g = grad + static_cast<std::size_t>(f) * L;
        for (std::size_t y = 0; y < L; ++y) g[y] += p_unary[y];
      }
      if (i == 0)
        for (std::size_t y = 0; y < L; ++y) g_trans[kBosRow * L + y] += p_unary[y];
    }
    if (i == 0) continue;
    // Pair marginals for (i-1, i).
    const double* a_prev = &lat.alpha[(i - 1) * L];
    const double* u = &lat.unary[i * L];
    const double* b = &lat.beta[i * L];
    const double ma = *std::max_element(a_prev, a_prev + L);
    double mb = -std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < L; ++y) mb = std::max(mb, u[y] + b[y]);
    std::array<double, L> ea{}, eb{};
    for (std::size_t p = 0; p < L; ++p) ea[p] = std::exp(a_prev[p] - ma);
    for (std::size_t y = 0; y < L; ++y) eb[y] = std::exp(u[y] + b[y] - mb);
    const double scale = std::exp(ma + mb + lat.tmax - log_z);
    for (std::size_t p = 0; p < L; ++p) {
      const double ap = ea[p] * scale;
      for (std::size_t y = 0; y < L; ++y) {
        const double pr = ap * lat.exp_t[p * L + y] * eb[y];
        if (grad) g_trans[p * L + y] += pr;
        if (out) out->pair[((i - 1) * L + p) * L + y] = pr;
      }
    }
  }
  return log_z;
}

}  // namespace detail

inline Marginals forward_backward(const WeightsView& w, const SequenceFeatures& feats) {
  check_sequence(feats, "forward_backward");
  detail::Lattice lat;
  Marginals m;
  detail::expectations(w, feats, lat, nullptr, &m);
  return m;
}

inline Marginals forward_backward(const CrfModel& m, const SequenceFeatures& feats) {
  return forward_backward(m.view(), feats);
}

/// Max-product decoding. Ties go to the lower label index.
inline LabelSequence viterbi_decode(const WeightsView& w, const SequenceFeatures& feats, bool enforce_bio = true) {
  check_sequence(feats, "viterbi_decode");
  constexpr std::size_t L = kNumLabels;
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const std::size_t n = feats.size();
  const auto& mask = bio_mask();
  std::vector<double> unary;
  detail::unary_scores(w, feats, unary);
  std::array<double, (L + 1) * L> t{};
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = enforce_bio && !mask[i] ? kNegInf : w.transition[i];

  std::vector<std::uint8_t> back(n * L, 0);
  std::array<double, L> delta{}, next{};
  for (std::size_t y = 0; y < L; ++y) delta[y] = t[kBosRow * L + y] + unary[y];
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t y = 0; y < L; ++y) {
      double best = kNegInf;
      std::size_t arg = 0;
      bool any = false;
      for (std::size_t p = 0; p < L; ++p) {
        const double s = delta[p] + t[p * L + y];
        if (!any || s > best) {
          best = s;
          arg = p;
          any = true;
        }
      }
      next[y] = best + unary[i * L + y];
      back[i * L + y] = static_cast<std::uint8_t>(arg);
    }
    delta = next;
  }
  std::size_t y = 0;
  for (std::size_t k = 1; k < L; ++k)
    if (delta[k] > delta[y]) y = k;
  LabelSequence out(n);
  for (std::size_t i = n; i-- > 0;) {
    out[i] = Label::from_id(y);
    y = back[i * L + y];
  }
  return out;
}

inline LabelSequence viterbi_decode(const CrfModel& m, const SequenceFeatures& feats, bool enforce_bio = true) {
  return viterbi_decode(m.view(), feats, enforce_bio);
}

// ---------------------------------------------------------------------------
// Training objective

struct TrainingExample {
  std::string id;
  SequenceFeatures features;
  LabelSequence labels;
};

inline void check_example(const TrainingExample& e) {
  if (e.features.empty()) throw DataError("message '" + e.id + "' has no tokens");
  if (e.features.size() != e.labels.size())
    throw DataError("message '" + e.id + "': token/label count mismatch");
  if (!is_valid_bio(e.labels)) throw DataError("message '" + e.id + "': labels are not valid BIO");
}

inline std::vector<TrainingExample> make_examples(const FeatureIndex& index, const Corpus& corpus,
                                                  const Gazetteers& gaz) {
  std::vector<TrainingExample> out;
  out.reserve(corpus.size());
  for (const auto& m : corpus) {
    if (m.tokens.size() != m.labels.size()) throw DataError("message '" + m.id() + "': token/label count mismatch");
    out.push_back({m.id(), featurize(index, m, gaz), m.labels});
    check_example(out.back());
  }
  return out;
}

/// Regularized negative log-likelihood over a fixed example set.
///
/// Messages are processed in fixed chunks; each chunk accumulates into its
/// own buffer and chunks are summed in index order, so the result is the same
/// bit pattern for any worker count.
class CrfObjective {
 public:
  static constexpr std::size_t kChunk = 64;

  CrfObjective(const std::vector<TrainingExample>& examples, std::size_t num_features, double l2_lambda,
               std::size_t workers = 1)
      : examples_(examples), num_features_(num_features), lambda_(l2_lambda), workers_(std::max<std::size_t>(1, workers)) {
    for (const auto& e : examples_) check_example(e);
    empirical_.assign(num_weights(), 0.0);
    for (const auto& e : examples_) {
      std::size_t prev = kBosRow;
      for (std::size_t i = 0; i < e.labels.size(); ++i) {
        const std::size_t y = e.labels[i].id();
        for (FeatureId f : e.features[i])
          if (f < num_features_) empirical_[static_cast<std::size_t>(f) * kNumLabels + y] += 1.0;
        empirical_[num_features_ * kNumLabels + prev * kNumLabels + y] += 1.0;
        prev = y;
      }
    }
  }

  std::size_t num_weights() const { return num_features_ * kNumLabels + (kNumLabels + 1) * kNumLabels; }
  const std::vector<double>& empirical() const { return empirical_; }

  double operator()(const std::vector<double>& w, std::vector<double>& grad) const {
    const std::size_t nw = num_weights();
    if (w.size() != nw) throw std::invalid_argument("weight vector has wrong size");
    const WeightsView view = view_of(w, num_features_);
    const std::size_t n_chunks = (examples_.size() + kChunk - 1) / kChunk;
    grad.assign(nw, 0.0);
    double total = 0.0;

    auto run_chunk = [&](std::size_t c, std::vector<double>& buf, detail::Lattice& lat) {
      buf.assign(nw, 0.0);
      double s = 0.0;
      const std::size_t end = std::min(examples_.size(), (c + 1) * kChunk);
      for (std::size_t k = c * kChunk; k < end; ++k) {
        const double lz = detail::expectations(view, examples_[k].features, lat, buf.data());
        if (!std::isfinite(lz)) throw DataError("non-finite objective on message '" + examples_[k].id + "'");
        s += lz;
      }
      return s;
    };

    const std::size_t workers = std::min(workers_, std::max<std::size_t>(1, n_chunks));
    if (workers <= 1) {
      std::vector<double> buf;
      detail::Lattice lat;
      for (std::size_t c = 0; c < n_chunks; ++c) {
        total += run_chunk(c, buf, lat);
        for (std::size_t j = 0; j < nw; ++j) grad[j] += buf[j];
      }
    } else {
      std::vector<std::vector<double>> bufs(n_chunks);
      std::vector<double> sums(n_chunks, 0.0);
      std::vector<std::exception_ptr> errors(n_chunks);
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
          detail::Lattice lat;
          for (std::size_t c; (c = next.fetch_add(1)) < n_chunks;) {
            try {
              sums[c] = run_chunk(c, bufs[c], lat);
            } catch (...) {
              errors[c] = std::current_exception();
            }
          }
        });
      }
      for (auto& th : pool) th.join();
      for (std::size_t c = 0; c < n_chunks; ++c) {
        if (errors[c]) std::rethrow_exception(errors[c]);
        total += sums[c];
        for (std::size_t j = 0; j < nw; ++j) grad[j] += bufs[c][j];
      }
    }

    double dot_emp = 0.0, sq = 0.0;
    for (std::size_t j = 0; j < nw; ++j) {
      dot_emp += w[j] * empirical_[j];
      sq += w[j] * w[j];
      grad[j] += 2.0 * lambda_ * w[j] - empirical_[j];
    }
    return total - dot_emp + lambda_ * sq;
  }

 private:
  const std::vector<TrainingExample>& examples_;
  std::size_t num_features_;
  double lambda_;
  std::size_t workers_;
  std::vector<double> empirical_;
};

struct ObjectiveAndGradient {
  double objective = 0.0;
  std::vector<double> gradient;  // emissions then transitions
};

inline ObjectiveAndGradient nll_and_gradient(const CrfModel& model, const std::vector<TrainingExample>& batch) {
  if (batch.empty()) throw DataError("nll_and_gradient: empty batch");
  CrfObjective obj(batch, model.num_features(), model.config.l2_lambda, model.config.workers);
  ObjectiveAndGradient r;
  r.objective = obj(model.parameters(), r.gradient);
  return r;
}

inline ObjectiveAndGradient nll_and_gradient(const CrfModel& model, const Corpus& batch,
                                             const Gazetteers& gaz = default_gazetteers()) {
  return nll_and_gradient(model, make_examples(model.features, batch, gaz));
}

// ---------------------------------------------------------------------------
// Training

struct TrainProgress {
  std::size_t iteration = 0;
  double objective = 0.0;
  double gradient_norm = 0.0;
  double dev_micro_f1 = std::numeric_limits<double>::quiet_NaN();  // NaN without a dev set
};

using TrainLogger = std::function<void(const TrainProgress&)>;

struct TrainResult {
  CrfModel model;
  std::size_t iterations = 0;
  bool converged = false;
  std::string stop_reason;
  double final_objective = 0.0;
};

inline double micro_f1_of(const WeightsView& w, const std::vector<TrainingExample>& dev) {
  Counts c;
  for (const auto& e : dev) {
    const auto pred = extract_spans(viterbi_decode(w, e.features, true));
    c += count_matches(extract_spans(e.labels), pred).micro;
  }
  return prf(c).f1;
}

inline TrainResult train_detailed(const Corpus& train_corpus, const Corpus& dev_corpus, const Gazetteers& gaz,
                                  const TrainConfig& config, const TrainLogger& log = {}) {
  config.validate();
  if (train_corpus.empty()) throw DataError("train: empty training corpus");
  FeatureIndex index = build_feature_index(train_corpus, config.prune_threshold, gaz);
  if (index.empty())
    throw DataError("train: feature index is empty after pruning (threshold " +
                    std::to_string(config.prune_threshold) + ")");
  const auto train_ex = make_examples(index, train_corpus, gaz);
  const auto dev_ex = make_examples(index, dev_corpus, gaz);
  CrfModel model(std::move(index), config);
  CrfObjective objective(train_ex, model.num_features(), config.l2_lambda, config.workers);

  LbfgsParams params;
  params.history = config.lbfgs_history;
  params.max_iterations = config.max_iterations;
  params.convergence_tol = config.convergence_tol;
  const std::size_t nf = model.num_features();
  auto callback = [&](std::size_t iter, double f, double gnorm, const std::vector<double>& x) {
    if (log) {
      TrainProgress p{iter, f, gnorm};
      if (!dev_ex.empty()) p.dev_micro_f1 = micro_f1_of(view_of(x, nf), dev_ex);
      log(p);
    }
    return true;
  };
  auto res = lbfgs_minimize(std::cref(objective), model.parameters(), params, callback);
  model.set_parameters(res.x);
  for (double v : res.x)
    if (!std::isfinite(v)) throw DataError("train: optimizer produced non-finite weights");
  return {std::move(model), res.iterations, res.converged, res.stop_reason, res.objective};
}

inline CrfModel train(const Corpus& train_corpus, const Corpus& dev_corpus, const Gazetteers& gaz,
                      const TrainConfig& config, const TrainLogger& log = {}) {
  return train_detailed(train_corpus, dev_corpus, gaz, config, log).model;
}

// ---------------------------------------------------------------------------
// Tagging helpers

inline LabelSequence crf_tag(const CrfModel& model, const PaymentMessage& message, const TokenSequence& tokens,
                             const Gazetteers& gaz = default_gazetteers(), bool enforce_bio = true) {
  if (tokens.empty()) return {};
  return viterbi_decode(model, featurize(model.features, message, tokens, gaz), enforce_bio);
}

inline Predictions crf_predict(const CrfModel& model, const Corpus& corpus,
                               const Gazetteers& gaz = default_gazetteers()) {
  Predictions p;
  for (const auto& m : corpus) p[m.id()] = extract_spans(crf_tag(model, m.message, m.tokens, gaz), m.id());
  return p;
}

// ---------------------------------------------------------------------------
// Model file

inline constexpr int kModelVersion = 1;

inline nlohmann::json config_to_json(const TrainConfig& c) {
  return {{"l2_lambda", c.l2_lambda},
          {"max_iterations", c.max_iterations},
          {"prune_threshold", c.prune_threshold},
          {"convergence_tol", c.convergence_tol},
          {"lbfgs_history", c.lbfgs_history},
          {"seed", c.seed}};
}

inline TrainConfig config_from_json(const nlohmann::json& j) {
  TrainConfig c;
  c.l2_lambda = j.at("l2_lambda").get<double>();
  c.max_iterations = j.at("max_iterations").get<std::size_t>();
  c.prune_threshold = j.at("prune_threshold").get<std::size_t>();
  c.convergence_tol = j.at("convergence_tol").get<double>();
  c.lbfgs_history = j.at("lbfgs_history").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

inline std::uint32_t crc32_of(std::string_view s) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  crc = ::crc32(crc, reinterpret_cast<const Bytef*>(s.data()), static_cast<uInt>(s.size()));
  return static_cast<std::uint32_t>(crc);
}

/// Canonical JSON: sorted keys, shortest round-trip doubles, one line.
inline std::string serialize_model(const CrfModel& m) {
  for (double v : m.emission_weights)
    if (!std::isfinite(v)) throw DataError("cannot save a model with non-finite weights");
  for (double v : m.transition_weights)
    if (!std::isfinite(v)) throw DataError("cannot save a model with non-finite weights");
  nlohmann::json j;
  j["version"] = kModelVersion;
  nlohmann::json labels = nlohmann::json::array();
  for (auto l : model_labels()) labels.push_back(to_string(l));
  j["labels"] = labels;
  j["features"] = m.features.names();
  j["emission_weights"] = m.emission_weights;
  j["transition_weights"] = m.transition_weights;
  j["config"] = config_to_json(m.config);
  const std::string payload = j.dump();
  j["crc32"] = crc32_of(payload);
  return j.dump() + "\n";
}

inline CrfModel deserialize_model(std::string_view data, const std::string& source = "<model>") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(data);
  } catch (const std::exception&) {
    throw DataError(source + ": model file is truncated or corrupted (checksum cannot be verified)");
  }
  if (!j.is_object() || !j.contains("crc32")) throw DataError(source + ": model file has no checksum");
  std::uint32_t stored = 0;
  try {
    stored = j.at("crc32").get<std::uint32_t>();
  } catch (const std::exception&) {
    throw DataError(source + ": malformed checksum");
  }
  j.erase("crc32");
  if (crc32_of(j.dump()) != stored) throw DataError(source + ": checksum mismatch, model file is corrupted");
  try {
    const int version = j.at("version").get<int>();
    if (version != kModelVersion)
      throw DataError(source + ": unsupported model version " + std::to_string(version) + " (expected " +
                      std::to_string(kModelVersion) + ")");
    const auto labels = j.at("labels").get<std::vector<std::string>>();
    if (labels.size() != kNumLabels) throw DataError(source + ": expected 13 labels");
    for (std::size_t i = 0; i < kNumLabels; ++i)
      if (labels[i] != to_string(model_labels()[i])) throw DataError(source + ": unexpected label order");
    TrainConfig cfg = config_from_json(j.at("config"));
    CrfModel m(FeatureIndex::from_names(j.at("features").get<std::vector<std::string>>(), cfg.prune_threshold), cfg);
    auto em = j.at("emission_weights").get<std::vector<double>>();
    auto tr = j.at("transition_weights").get<std::vector<double>>();
    if (em.size() != m.emission_weights.size() || tr.size() != m.transition_weights.size())
      throw DataError(source + ": weight arrays do not match the feature count");
    m.emission_weights = std::move(em);
    m.transition_weights = std::move(tr);
    return m;
  } catch (const DataError&) {
    throw;
  } catch (const std::exception& e) {
    throw DataError(source + ": malformed model file: " + e.what());
  }
}

inline void save_model(const CrfModel& m, std::ostream& out) { out << serialize_model(m); }

inline void save_model(const CrfModel& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  save_model(m, out);
  if (!out) throw DataError("write to '" + path + "' failed");
}

inline CrfModel load_model(std::istream& in, const std::string& source = "<stream>") {
  std::stringstream ss;
  ss << in.rdbuf();
  return deserialize_model(ss.str(), source);
}

inline CrfModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file '" + path + "'");
  return load_model(in, path);
}

}  // namespace payner
