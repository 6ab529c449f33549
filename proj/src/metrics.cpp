#include "tscan/metrics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "tscan/trainer.hpp"

namespace tscan {

namespace {

constexpr double kEpsFloor = 1e-12;
const double kNan = std::numeric_limits<double>::quiet_NaN();

struct MetricInfo {
  const char* name;
  Direction direction;
};

// Registry of every identifier that can appear in curve files. rpc is
// derived from the holdout-perplexity curve and instability comes from the
// subsample procedure; the rest are per-model.
constexpr MetricInfo kMetricInfos[] = {
    {"perplexity", Direction::minimize},
    {"holdout-perplexity", Direction::minimize},
    {"rpc", Direction::maximize},
    {"aic", Direction::minimize},
    {"aic-sparse", Direction::minimize},
    {"bic", Direction::minimize},
    {"bic-sparse", Direction::minimize},
    {"mdl", Direction::minimize},
    {"mdl-sparse", Direction::minimize},
    {"renyi-0.5", Direction::minimize},
    {"renyi-1", Direction::minimize},
    {"renyi-2", Direction::minimize},
    {"d-avg-cos", Direction::maximize},
    {"d-cls-cos", Direction::maximize},
    {"d-avg-l2", Direction::maximize},
    {"d-cls-l2", Direction::maximize},
    {"d-avg-h", Direction::maximize},
    {"d-cls-h", Direction::maximize},
    {"d-avg-js", Direction::maximize},
    {"d-cls-js", Direction::maximize},
    {"d-spectral", Direction::minimize},
    {"uni-theta-divergence", Direction::maximize},
    {"silhc", Direction::maximize},
    {"chi", Direction::maximize},
    {"coherence", Direction::maximize},
    {"lift", Direction::maximize},
    {"instability", Direction::minimize},
};

MetricValue undefined_value(std::string name, Direction direction, std::string note) {
  return MetricValue{std::move(name), kNan, direction, false, std::move(note)};
}

}  // namespace

const std::vector<std::string>& all_metric_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& info : kMetricInfos) out.emplace_back(info.name);
    return out;
  }();
  return names;
}

Direction metric_direction(std::string_view name) {
  for (const auto& info : kMetricInfos) {
    if (name == info.name) return info.direction;
  }
  throw std::invalid_argument("unknown metric identifier: " + std::string(name));
}

bool is_metric_name(std::string_view name) {
  for (const auto& info : kMetricInfos) {
    if (name == info.name) return true;
  }
  return false;
}

// ---- Likelihood-based metrics ------------------------------------------------

MetricValue perplexity(const TopicModel& model, const Corpus& corpus, Exec exec) {
  if (corpus.total == 0) throw std::invalid_argument("perplexity: corpus has no tokens");
  const double ll = log_likelihood(model, corpus, exec);
  const double value = std::exp(-ll / static_cast<double>(corpus.total));
  return {"perplexity", value, Direction::minimize, true, ""};
}

MetricValue holdout_perplexity(const TopicModel& model, const Corpus& heldout,
                               int fold_in_iterations, Exec exec) {
  if (heldout.total == 0) throw std::invalid_argument("holdout_perplexity: corpus has no tokens");
  const Mat theta = infer_mixtures(model, heldout, fold_in_iterations, exec);
  const double ll = log_likelihood_eval(heldout, model.phi, theta, nullptr, exec);
  const double value = std::exp(-ll / static_cast<double>(heldout.total));
  return {"holdout-perplexity", value, Direction::minimize, true, ""};
}

std::vector<std::pair<int, double>> rpc(const std::vector<std::pair<int, double>>& perplexities) {
  if (perplexities.size() < 2) throw std::invalid_argument("rpc: needs at least 2 points");
  for (std::size_t i = 1; i < perplexities.size(); ++i) {
    if (perplexities[i].first <= perplexities[i - 1].first) {
      throw std::invalid_argument("rpc: topic counts must be strictly increasing");
    }
  }
  std::vector<std::pair<int, double>> out;
  out.reserve(perplexities.size() - 1);
  for (std::size_t i = 1; i < perplexities.size(); ++i) {
    const double dp = std::abs(perplexities[i].second - perplexities[i - 1].second);
    const double dt = static_cast<double>(perplexities[i].first - perplexities[i - 1].first);
    out.emplace_back(perplexities[i].first, dp / dt);
  }
  return out;
}

MetricValue information_criterion(const TopicModel& model, const Corpus& corpus, IcKind kind,
                                  bool sparse) {
  const auto d_count = static_cast<double>(corpus.num_docs());
  const auto t_count = static_cast<double>(model.num_topics());
  if (corpus.num_docs() == 0) throw std::invalid_argument("information_criterion: no documents");

  double n_params;
  if (sparse) {
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < model.phi.size(); ++i) {
      if (model.phi.data()[i] > kEpsFloor) ++nonzero;
    }
    n_params = static_cast<double>(nonzero);
  } else {
    n_params = static_cast<double>(model.vocab_size() - 1) * t_count;
  }

  const double ll = model.log_likelihood;
  double value;
  std::string name;
  switch (kind) {
    case IcKind::aic:
      value = 2.0 * n_params - 2.0 * ll;
      name = "aic";
      break;
    case IcKind::bic:
      value = n_params * std::log(d_count) - 2.0 * ll;
      name = "bic";
      break;
    case IcKind::mdl:
      value = n_params * std::log(t_count * d_count) - 2.0 * ll;
      name = "mdl";
      break;
    default:
      throw std::invalid_argument("information_criterion: unknown kind");
  }
  if (sparse) name += "-sparse";
  return {name, value, Direction::minimize, true, ""};
}

// ---- Distribution-shape metrics ----------------------------------------------

MetricValue renyi_entropy(const TopicModel& model, double threshold_multiplier) {
  if (!(threshold_multiplier > 0.0)) {
    throw std::invalid_argument("renyi_entropy: threshold multiplier must be positive");
  }
  char suffix[32];
  std::snprintf(suffix, sizeof suffix, "%g", threshold_multiplier);
  const std::string name = std::string("renyi-") + suffix;

  const auto t_count = static_cast<double>(model.num_topics());
  if (model.num_topics() < 2) {
    return undefined_value(name, Direction::minimize, "undefined for fewer than 2 topics");
  }
  const auto w_count = static_cast<double>(model.vocab_size());
  const double threshold = threshold_multiplier / w_count;

  double kept_mass = 0.0;
  std::size_t kept = 0;
  for (std::size_t i = 0; i < model.phi.size(); ++i) {
    const double p = model.phi.data()[i];
    if (p > threshold) {
      kept_mass += p;
      ++kept;
    }
  }
  if (kept == 0) {
    return undefined_value(name, Direction::minimize, "no entries above threshold");
  }
  const double energy = -std::log(kept_mass);
  const double density_ratio = static_cast<double>(kept) / (w_count * t_count);
  const double free_energy = energy - t_count * std::log(density_ratio);
  const double value = -free_energy / (t_count - 1.0);
  return {name, value, Direction::minimize, true, ""};
}

namespace {

double column_distance(const Mat& topics, std::size_t a, std::size_t b, TopicDistance distance) {
  const std::size_t w_count = topics.cols();  // topics is T x W, row per topic
  const double* pa = topics.row(a).data();
  const double* pb = topics.row(b).data();
  switch (distance) {
    case TopicDistance::cosine: {
      double dot = 0.0, na = 0.0, nb = 0.0;
      for (std::size_t w = 0; w < w_count; ++w) {
        dot += pa[w] * pb[w];
        na += pa[w] * pa[w];
        nb += pb[w] * pb[w];
      }
      if (na == 0.0 || nb == 0.0) return 0.0;  // cannot happen for stochastic columns
      return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
    }
    case TopicDistance::l2: {
      double sum = 0.0;
      for (std::size_t w = 0; w < w_count; ++w) {
        const double diff = pa[w] - pb[w];
        sum += diff * diff;
      }
      return std::sqrt(sum);
    }
    case TopicDistance::hellinger: {
      double bc = 0.0;
      for (std::size_t w = 0; w < w_count; ++w) bc += std::sqrt(pa[w] * pb[w]);
      return std::sqrt(std::max(0.0, 1.0 - bc));
    }
    case TopicDistance::jensen_shannon: {
      // Base-2 logs so fully disjoint supports score exactly 1.
      double js = 0.0;
      for (std::size_t w = 0; w < w_count; ++w) {
        const double m = 0.5 * (pa[w] + pb[w]);
        if (pa[w] > 0.0) js += 0.5 * pa[w] * std::log2(pa[w] / m);
        if (pb[w] > 0.0) js += 0.5 * pb[w] * std::log2(pb[w] / m);
      }
      return js;
    }
  }
  throw std::invalid_argument("column_distance: unknown distance");
}

const char* distance_tag(TopicDistance distance) {
  switch (distance) {
    case TopicDistance::cosine:
      return "cos";
    case TopicDistance::l2:
      return "l2";
    case TopicDistance::hellinger:
      return "h";
    case TopicDistance::jensen_shannon:
      return "js";
  }
  throw std::invalid_argument("distance_tag: unknown distance");
}

}  // namespace

MetricValue diversity(const TopicModel& model, TopicDistance distance, DiversityMode mode) {
  const std::size_t t_count = model.num_topics();
  if (t_count < 2) throw std::invalid_argument("diversity: needs at least 2 topics");
  const std::size_t w_count = model.vocab_size();

  // Copy topics into rows so each distribution is contiguous.
  Mat topics(t_count, w_count);
  for (std::size_t t = 0; t < t_count; ++t) {
    for (std::size_t w = 0; w < w_count; ++w) topics(t, w) = model.phi(w, t);
  }

  Mat dist(t_count, t_count, 0.0);
  for (std::size_t a = 0; a < t_count; ++a) {
    for (std::size_t b = a + 1; b < t_count; ++b) {
      const double d = column_distance(topics, a, b, distance);
      dist(a, b) = d;
      dist(b, a) = d;
    }
  }

  double value = 0.0;
  if (mode == DiversityMode::avg_pairwise) {
    double sum = 0.0;
    for (std::size_t a = 0; a < t_count; ++a) {
      for (std::size_t b = a + 1; b < t_count; ++b) sum += dist(a, b);
    }
    value = sum / (static_cast<double>(t_count) * static_cast<double>(t_count - 1) / 2.0);
  } else {
    double sum = 0.0;
    for (std::size_t a = 0; a < t_count; ++a) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t b = 0; b < t_count; ++b) {
        if (b != a) nearest = std::min(nearest, dist(a, b));
      }
      sum += nearest;
    }
    value = sum / static_cast<double>(t_count);
  }

  const std::string name = std::string("d-") +
                           (mode == DiversityMode::avg_pairwise ? "avg" : "cls") + "-" +
                           distance_tag(distance);
  return {name, value, Direction::maximize, true, ""};
}

namespace {

double symmetric_kl(std::vector<double> p, std::vector<double> q) {
  // Floor, normalize, then sum both one-sided divergences.
  for (auto* v : {&p, &q}) {
    double sum = 0.0;
    for (double& x : *v) {
      if (x <= 0.0) x = kEpsFloor;
      sum += x;
    }
    for (double& x : *v) x /= sum;
  }
  double kl_pq = 0.0, kl_qp = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    kl_pq += p[i] * std::log(p[i] / q[i]);
    kl_qp += q[i] * std::log(q[i] / p[i]);
  }
  return kl_pq + kl_qp;
}

}  // namespace

MetricValue d_spectral(const TopicModel& model, const Corpus& corpus) {
  const std::size_t t_count = model.num_topics();
  if (t_count < 2) throw std::invalid_argument("d_spectral: needs at least 2 topics");
  if (model.num_docs() != corpus.num_docs()) {
    throw std::invalid_argument("d_spectral: document count mismatch");
  }

  Eigen::MatrixXd phi(model.vocab_size(), t_count);
  for (std::size_t w = 0; w < model.vocab_size(); ++w) {
    for (std::size_t t = 0; t < t_count; ++t) phi(w, t) = model.phi(w, t);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(phi);
  const Eigen::VectorXd& sv = svd.singularValues();  // descending
  std::vector<double> spectrum(sv.data(), sv.data() + sv.size());

  // Length-weighted topic masses from the document mixtures.
  std::vector<double> mass(t_count, 0.0);
  for (std::size_t d = 0; d < corpus.num_docs(); ++d) {
    const double len = static_cast<double>(corpus.doc_len[d]);
    for (std::size_t t = 0; t < t_count; ++t) mass[t] += len * model.theta(d, t);
  }
  std::sort(mass.begin(), mass.end(), std::greater<>());

  std::string note;
  const std::size_t common = std::max(spectrum.size(), mass.size());
  if (spectrum.size() != mass.size()) {
    note = "spectra lengths differ; shorter padded";
    spectrum.resize(common, kEpsFloor);
    mass.resize(common, kEpsFloor);
  }
  const double value = symmetric_kl(std::move(spectrum), std::move(mass));
  return {"d-spectral", value, Direction::minimize, true, note};
}

MetricValue uni_theta_divergence(const TopicModel& model, const Corpus& corpus) {
  if (model.num_docs() != corpus.num_docs()) {
    throw std::invalid_argument("uni_theta_divergence: document count mismatch");
  }
  if (corpus.total == 0) throw std::invalid_argument("uni_theta_divergence: corpus has no tokens");
  const std::size_t t_count = model.num_topics();

  std::vector<double> p(t_count, 0.0);
  for (std::size_t d = 0; d < corpus.num_docs(); ++d) {
    const double weight =
        static_cast<double>(corpus.doc_len[d]) / static_cast<double>(corpus.total);
    for (std::size_t t = 0; t < t_count; ++t) p[t] += model.theta(d, t) * weight;
  }

  const double u = 1.0 / static_cast<double>(t_count);
  double kl = 0.0;
  for (std::size_t t = 0; t < t_count; ++t) {
    kl += u * std::log(u / std::max(p[t], kEpsFloor));
  }
  return {"uni-theta-divergence", kl, Direction::maximize, true, ""};
}

// ---- Clustering metrics -------------------------------------------------------

namespace {

std::vector<int> argmax_labels(const Mat& theta) {
  std::vector<int> labels(theta.rows());
  for (std::size_t d = 0; d < theta.rows(); ++d) {
    const auto row = theta.row(d);
    std::size_t best = 0;
    for (std::size_t t = 1; t < row.size(); ++t) {
      if (row[t] > row[best]) best = t;  // ties keep the lowest index
    }
    labels[d] = static_cast<int>(best);
  }
  return labels;
}

double euclidean(const Mat& points, std::size_t i, std::size_t j) {
  double sum = 0.0;
  const double* a = points.row(i).data();
  const double* b = points.row(j).data();
  for (std::size_t t = 0; t < points.cols(); ++t) {
    const double diff = a[t] - b[t];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

}  // namespace

MetricValue silhouette(const TopicModel& model, Exec exec) {
  const std::size_t d_count = model.num_docs();
  if (d_count < 2) {
    return undefined_value("silhc", Direction::maximize, "fewer than 2 documents");
  }
  const std::vector<int> labels = argmax_labels(model.theta);
  const int k_count = 1 + *std::max_element(labels.begin(), labels.end());
  std::vector<std::int64_t> cluster_size(k_count, 0);
  for (const int label : labels) ++cluster_size[label];
  const auto clusters_used =
      std::count_if(cluster_size.begin(), cluster_size.end(), [](std::int64_t c) { return c > 0; });
  if (clusters_used < 2) {
    return undefined_value("silhc", Direction::maximize, "all documents share one label");
  }

  std::vector<double> scores(d_count);
  const auto score_one = [&](std::size_t i) {
    if (cluster_size[labels[i]] == 1) {
      scores[i] = 0.0;  // singleton clusters contribute zero by convention
      return;
    }
    std::vector<double> dist_sum(k_count, 0.0);
    for (std::size_t j = 0; j < d_count; ++j) {
      if (j != i) dist_sum[labels[j]] += euclidean(model.theta, i, j);
    }
    const double a =
        dist_sum[labels[i]] / static_cast<double>(cluster_size[labels[i]] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k_count; ++c) {
      if (c != labels[i] && cluster_size[c] > 0) {
        b = std::min(b, dist_sum[c] / static_cast<double>(cluster_size[c]));
      }
    }
    const double denom = std::max(a, b);
    scores[i] = denom > 0.0 ? (b - a) / denom : 0.0;
  };

  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < d_count; ++i) score_one(i);
  } else {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < d_count; ++i) score_one(i);
  }

  double mean = 0.0;
  for (std::size_t i = 0; i < d_count; ++i) mean += scores[i];
  mean /= static_cast<double>(d_count);
  return {"silhc", mean, Direction::maximize, true, ""};
}

MetricValue calinski_harabasz(const TopicModel& model) {
  const std::size_t d_count = model.num_docs();
  const std::size_t t_count = model.num_topics();
  if (d_count < 2) {
    return undefined_value("chi", Direction::maximize, "fewer than 2 documents");
  }
  const std::vector<int> labels = argmax_labels(model.theta);
  const int label_limit = 1 + *std::max_element(labels.begin(), labels.end());
  std::vector<std::int64_t> cluster_size(label_limit, 0);
  for (const int label : labels) ++cluster_size[label];

  Mat centroids(label_limit, t_count, 0.0);
  std::vector<double> overall(t_count, 0.0);
  for (std::size_t d = 0; d < d_count; ++d) {
    for (std::size_t t = 0; t < t_count; ++t) {
      centroids(labels[d], t) += model.theta(d, t);
      overall[t] += model.theta(d, t);
    }
  }
  int k_count = 0;
  for (int c = 0; c < label_limit; ++c) {
    if (cluster_size[c] > 0) {
      ++k_count;
      for (std::size_t t = 0; t < t_count; ++t) {
        centroids(c, t) /= static_cast<double>(cluster_size[c]);
      }
    }
  }
  for (double& x : overall) x /= static_cast<double>(d_count);

  if (k_count < 2) {
    return undefined_value("chi", Direction::maximize, "all documents share one label");
  }
  if (static_cast<std::size_t>(k_count) >= d_count) {
    return undefined_value("chi", Direction::maximize, "every document is its own cluster");
  }

  double between = 0.0;
  for (int c = 0; c < label_limit; ++c) {
    if (cluster_size[c] == 0) continue;
    double sq = 0.0;
    for (std::size_t t = 0; t < t_count; ++t) {
      const double diff = centroids(c, t) - overall[t];
      sq += diff * diff;
    }
    between += static_cast<double>(cluster_size[c]) * sq;
  }
  double within = 0.0;
  for (std::size_t d = 0; d < d_count; ++d) {
    for (std::size_t t = 0; t < t_count; ++t) {
      const double diff = model.theta(d, t) - centroids(labels[d], t);
      within += diff * diff;
    }
  }
  if (within == 0.0) {
    MetricValue v = undefined_value("chi", Direction::maximize, "zero within-cluster dispersion");
    v.value = std::numeric_limits<double>::infinity();
    return v;
  }
  const double value = (between / static_cast<double>(k_count - 1)) /
                       (within / static_cast<double>(d_count - k_count));
  return {"chi", value, Direction::maximize, true, ""};
}

// ---- Top-token metrics ---------------------------------------------------------

TopTokens top_tokens(const Mat& phi, int k) {
  if (k < 1) throw std::invalid_argument("top_tokens: k must be >= 1");
  const std::size_t w_count = phi.rows();
  const std::size_t t_count = phi.cols();
  const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(k), w_count);

  TopTokens result;
  result.per_topic.resize(t_count);
  std::vector<std::int32_t> order(w_count);
  for (std::size_t t = 0; t < t_count; ++t) {
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + kk, order.end(),
                      [&](std::int32_t a, std::int32_t b) {
                        const double pa = phi(a, t), pb = phi(b, t);
                        // Descending probability, ascending index on ties.
                        return pa > pb || (pa == pb && a < b);
                      });
    result.per_topic[t].assign(order.begin(), order.begin() + kk);
  }
  return result;
}

CooccurrenceIndex::CooccurrenceIndex(const Corpus& corpus) : num_docs_(corpus.num_docs()) {
  const std::size_t w_count = corpus.vocab_size();
  word_ptr_.assign(w_count + 1, 0);
  for (const std::int32_t w : corpus.words) ++word_ptr_[static_cast<std::size_t>(w) + 1];
  for (std::size_t w = 0; w < w_count; ++w) word_ptr_[w + 1] += word_ptr_[w];
  docs_.resize(corpus.nnz());
  std::vector<std::size_t> cursor(word_ptr_.begin(), word_ptr_.end() - 1);
  for (std::size_t d = 0; d < corpus.num_docs(); ++d) {
    for (std::size_t j = corpus.doc_ptr[d]; j < corpus.doc_ptr[d + 1]; ++j) {
      docs_[cursor[static_cast<std::size_t>(corpus.words[j])]++] = d;
    }
  }
}

std::int64_t CooccurrenceIndex::doc_frequency(std::int32_t w) const {
  const auto wi = static_cast<std::size_t>(w);
  if (wi + 1 >= word_ptr_.size()) throw std::invalid_argument("doc_frequency: token out of range");
  return static_cast<std::int64_t>(word_ptr_[wi + 1] - word_ptr_[wi]);
}

std::int64_t CooccurrenceIndex::co_frequency(std::int32_t a, std::int32_t b) const {
  const auto ai = static_cast<std::size_t>(a);
  const auto bi = static_cast<std::size_t>(b);
  if (ai + 1 >= word_ptr_.size() || bi + 1 >= word_ptr_.size()) {
    throw std::invalid_argument("co_frequency: token out of range");
  }
  std::size_t i = word_ptr_[ai], j = word_ptr_[bi];
  std::int64_t shared = 0;
  while (i < word_ptr_[ai + 1] && j < word_ptr_[bi + 1]) {
    if (docs_[i] < docs_[j]) {
      ++i;
    } else if (docs_[j] < docs_[i]) {
      ++j;
    } else {
      ++shared;
      ++i;
      ++j;
    }
  }
  return shared;
}

MetricValue coherence(const TopicModel& model, const Corpus& corpus,
                      const CooccurrenceIndex& index, int k) {
  if (model.vocab_size() != corpus.vocab_size()) {
    throw std::invalid_argument("coherence: vocabulary mismatch");
  }
  const TopTokens tops = top_tokens(model.phi, k);
  const std::size_t t_count = model.num_topics();

  std::int64_t skipped = 0;
  double total = 0.0;
  for (std::size_t t = 0; t < t_count; ++t) {
    const auto& tokens = tops.per_topic[t];
    double score = 0.0;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const std::int64_t conditioning_docs = index.doc_frequency(tokens[j]);
        if (conditioning_docs == 0) {
          ++skipped;
          continue;
        }
        const std::int64_t both = index.co_frequency(tokens[i], tokens[j]);
        score += std::log(static_cast<double>(both + 1) / static_cast<double>(conditioning_docs));
      }
    }
    total += score;
  }
  MetricValue v{"coherence", total / static_cast<double>(t_count), Direction::maximize, true, ""};
  if (skipped > 0) {
    v.note = std::to_string(skipped) + " pair terms skipped (token in no document)";
  }
  return v;
}

MetricValue coherence(const TopicModel& model, const Corpus& corpus, int k) {
  return coherence(model, corpus, CooccurrenceIndex(corpus), k);
}

MetricValue lift_score(const TopicModel& model, const Corpus& corpus, int k) {
  if (model.vocab_size() != corpus.vocab_size()) {
    throw std::invalid_argument("lift_score: vocabulary mismatch");
  }
  if (corpus.total == 0) throw std::invalid_argument("lift_score: corpus has no tokens");

  std::vector<double> frequency(corpus.vocab_size(), 0.0);
  for (std::size_t j = 0; j < corpus.nnz(); ++j) {
    frequency[static_cast<std::size_t>(corpus.words[j])] +=
        static_cast<double>(corpus.counts[j]);
  }
  for (double& f : frequency) f /= static_cast<double>(corpus.total);

  const TopTokens tops = top_tokens(model.phi, k);
  const std::size_t t_count = model.num_topics();
  double total = 0.0;
  for (std::size_t t = 0; t < t_count; ++t) {
    const auto& tokens = tops.per_topic[t];
    double score = 0.0;
    for (const std::int32_t w : tokens) {
      // Both ratio sides floored so zero-probability corner cases stay finite.
      const double p_topic = std::max(model.phi(static_cast<std::size_t>(w), t), kEpsFloor);
      const double p_corpus = std::max(frequency[static_cast<std::size_t>(w)], kEpsFloor);
      score += std::log(p_topic / p_corpus);
    }
    total += score / static_cast<double>(tokens.size());
  }
  return {"lift", total / static_cast<double>(t_count), Direction::maximize, true, ""};
}

// ---- Batch evaluation -----------------------------------------------------------

std::vector<MetricValue> compute_metrics(const TopicModel& model, const MetricContext& context,
                                         const std::vector<std::string>& which) {
  if (!context.train) throw std::invalid_argument("compute_metrics: training corpus required");
  const std::set<std::string> wanted(which.begin(), which.end());
  const auto selected = [&](std::string_view name) {
    return wanted.empty() || wanted.count(std::string(name)) > 0;
  };

  std::vector<MetricValue> out;
  // Any failure (violated metric precondition, degenerate input) is recorded
  // as an undefined measurement so a single metric cannot abort a scan cell.
  const auto run = [&](std::string_view name, auto&& fn) {
    if (!selected(name)) return;
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back(undefined_value(std::string(name), metric_direction(name), e.what()));
    }
  };

  const Corpus& train = *context.train;
  const Exec exec = context.exec;

  run("perplexity", [&] { return perplexity(model, train, exec); });
  run("holdout-perplexity", [&] {
    if (!context.heldout) {
      return undefined_value("holdout-perplexity", Direction::minimize, "no held-out corpus");
    }
    return holdout_perplexity(model, *context.heldout, context.fold_in_iterations, exec);
  });
  for (const bool sparse : {false, true}) {
    const char* names[] = {"aic", "bic", "mdl"};
    const IcKind kinds[] = {IcKind::aic, IcKind::bic, IcKind::mdl};
    for (int i = 0; i < 3; ++i) {
      const std::string name = std::string(names[i]) + (sparse ? "-sparse" : "");
      run(name, [&] { return information_criterion(model, train, kinds[i], sparse); });
    }
  }
  for (const double multiplier : {0.5, 1.0, 2.0}) {
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, "%g", multiplier);
    run(std::string("renyi-") + suffix, [&] { return renyi_entropy(model, multiplier); });
  }
  for (const auto mode : {DiversityMode::avg_pairwise, DiversityMode::closest}) {
    for (const auto distance : {TopicDistance::cosine, TopicDistance::l2,
                                TopicDistance::hellinger, TopicDistance::jensen_shannon}) {
      const std::string name = std::string("d-") +
                               (mode == DiversityMode::avg_pairwise ? "avg" : "cls") + "-" +
                               distance_tag(distance);
      run(name, [&] { return diversity(model, distance, mode); });
    }
  }
  run("d-spectral", [&] { return d_spectral(model, train); });
  run("uni-theta-divergence", [&] { return uni_theta_divergence(model, train); });
  run("silhc", [&] { return silhouette(model, exec); });
  run("chi", [&] { return calinski_harabasz(model); });
  run("coherence", [&] {
    if (context.cooccurrence) return coherence(model, train, *context.cooccurrence, context.top_k);
    return coherence(model, train, context.top_k);
  });
  run("lift", [&] { return lift_score(model, train, context.top_k); });
  return out;
}

}  // namespace tscan
