#include "tscan/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tscan {

namespace {

struct FamilyName {
  ModelFamily family;
  const char* name;
};

constexpr FamilyName kFamilyNames[] = {
    {ModelFamily::plsa, "plsa"},
    {ModelFamily::lda_double_symmetric, "lda_double_symmetric"},
    {ModelFamily::lda_asymmetric, "lda_asymmetric"},
    {ModelFamily::lda_heuristic, "lda_heuristic"},
    {ModelFamily::decorrelated, "decorrelated"},
    {ModelFamily::sparse, "sparse"},
    {ModelFamily::sparse_decorrelated, "sparse_decorrelated"},
};

}  // namespace

const char* family_name(ModelFamily family) {
  for (const auto& entry : kFamilyNames) {
    if (entry.family == family) return entry.name;
  }
  throw std::invalid_argument("family_name: unknown family");
}

std::optional<ModelFamily> family_from_name(std::string_view name) {
  for (const auto& entry : kFamilyNames) {
    if (name == entry.name) return entry.family;
  }
  return std::nullopt;
}

const std::vector<ModelFamily>& all_families() {
  static const std::vector<ModelFamily> families = [] {
    std::vector<ModelFamily> out;
    for (const auto& entry : kFamilyNames) out.push_back(entry.family);
    return out;
  }();
  return families;
}

void ModelSpec::validate() const {
  if (num_topics < 1) throw std::invalid_argument("ModelSpec: num_topics must be >= 1");
  if (iterations < 0) throw std::invalid_argument("ModelSpec: iterations must be >= 0");
  if (tau < 0.0) throw std::invalid_argument("ModelSpec: tau must be >= 0");
  if (smooth_beta < 0.0) throw std::invalid_argument("ModelSpec: smooth_beta must be >= 0");
  if (sparse_beta < 0.0) throw std::invalid_argument("ModelSpec: sparse_beta must be >= 0");
  if (background_topics < 0) throw std::invalid_argument("ModelSpec: background_topics must be >= 0");
  const bool is_sparse =
      family == ModelFamily::sparse || family == ModelFamily::sparse_decorrelated;
  if (is_sparse && background_topics >= num_topics) {
    throw std::invalid_argument(
        "ModelSpec: background_topics must be below num_topics for sparse families");
  }
}

namespace {

void check_stochastic(const Mat& m, bool by_column, const char* what) {
  const std::size_t outer = by_column ? m.cols() : m.rows();
  const std::size_t inner = by_column ? m.rows() : m.cols();
  for (std::size_t i = 0; i < outer; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < inner; ++j) {
      const double x = by_column ? m(j, i) : m(i, j);
      if (!std::isfinite(x) || x < 0.0) {
        throw std::runtime_error(std::string(what) + ": negative or non-finite entry");
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::runtime_error(std::string(what) + ": distribution " + std::to_string(i) +
                               " sums to " + std::to_string(sum));
    }
  }
}

}  // namespace

void TopicModel::validate() const {
  const std::size_t w = phi.rows(), t = phi.cols(), d = theta.rows();
  if (t == 0 || w == 0) throw std::runtime_error("TopicModel: empty phi");
  if (theta.cols() != t) throw std::runtime_error("TopicModel: theta topic count mismatch");
  if (n_wt.rows() != w || n_wt.cols() != t) {
    throw std::runtime_error("TopicModel: n_wt shape mismatch");
  }
  if (d == 0) throw std::runtime_error("TopicModel: no documents");
  check_stochastic(phi, /*by_column=*/true, "phi");
  check_stochastic(theta, /*by_column=*/false, "theta");
  for (std::size_t i = 0; i < n_wt.size(); ++i) {
    const double x = n_wt.data()[i];
    if (!std::isfinite(x) || x < 0.0) throw std::runtime_error("TopicModel: bad n_wt entry");
  }
  if (!std::isfinite(log_likelihood)) throw std::runtime_error("TopicModel: non-finite likelihood");
}

}  // namespace tscan
