#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace tscan {

// Dense row-major matrix of doubles. Deliberately minimal: the training
// kernels only need contiguous row access and raw indexing, and keeping the
// layout explicit here makes the deterministic summation order of the
// kernels auditable.
class Mat {
 public:
  Mat() = default;

  Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), v_(rows * cols, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {v_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {v_.data() + r * cols_, cols_}; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return v_.empty(); }

  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  std::size_t size() const { return v_.size(); }

  void fill(double x) { v_.assign(v_.size(), x); }

  bool operator==(const Mat&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> v_;
};

// Sum of column c in iteration order r = 0..rows-1. Used wherever a
// normalizer must be reproducible across runs and thread counts.
inline double col_sum(const Mat& m, std::size_t c) {
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, c);
  return s;
}

inline double row_sum(const Mat& m, std::size_t r) {
  double s = 0.0;
  for (double x : m.row(r)) s += x;
  return s;
}

}  // namespace tscan
