#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace tscan::rng {

// All randomness in the library flows through these helpers. The standard
// distribution classes (uniform_int_distribution, gamma_distribution, ...)
// are not pinned down by the standard and differ between libstdc++ and
// libc++, so every transform from raw engine output to a sample is written
// out here. Given the same seed, results are identical on any platform.
using Engine = std::mt19937_64;

// Uniform double in [0, 1) with 53 random mantissa bits.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Rejection sampling over the top of the 64-bit
// range keeps the result exactly unbiased.
inline std::uint64_t uniform_below(Engine& eng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: n must be positive");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  for (;;) {
    const std::uint64_t x = eng();
    if (x < limit) return x % n;
  }
}

// Exponential(1). uniform01 returns values < 1, so the log argument is
// positive.
inline double exponential(Engine& eng) {
  return -std::log(1.0 - uniform01(eng));
}

inline double normal(Engine& eng) {
  // Marsaglia polar method; consumes a variable number of engine draws.
  for (;;) {
    const double u = 2.0 * uniform01(eng) - 1.0;
    const double v = 2.0 * uniform01(eng) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

// Gamma(shape, 1) via Marsaglia-Tsang squeeze, boosted for shape < 1.
inline double gamma(Engine& eng, double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be positive");
  if (shape < 1.0) {
    const double g = gamma(eng, shape + 1.0);
    const double u = uniform01(eng);
    // g * u^{1/shape}; u == 0 maps to 0, a valid (measure-zero) sample.
    return g * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal(eng);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = uniform01(eng);
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

// Symmetric Dirichlet(concentration) sample over out.size() components.
inline void dirichlet(Engine& eng, double concentration, std::span<double> out) {
  if (out.empty()) throw std::invalid_argument("dirichlet: empty output");
  double total = 0.0;
  for (double& x : out) {
    // Dirichlet(1) is the special case of i.i.d. exponentials; the generic
    // gamma sampler would work too but burns more engine draws.
    x = concentration == 1.0 ? exponential(eng) : gamma(eng, concentration);
    total += x;
  }
  if (total <= 0.0) {
    // All components underflowed to zero (possible for tiny concentration);
    // fall back to a uniform point rather than divide by zero.
    const double u = 1.0 / static_cast<double>(out.size());
    for (double& x : out) x = u;
    return;
  }
  for (double& x : out) x /= total;
}

// Index i with probability weights[i] / sum(weights). Inverse-CDF walk in
// index order; the caller supplies the uniform draw so the consumption of
// engine state stays explicit.
inline std::size_t categorical(std::span<const double> weights, double u) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw std::invalid_argument("categorical: weights must have positive sum");
  double target = u * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (target < acc) return i;
  }
  return weights.size() - 1;  // u rounded up to the total
}

// k distinct indices from [0, n), returned in ascending order. Partial
// Fisher-Yates over an index array: draw order depends only on (n, k, seed).
inline std::vector<std::size_t> sample_without_replacement(Engine& eng, std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("sample_without_replacement: k > n");
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_below(eng, n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace tscan::rng
