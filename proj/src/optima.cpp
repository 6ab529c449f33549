#include "tscan/optima.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tscan {

void Curve::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].value)) {
      throw std::invalid_argument("curve: non-finite value (undefined points must be dropped)");
    }
    if (i > 0 && points[i].t <= points[i - 1].t) {
      throw std::invalid_argument("curve: topic counts must be strictly increasing");
    }
  }
}

const char* category_name(OptimumCategory category) {
  switch (category) {
    case OptimumCategory::single_pronounced:
      return "single_pronounced";
    case OptimumCategory::interval:
      return "interval";
    case OptimumCategory::alternating_peaks:
      return "alternating_peaks";
    case OptimumCategory::boundary:
      return "boundary";
    case OptimumCategory::uninformative:
      return "uninformative";
  }
  throw std::invalid_argument("category_name: unknown category");
}

std::optional<OptimumCategory> category_from_name(std::string_view name) {
  for (const auto category :
       {OptimumCategory::single_pronounced, OptimumCategory::interval,
        OptimumCategory::alternating_peaks, OptimumCategory::boundary,
        OptimumCategory::uninformative}) {
    if (name == category_name(category)) return category;
  }
  return std::nullopt;
}

std::vector<int> optimal_band(const Curve& curve, double alpha) {
  curve.validate();
  if (curve.points.size() < 3) {
    throw std::invalid_argument("optimal_band: needs at least 3 points");
  }
  if (!(alpha >= 0.0)) throw std::invalid_argument("optimal_band: alpha must be >= 0");

  double low = curve.points.front().value, high = low;
  for (const auto& p : curve.points) {
    low = std::min(low, p.value);
    high = std::max(high, p.value);
  }
  if (high == low) return {};  // flat curve: no optimum to report

  const double margin = alpha * (high - low);
  const double cut =
      curve.direction == Direction::maximize ? high - margin : low + margin;
  std::vector<int> band;
  for (const auto& p : curve.points) {
    const bool in_band =
        curve.direction == Direction::maximize ? p.value >= cut : p.value <= cut;
    if (in_band) band.push_back(p.t);
  }
  return band;
}

OptimumVerdict classify(const Curve& curve, double alpha) {
  OptimumVerdict verdict;
  if (curve.points.size() < 3) {
    verdict.category = OptimumCategory::uninformative;
    return verdict;
  }
  verdict.band = optimal_band(curve, alpha);
  if (verdict.band.empty()) {
    verdict.flat = true;
    verdict.category = OptimumCategory::uninformative;
    return verdict;
  }

  const int first_t = curve.points.front().t;
  const int last_t = curve.points.back().t;
  verdict.boundary_hit = verdict.band.front() == first_t || verdict.band.back() == last_t;
  if (verdict.boundary_hit) {
    verdict.category = OptimumCategory::uninformative;
    return verdict;
  }

  if (verdict.band.size() == 1) {
    verdict.category = OptimumCategory::single_pronounced;
    return verdict;
  }

  // "Consecutive" means adjacent positions in the scanned grid, whatever the
  // grid's step is.
  std::vector<int> grid;
  grid.reserve(curve.points.size());
  for (const auto& p : curve.points) grid.push_back(p.t);
  bool contiguous = true;
  std::size_t previous_pos = 0;
  for (std::size_t i = 0; i < verdict.band.size(); ++i) {
    const auto it = std::lower_bound(grid.begin(), grid.end(), verdict.band[i]);
    const auto pos = static_cast<std::size_t>(it - grid.begin());
    if (i > 0 && pos != previous_pos + 1) {
      contiguous = false;
      break;
    }
    previous_pos = pos;
  }
  verdict.category =
      contiguous ? OptimumCategory::interval : OptimumCategory::alternating_peaks;
  return verdict;
}

}  // namespace tscan
