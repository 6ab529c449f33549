#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tscan/metrics.hpp"

namespace tscan {

struct CurvePoint {
  int t = 0;
  double value = 0.0;
};

// A metric's trajectory over the scanned topic counts for one (dataset,
// family, seed). Points are sorted by strictly increasing t and hold only
// defined (finite) measurements; gaps from undefined points are dropped
// upstream and recorded in scan diagnostics.
struct Curve {
  std::string metric;
  std::string family;
  std::uint64_t seed = 0;
  Direction direction = Direction::minimize;
  std::vector<CurvePoint> points;

  void validate() const;  // throws std::invalid_argument on broken ordering
};

enum class OptimumCategory {
  single_pronounced,  // band is a single T
  interval,           // band is >= 2 consecutive scan points
  alternating_peaks,  // band has gaps
  boundary,           // reserved label; boundary hits are reported as
                      // uninformative with boundary_hit set (see classify)
  uninformative,      // flat curve, boundary optimum, or too few points
};

const char* category_name(OptimumCategory category);
std::optional<OptimumCategory> category_from_name(std::string_view name);

struct OptimumVerdict {
  std::vector<int> band;  // ascending T values; empty iff uninformative
  OptimumCategory category = OptimumCategory::uninformative;
  bool boundary_hit = false;
  bool flat = false;  // curve had no range (all values equal)
};

// The near-optimal set of T values: with h/l the curve's max/min, keeps
// points within alpha * (h - l) of the optimal end (>= h - alpha*(h-l) when
// maximizing, <= l + alpha*(h-l) when minimizing). A flat curve yields an
// empty band. Requires at least 3 points.
std::vector<int> optimal_band(const Curve& curve, double alpha = 0.07);

// The full verdict: the band plus its readability category. boundary_hit is
// true when the band contains the curve's first or last scanned T; such a
// verdict is categorized uninformative, as is a flat curve. Otherwise the
// category reflects the band's shape: one point, a run of consecutive scan
// points, or scattered peaks. Curves with fewer than 3 points yield an
// empty-band uninformative verdict rather than an error.
OptimumVerdict classify(const Curve& curve, double alpha = 0.07);

}  // namespace tscan
