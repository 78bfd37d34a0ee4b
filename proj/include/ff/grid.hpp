#pragma once

#include <optional>
#include <vector>

#include "ff/chart.hpp"

namespace ff {

/// Rectangular evaluation grid over (part of) a chart's domain box. Nodes on
/// non-periodic axes are exact rationals, lo + i*(hi-lo)/(count-1); nodes on
/// periodic axes are j*period/count (no duplicated endpoint) and carry only a
/// double coordinate, since the period is typically irrational.
class GridSpec {
 public:
  struct AxisSpec {
    int count = 1;
    Rational lo{0};
    Rational hi{0};
    bool periodic = false;
    double period = 0.0;
  };

  struct Node {
    std::vector<double> xd;
    std::vector<std::optional<Rational>> xq;
  };

  GridSpec() = default;

  /// Grid over the chart's full box.
  static GridSpec uniform(const Chart& chart, const std::vector<int>& counts);
  /// Grid with explicit rational bounds on non-periodic axes (must lie inside
  /// the chart box). Periodic axes ignore the bounds and span [0, period).
  static GridSpec with_bounds(const Chart& chart, const std::vector<int>& counts,
                              const std::vector<std::pair<Rational, Rational>>& bounds);

  const std::vector<AxisSpec>& axes() const { return axes_; }
  size_t node_count() const;
  bool empty() const { return node_count() == 0; }

  /// Node by flat index; iteration order is lexicographic in the index tuple
  /// (first axis slowest), hence ascending in coordinates.
  Node node(size_t flat) const;

 private:
  std::vector<AxisSpec> axes_;
};

}  // namespace ff
