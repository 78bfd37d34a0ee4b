#include "ff/grid.hpp"

#include <stdexcept>

namespace ff {

GridSpec GridSpec::uniform(const Chart& chart, const std::vector<int>& counts) {
  std::vector<std::pair<Rational, Rational>> bounds;
  bounds.reserve(chart.dimension());
  for (const Axis& a : chart.axes()) bounds.emplace_back(a.lo, a.hi);
  return with_bounds(chart, counts, bounds);
}

GridSpec GridSpec::with_bounds(const Chart& chart, const std::vector<int>& counts,
                               const std::vector<std::pair<Rational, Rational>>& bounds) {
  if (static_cast<int>(counts.size()) != chart.dimension() ||
      static_cast<int>(bounds.size()) != chart.dimension())
    throw std::invalid_argument("GridSpec: per-axis counts and bounds required");
  GridSpec g;
  g.axes_.reserve(counts.size());
  for (int i = 0; i < chart.dimension(); ++i) {
    if (counts[i] < 0) throw std::invalid_argument("GridSpec: negative count");
    const Axis& ax = chart.axis(i);
    AxisSpec s;
    s.count = counts[i];
    s.periodic = ax.periodic;
    if (ax.periodic) {
      s.period = ax.period;
    } else {
      s.lo = bounds[i].first;
      s.hi = bounds[i].second;
      if (s.lo > s.hi) throw std::invalid_argument("GridSpec: inverted bounds");
      if (s.lo < ax.lo || s.hi > ax.hi)
        throw std::invalid_argument("GridSpec: bounds outside chart box on axis " + ax.name);
      if (s.count == 1 && s.lo != s.hi)
        s.hi = s.lo;  // a single node sits at the lower bound
    }
    g.axes_.push_back(std::move(s));
  }
  return g;
}

size_t GridSpec::node_count() const {
  if (axes_.empty()) return 0;
  size_t n = 1;
  for (const AxisSpec& a : axes_) n *= static_cast<size_t>(a.count);
  return n;
}

GridSpec::Node GridSpec::node(size_t flat) const {
  size_t total = node_count();
  if (flat >= total) throw std::out_of_range("GridSpec: node index out of range");
  int dim = static_cast<int>(axes_.size());
  std::vector<size_t> idx(dim, 0);
  for (int i = dim - 1; i >= 0; --i) {
    idx[i] = flat % static_cast<size_t>(axes_[i].count);
    flat /= static_cast<size_t>(axes_[i].count);
  }
  Node out;
  out.xd.resize(dim);
  out.xq.resize(dim);
  for (int i = 0; i < dim; ++i) {
    const AxisSpec& a = axes_[i];
    if (a.periodic) {
      out.xd[i] = a.period * static_cast<double>(idx[i]) / static_cast<double>(a.count);
      out.xq[i] = std::nullopt;
    } else if (a.count == 1) {
      out.xq[i] = a.lo;
      out.xd[i] = a.lo.to_double();
    } else {
      Rational step = (a.hi - a.lo) / Rational(a.count - 1);
      Rational v = a.lo + step * Rational(static_cast<long>(idx[i]));
      out.xq[i] = v;
      out.xd[i] = v.to_double();
    }
  }
  return out;
}

}  // namespace ff
