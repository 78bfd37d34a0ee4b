#include "ff/chart.hpp"

#include <cmath>
#include <stdexcept>

namespace ff {

Axis Axis::interval(std::string name, Rational lo, Rational hi) {
  if (!(lo < hi)) throw std::invalid_argument("Axis: empty interval for " + name);
  Axis a;
  a.name = std::move(name);
  a.lo = std::move(lo);
  a.hi = std::move(hi);
  return a;
}

Axis Axis::circle(std::string name, double period) {
  if (!(period > 0)) throw std::invalid_argument("Axis: period must be positive for " + name);
  Axis a;
  a.name = std::move(name);
  a.periodic = true;
  a.period = period;
  return a;
}

Chart::Data::Data(std::vector<Axis> a, ScalarField o) : axes(std::move(a)), orientation(std::move(o)) {
  names.reserve(axes.size());
  for (const auto& ax : axes) names.push_back(ax.name);
}

Chart Chart::make(std::vector<Axis> axes) {
  int n = static_cast<int>(axes.size());
  return make(std::move(axes), ScalarField::constant(n, Rational(1)));
}

Chart Chart::make(std::vector<Axis> axes, ScalarField orientation) {
  if (axes.empty()) throw std::invalid_argument("Chart: no axes");
  for (size_t i = 0; i < axes.size(); ++i)
    for (size_t j = i + 1; j < axes.size(); ++j)
      if (axes[i].name == axes[j].name)
        throw std::invalid_argument("Chart: duplicate axis name " + axes[i].name);
  if (orientation.dimension() != static_cast<int>(axes.size()))
    throw std::invalid_argument("Chart: orientation dimension mismatch");
  if (orientation.known_zero())
    throw std::invalid_argument("Chart: orientation coefficient is zero");
  if (orientation.is_exact_constant() && orientation.poly().constant_value().is_zero())
    throw std::invalid_argument("Chart: orientation coefficient vanishes");
  Chart c;
  c.data_ = std::make_shared<const Data>(std::move(axes), std::move(orientation));
  return c;
}

std::optional<int> Chart::index_of(const std::string& name) const {
  for (int i = 0; i < dimension(); ++i)
    if (data_->axes[i].name == name) return i;
  return std::nullopt;
}

bool Chart::contains(std::span<const double> x, double tol) const {
  if (static_cast<int>(x.size()) != dimension()) return false;
  for (int i = 0; i < dimension(); ++i) {
    const Axis& a = data_->axes[i];
    if (a.periodic) continue;
    if (x[i] < a.lo.to_double() - tol || x[i] > a.hi.to_double() + tol) return false;
  }
  return true;
}

void Chart::wrap(std::span<double> x) const {
  for (int i = 0; i < dimension(); ++i) {
    const Axis& a = data_->axes[i];
    if (!a.periodic) continue;
    double v = std::fmod(x[i], a.period);
    if (v < 0) v += a.period;
    x[i] = v;
  }
}

bool Chart::operator==(const Chart& o) const {
  if (data_ == o.data_) return true;
  if (!data_ || !o.data_) return false;
  if (data_->axes != o.data_->axes) return false;
  const ScalarField& a = data_->orientation;
  const ScalarField& b = o.data_->orientation;
  if (a.is_exact() != b.is_exact()) return false;
  if (a.is_exact()) return a.poly() == b.poly();
  return false;  // distinct Smooth orientations are never considered equal
}

}  // namespace ff
