#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ff/scalar_field.hpp"

namespace ff {

/// One chart axis. Non-periodic axes carry exact rational bounds. Periodic
/// axes cover [0, period) with the period given numerically (typically 2*pi);
/// periodicity affects only point normalization in flows and grids.
struct Axis {
  std::string name;
  Rational lo{0};
  Rational hi{0};
  bool periodic = false;
  double period = 0.0;

  static Axis interval(std::string name, Rational lo, Rational hi);
  static Axis circle(std::string name, double period);

  double lo_d() const { return periodic ? 0.0 : lo.to_double(); }
  double hi_d() const { return periodic ? period : hi.to_double(); }

  bool operator==(const Axis& o) const {
    return name == o.name && lo == o.lo && hi == o.hi && periodic == o.periodic &&
           period == o.period;
  }
};

/// Coordinate chart: named axes with a domain box and an orientation given as
/// the coefficient of the top-degree form relative to dx^0 ^ ... ^ dx^{n-1}
/// (default 1). The box bounds non-periodic axes; periodic axes wrap.
class Chart {
 public:
  Chart() = default;
  static Chart make(std::vector<Axis> axes);
  static Chart make(std::vector<Axis> axes, ScalarField orientation);

  int dimension() const { return data_ ? static_cast<int>(data_->axes.size()) : 0; }
  const std::vector<Axis>& axes() const { return data_->axes; }
  const Axis& axis(int i) const { return data_->axes.at(i); }
  std::span<const std::string> names() const { return data_->names; }
  const ScalarField& orientation() const { return data_->orientation; }

  std::optional<int> index_of(const std::string& name) const;

  /// Box membership; periodic axes always pass.
  bool contains(std::span<const double> x, double tol = 0.0) const;

  /// Wraps periodic coordinates into [0, period).
  void wrap(std::span<double> x) const;

  bool operator==(const Chart& o) const;
  bool operator!=(const Chart& o) const { return !(*this == o); }

 private:
  struct Data {
    std::vector<Axis> axes;
    std::vector<std::string> names;
    ScalarField orientation;
    Data(std::vector<Axis> a, ScalarField o);
  };
  std::shared_ptr<const Data> data_;
};

}  // namespace ff
