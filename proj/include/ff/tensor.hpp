#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ff/chart.hpp"
#include "ff/scalar_field.hpp"

namespace ff {

enum class Variance { Contravariant, Covariant };

using IndexKey = std::vector<int>;

namespace detail {

inline void validate_key(const IndexKey& key, int degree, int dim) {
  if (static_cast<int>(key.size()) != degree)
    throw std::invalid_argument("TensorField: key length does not match degree");
  for (size_t i = 0; i < key.size(); ++i) {
    if (key[i] < 0 || key[i] >= dim)
      throw std::invalid_argument("TensorField: index out of range");
    if (i > 0 && key[i] <= key[i - 1])
      throw std::invalid_argument("TensorField: key must be strictly increasing");
  }
}

/// Sign of the merge of two disjoint strictly increasing tuples, i.e. the
/// parity of the permutation sorting their concatenation. Returns 0 when the
/// tuples intersect.
inline int merge_sign(const IndexKey& a, const IndexKey& b, IndexKey& merged) {
  merged.clear();
  merged.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  long inversions = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      merged.push_back(a[i++]);
    } else {
      // b[j] jumps over the remaining entries of a
      inversions += static_cast<long>(a.size() - i);
      merged.push_back(b[j++]);
    }
  }
  while (i < a.size()) merged.push_back(a[i++]);
  while (j < b.size()) merged.push_back(b[j++]);
  return (inversions % 2 == 0) ? 1 : -1;
}

/// Sorts an arbitrary tuple of distinct indices, returning the permutation
/// sign (0 when indices repeat).
inline int sort_sign(IndexKey& key) {
  int sign = 1;
  for (size_t i = 0; i + 1 < key.size(); ++i)
    for (size_t j = 0; j + 1 < key.size() - i; ++j) {
      if (key[j] == key[j + 1]) return 0;
      if (key[j] > key[j + 1]) {
        std::swap(key[j], key[j + 1]);
        sign = -sign;
      }
    }
  return sign;
}

}  // namespace detail

/// Antisymmetric tensor field of fixed degree on a chart, stored as a sparse
/// map from strictly increasing index tuples to coefficient fields. Absent
/// keys are zero; Exact coefficients that are identically zero are never
/// stored, so an Exact field is zero iff its map is empty.
template <Variance V>
class TensorField {
 public:
  TensorField() = default;
  TensorField(Chart chart, int degree) : chart_(std::move(chart)), degree_(degree) {
    if (degree < 0 || degree > chart_.dimension())
      throw std::invalid_argument("TensorField: degree out of range");
  }

  const Chart& chart() const { return chart_; }
  int degree() const { return degree_; }
  const std::map<IndexKey, ScalarField>& coefficients() const { return coeffs_; }

  void set(IndexKey key, ScalarField f) {
    detail::validate_key(key, degree_, chart_.dimension());
    if (f.dimension() != chart_.dimension())
      throw std::invalid_argument("TensorField: coefficient dimension mismatch");
    if (f.known_zero()) {
      coeffs_.erase(key);
      return;
    }
    coeffs_.insert_or_assign(std::move(key), std::move(f));
  }

  void add(const IndexKey& key, const ScalarField& f) {
    auto it = coeffs_.find(key);
    if (it == coeffs_.end()) {
      set(key, f);
    } else {
      ScalarField s = it->second + f;
      if (s.known_zero())
        coeffs_.erase(it);
      else
        it->second = std::move(s);
    }
  }

  ScalarField coefficient(const IndexKey& key) const {
    detail::validate_key(key, degree_, chart_.dimension());
    auto it = coeffs_.find(key);
    return it != coeffs_.end() ? it->second
                               : ScalarField::constant(chart_.dimension(), Rational(0));
  }

  /// Coefficient for an arbitrary tuple of distinct indices, with the
  /// antisymmetry sign applied.
  ScalarField coefficient_signed(IndexKey key) const {
    int sign = detail::sort_sign(key);
    if (sign == 0) return ScalarField::constant(chart_.dimension(), Rational(0));
    ScalarField c = coefficient(key);
    return sign > 0 ? c : -c;
  }

  bool all_exact() const {
    for (const auto& [k, f] : coeffs_)
      if (!f.is_exact()) return false;
    return true;
  }

  /// True iff the field is certifiably zero (all coefficients Exact and zero).
  bool exact_zero() const { return coeffs_.empty(); }

  bool exact_equal(const TensorField& o) const {
    if (chart_ != o.chart_ || degree_ != o.degree_) return false;
    if (coeffs_.size() != o.coeffs_.size()) return false;
    auto it = coeffs_.begin();
    auto jt = o.coeffs_.begin();
    for (; it != coeffs_.end(); ++it, ++jt) {
      if (it->first != jt->first) return false;
      if (!it->second.exact_equal(jt->second)) return false;
    }
    return true;
  }

  TensorField operator+(const TensorField& o) const {
    require_same_shape(o);
    TensorField r = *this;
    for (const auto& [k, f] : o.coeffs_) r.add(k, f);
    return r;
  }

  TensorField operator-() const {
    TensorField r(chart_, degree_);
    for (const auto& [k, f] : coeffs_) r.coeffs_.emplace(k, -f);
    return r;
  }

  TensorField operator-(const TensorField& o) const { return *this + (-o); }

  TensorField scaled(const ScalarField& c) const {
    if (c.dimension() != chart_.dimension())
      throw std::invalid_argument("TensorField: scaling field dimension mismatch");
    TensorField r(chart_, degree_);
    for (const auto& [k, f] : coeffs_) r.set(k, c * f);
    return r;
  }

  TensorField scaled(const Rational& c) const {
    TensorField r(chart_, degree_);
    if (c.is_zero()) return r;
    for (const auto& [k, f] : coeffs_) r.set(k, f * c);
    return r;
  }

 private:
  void require_same_shape(const TensorField& o) const {
    if (chart_ != o.chart_) throw std::invalid_argument("TensorField: chart mismatch");
    if (degree_ != o.degree_) throw std::invalid_argument("TensorField: degree mismatch");
  }

  Chart chart_;
  int degree_ = 0;
  std::map<IndexKey, ScalarField> coeffs_;
};

using MultivectorField = TensorField<Variance::Contravariant>;
using DifferentialForm = TensorField<Variance::Covariant>;

template <Variance V>
TensorField<V> wedge(const TensorField<V>& a, const TensorField<V>& b) {
  if (a.chart() != b.chart()) throw std::invalid_argument("wedge: chart mismatch");
  int deg = a.degree() + b.degree();
  if (deg > a.chart().dimension()) throw std::invalid_argument("wedge: degree overflow");
  TensorField<V> r(a.chart(), deg);
  IndexKey merged;
  for (const auto& [ka, fa] : a.coefficients()) {
    for (const auto& [kb, fb] : b.coefficients()) {
      int sign = detail::merge_sign(ka, kb, merged);
      if (sign == 0) continue;
      ScalarField prod = fa * fb;
      r.add(merged, sign > 0 ? prod : -prod);
    }
  }
  return r;
}

/// d of a form, degree p -> p+1. Coefficients are differentiated per variable;
/// periodic coordinates are treated as ordinary coordinates.
DifferentialForm exterior_derivative(const DifferentialForm& w);

/// Gradient 1-form of a scalar field on a chart.
DifferentialForm differential(const Chart& chart, const ScalarField& f);

/// pi(alpha, beta) at a point, for 1-forms alpha, beta.
double pair_bivector(const MultivectorField& pi, const DifferentialForm& alpha,
                     const DifferentialForm& beta, std::span<const double> x);

/// Vector field pi(dx^i, alpha) for a 1-form alpha, as coefficient fields.
std::vector<ScalarField> anchor_field(const MultivectorField& pi, const DifferentialForm& alpha);

/// Anchor applied to covector components at a point: v^i = sum_j pi^{ij} a_j.
std::vector<double> anchor_at(const MultivectorField& pi, std::span<const double> alpha,
                              std::span<const double> x);

/// Full antisymmetric coefficient matrix of a bivector at a point.
Eigen::MatrixXd bivector_matrix(const MultivectorField& pi, std::span<const double> x);
std::vector<std::vector<Rational>> bivector_matrix_exact(const MultivectorField& pi,
                                                         std::span<const Rational> x);
std::optional<std::vector<std::vector<Rational>>> bivector_matrix_partial(
    const MultivectorField& pi, std::span<const std::optional<Rational>> x);

/// Pointwise rank of a bivector. The Rational overloads evaluate and
/// eliminate exactly (coefficients must be Exact); the double overload uses
/// SVD with the 1e-9 relative cutoff.
int rank_at(const MultivectorField& pi, std::span<const double> x);
int rank_at(const MultivectorField& pi, std::span<const Rational> x);
std::optional<int> rank_at_partial(const MultivectorField& pi,
                                   std::span<const std::optional<Rational>> x);

}  // namespace ff
