#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ff/polynomial.hpp"

namespace ff {

/// Numeric backend for a scalar field: a point evaluator, a gradient
/// evaluator, and optionally a row-major n-by-n Hessian evaluator.
struct SmoothSpec {
  int dimension = 0;
  std::function<double(std::span<const double>)> value;
  std::function<std::vector<double>(std::span<const double>)> gradient;
  std::function<std::vector<double>(std::span<const double>)> hessian;  // optional
};

/// A scalar field on a chart domain, either Exact (polynomial with rational
/// coefficients) or Smooth (user-supplied evaluators). Exact fields support
/// exact evaluation and symbolic differentiation; Smooth fields are evaluated
/// through their SmoothSpec.
class ScalarField {
 public:
  ScalarField(Polynomial p);  // NOLINT: implicit conversion is the common case
  explicit ScalarField(SmoothSpec s);
  static ScalarField constant(int dimension, const Rational& c);

  int dimension() const { return dim_; }
  bool is_exact() const { return poly_ != nullptr; }
  const Polynomial& poly() const;

  /// True iff the field is Exact and identically zero.
  bool known_zero() const { return poly_ && poly_->is_zero(); }
  bool is_exact_constant() const { return poly_ && poly_->is_constant(); }

  double value(std::span<const double> x) const;
  Rational value_exact(std::span<const Rational> x) const;
  std::optional<Rational> value_partial(std::span<const std::optional<Rational>> x) const;
  std::vector<double> gradient(std::span<const double> x) const;
  std::vector<Rational> gradient_exact(std::span<const Rational> x) const;
  bool has_hessian() const;
  std::vector<double> hessian(std::span<const double> x) const;

  /// Partial derivative as a field. Exact fields differentiate symbolically.
  /// Smooth fields use the gradient evaluator for values and the Hessian for
  /// gradients; calling gradient() on the result without a Hessian throws.
  ScalarField derivative(int var) const;

  /// Wraps an Exact field as a Smooth one backed by its own evaluators
  /// (gradient and Hessian included). Identity on Smooth fields.
  ScalarField as_smooth() const;

  ScalarField operator-() const;
  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
  ScalarField operator*(const Rational& c) const;

  /// Exact-path equality: true iff both are Exact with equal polynomials.
  bool exact_equal(const ScalarField& o) const {
    return is_exact() && o.is_exact() && *poly_ == *o.poly_;
  }

  std::string to_string(std::span<const std::string> names) const;

 private:
  int dim_;
  std::shared_ptr<const Polynomial> poly_;
  std::shared_ptr<const SmoothSpec> smooth_;
};

}  // namespace ff
