#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ff/rational.hpp"

namespace ff {

using Exponents = std::vector<uint32_t>;

/// Graded lexicographic order on exponent tuples: lower total degree first,
/// ties broken lexicographically. Fixed once so that serialized polynomials
/// are byte-stable.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    uint64_t da = 0, db = 0;
    for (uint32_t e : a) da += e;
    for (uint32_t e : b) db += e;
    if (da != db) return da < db;
    return a < b;
  }
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Invariants: every stored coefficient is nonzero; every exponent tuple has
/// length dimension(); the zero polynomial has an empty term map.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexLess>;

  explicit Polynomial(int dimension);

  static Polynomial constant(int dimension, const Rational& c);
  static Polynomial variable(int dimension, int index);
  static Polynomial monomial(int dimension, Exponents exps, const Rational& c);

  int dimension() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term; for a constant polynomial this is its value.
  Rational constant_value() const;
  const TermMap& terms() const { return terms_; }
  int total_degree() const;
  int degree_in(int var) const;

  void add_term(const Exponents& exps, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator*(const Rational& c) const;

  bool operator==(const Polynomial& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial derivative(int var) const;

  Rational eval(std::span<const Rational> x) const;
  double eval(std::span<const double> x) const;
  /// Exact evaluation when every variable the polynomial actually uses has a
  /// rational coordinate; returns nullopt otherwise (e.g. nodes on a periodic
  /// axis whose coordinates are irrational multiples of the period).
  std::optional<Rational> eval_partial(std::span<const std::optional<Rational>> x) const;

  std::vector<Rational> gradient_eval(std::span<const Rational> x) const;
  std::vector<double> gradient_eval(std::span<const double> x) const;

  /// Substitutes x_i -> s_i * x_i with s_i in {+1, -1}.
  Polynomial substitute_signs(std::span<const int> signs) const;

  /// Exact multivariate division: returns q with num = q * den, or nullopt
  /// when den does not divide num.
  static std::optional<Polynomial> divide_exact(const Polynomial& num, const Polynomial& den);

  /// Deterministic rendering, terms in descending graded-lex order.
  std::string to_string(std::span<const std::string> names) const;

 private:
  int dim_;
  TermMap terms_;
};

}  // namespace ff
