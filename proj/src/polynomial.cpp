#include "ff/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace ff {

Polynomial::Polynomial(int dimension) : dim_(dimension) {
  if (dimension < 0) throw std::invalid_argument("Polynomial: negative dimension");
}

Polynomial Polynomial::constant(int dimension, const Rational& c) {
  Polynomial p(dimension);
  p.add_term(Exponents(dimension, 0), c);
  return p;
}

Polynomial Polynomial::variable(int dimension, int index) {
  if (index < 0 || index >= dimension)
    throw std::invalid_argument("Polynomial::variable: index out of range");
  Exponents e(dimension, 0);
  e[index] = 1;
  return monomial(dimension, std::move(e), Rational(1));
}

Polynomial Polynomial::monomial(int dimension, Exponents exps, const Rational& c) {
  Polynomial p(dimension);
  p.add_term(exps, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents(dim_, 0));
}

Rational Polynomial::constant_value() const {
  auto it = terms_.find(Exponents(dim_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (uint32_t k : e) s += static_cast<int>(k);
    if (s > d) d = s;
  }
  return d;
}

int Polynomial::degree_in(int var) const {
  int d = 0;
  for (const auto& [e, c] : terms_)
    if (static_cast<int>(e[var]) > d) d = static_cast<int>(e[var]);
  return d;
}

void Polynomial::add_term(const Exponents& exps, const Rational& c) {
  if (static_cast<int>(exps.size()) != dim_)
    throw std::invalid_argument("Polynomial: exponent tuple has wrong length");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(dim_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("Polynomial: dimension mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("Polynomial: dimension mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("Polynomial: dimension mismatch");
  Polynomial r(a.dim_);
  Exponents e(a.dim_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.dim_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial r(dim_);
  if (c.is_zero()) return r;
  for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
  return r;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= dim_) throw std::invalid_argument("Polynomial::derivative: bad variable");
  Polynomial r(dim_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * Rational(static_cast<long>(e[var])));
  }
  return r;
}

Rational Polynomial::eval(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("Polynomial::eval: bad point");
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < dim_; ++i)
      for (uint32_t k = 0; k < e[i]; ++k) t *= x[i];
    acc += t;
  }
  return acc;
}

double Polynomial::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("Polynomial::eval: bad point");
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.to_double();
    for (int i = 0; i < dim_; ++i)
      for (uint32_t k = 0; k < e[i]; ++k) t *= x[i];
    acc += t;
  }
  return acc;
}

std::optional<Rational> Polynomial::eval_partial(
    std::span<const std::optional<Rational>> x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("Polynomial::eval: bad point");
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < dim_; ++i) {
      if (e[i] == 0) continue;
      if (!x[i]) return std::nullopt;
      for (uint32_t k = 0; k < e[i]; ++k) t *= *x[i];
    }
    acc += t;
  }
  return acc;
}

std::vector<Rational> Polynomial::gradient_eval(std::span<const Rational> x) const {
  std::vector<Rational> g;
  g.reserve(dim_);
  for (int i = 0; i < dim_; ++i) g.push_back(derivative(i).eval(x));
  return g;
}

std::vector<double> Polynomial::gradient_eval(std::span<const double> x) const {
  std::vector<double> g;
  g.reserve(dim_);
  for (int i = 0; i < dim_; ++i) g.push_back(derivative(i).eval(x));
  return g;
}

Polynomial Polynomial::substitute_signs(std::span<const int> signs) const {
  if (static_cast<int>(signs.size()) != dim_)
    throw std::invalid_argument("Polynomial::substitute_signs: bad sign vector");
  Polynomial r(dim_);
  for (const auto& [e, c] : terms_) {
    int flips = 0;
    for (int i = 0; i < dim_; ++i)
      if (signs[i] < 0 && (e[i] % 2) == 1) ++flips;
    r.terms_.emplace(e, (flips % 2) ? -c : c);
  }
  return r;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& num, const Polynomial& den) {
  if (num.dim_ != den.dim_) throw std::invalid_argument("Polynomial: dimension mismatch");
  if (den.is_zero()) return std::nullopt;
  Polynomial q(num.dim_);
  Polynomial rem = num;
  const auto& [de, dc] = *den.terms_.rbegin();  // leading term under grlex
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms_.rbegin();
    Exponents qe(num.dim_);
    for (int i = 0; i < num.dim_; ++i) {
      if (re[i] < de[i]) return std::nullopt;
      qe[i] = re[i] - de[i];
    }
    Polynomial t = Polynomial::monomial(num.dim_, qe, rc / dc);
    q += t;
    rem -= t * den;
  }
  return q;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (static_cast<int>(names.size()) != dim_)
    throw std::invalid_argument("Polynomial::to_string: bad name list");
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational a = c;
    if (first) {
      if (a.sign() < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a.sign() < 0 ? " - " : " + ");
      if (a.sign() < 0) a = -a;
    }
    first = false;
    bool has_vars = false;
    for (uint32_t k : e)
      if (k > 0) has_vars = true;
    if (!has_vars) {
      out << a.to_string();
      continue;
    }
    bool lead = true;
    if (a != Rational(1)) {
      out << a.to_string();
      lead = false;
    }
    for (int i = 0; i < dim_; ++i) {
      if (e[i] == 0) continue;
      if (!lead) out << "*";
      lead = false;
      out << names[i];
      if (e[i] > 1) out << "^" << e[i];
    }
  }
  return out.str();
}

}  // namespace ff
