#include "ff/scalar_field.hpp"

#include <stdexcept>

namespace ff {

ScalarField::ScalarField(Polynomial p)
    : dim_(p.dimension()), poly_(std::make_shared<const Polynomial>(std::move(p))) {}

ScalarField::ScalarField(SmoothSpec s) : dim_(s.dimension) {
  if (!s.value || !s.gradient)
    throw std::invalid_argument("ScalarField: Smooth spec needs value and gradient evaluators");
  smooth_ = std::make_shared<const SmoothSpec>(std::move(s));
}

ScalarField ScalarField::constant(int dimension, const Rational& c) {
  return ScalarField(Polynomial::constant(dimension, c));
}

const Polynomial& ScalarField::poly() const {
  if (!poly_) throw std::logic_error("ScalarField: Smooth field has no polynomial");
  return *poly_;
}

double ScalarField::value(std::span<const double> x) const {
  return poly_ ? poly_->eval(x) : smooth_->value(x);
}

Rational ScalarField::value_exact(std::span<const Rational> x) const {
  if (!poly_) throw std::logic_error("ScalarField: exact evaluation needs an Exact field");
  return poly_->eval(x);
}

std::optional<Rational> ScalarField::value_partial(
    std::span<const std::optional<Rational>> x) const {
  if (!poly_) return std::nullopt;
  return poly_->eval_partial(x);
}

std::vector<double> ScalarField::gradient(std::span<const double> x) const {
  return poly_ ? poly_->gradient_eval(x) : smooth_->gradient(x);
}

std::vector<Rational> ScalarField::gradient_exact(std::span<const Rational> x) const {
  if (!poly_) throw std::logic_error("ScalarField: exact gradient needs an Exact field");
  return poly_->gradient_eval(x);
}

bool ScalarField::has_hessian() const {
  return poly_ != nullptr || (smooth_ && smooth_->hessian);
}

std::vector<double> ScalarField::hessian(std::span<const double> x) const {
  if (poly_) {
    std::vector<double> h(static_cast<size_t>(dim_) * dim_);
    for (int i = 0; i < dim_; ++i) {
      Polynomial di = poly_->derivative(i);
      for (int j = 0; j < dim_; ++j) h[i * dim_ + j] = di.derivative(j).eval(x);
    }
    return h;
  }
  if (!smooth_->hessian) throw std::logic_error("ScalarField: no Hessian evaluator");
  return smooth_->hessian(x);
}

ScalarField ScalarField::derivative(int var) const {
  if (poly_) return ScalarField(poly_->derivative(var));
  auto base = smooth_;
  int n = dim_;
  SmoothSpec d;
  d.dimension = n;
  d.value = [base, var](std::span<const double> x) { return base->gradient(x)[var]; };
  if (base->hessian) {
    d.gradient = [base, var, n](std::span<const double> x) {
      std::vector<double> h = base->hessian(x);
      std::vector<double> g(n);
      for (int j = 0; j < n; ++j) g[j] = h[var * n + j];
      return g;
    };
  } else {
    d.gradient = [](std::span<const double>) -> std::vector<double> {
      throw std::logic_error("ScalarField: derivative of a Smooth field without Hessian");
    };
  }
  return ScalarField(std::move(d));
}

ScalarField ScalarField::as_smooth() const {
  if (!poly_) return *this;
  auto p = poly_;
  int n = dim_;
  SmoothSpec s;
  s.dimension = n;
  s.value = [p](std::span<const double> x) { return p->eval(x); };
  s.gradient = [p](std::span<const double> x) { return p->gradient_eval(x); };
  s.hessian = [p, n](std::span<const double> x) {
    std::vector<double> h(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
      Polynomial di = p->derivative(i);
      for (int j = 0; j < n; ++j) h[i * n + j] = di.derivative(j).eval(x);
    }
    return h;
  };
  return ScalarField(std::move(s));
}

ScalarField ScalarField::operator-() const {
  if (poly_) return ScalarField(-*poly_);
  auto base = smooth_;
  SmoothSpec s;
  s.dimension = dim_;
  s.value = [base](std::span<const double> x) { return -base->value(x); };
  s.gradient = [base](std::span<const double> x) {
    auto g = base->gradient(x);
    for (double& v : g) v = -v;
    return g;
  };
  if (base->hessian) {
    s.hessian = [base](std::span<const double> x) {
      auto h = base->hessian(x);
      for (double& v : h) v = -v;
      return h;
    };
  }
  return ScalarField(std::move(s));
}

namespace {

void check_dims(const ScalarField& a, const ScalarField& b) {
  if (a.dimension() != b.dimension())
    throw std::invalid_argument("ScalarField: dimension mismatch");
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  check_dims(a, b);
  if (a.is_exact() && b.is_exact()) return ScalarField(a.poly() + b.poly());
  ScalarField sa = a.as_smooth(), sb = b.as_smooth();
  SmoothSpec s;
  s.dimension = a.dimension();
  s.value = [sa, sb](std::span<const double> x) { return sa.value(x) + sb.value(x); };
  s.gradient = [sa, sb](std::span<const double> x) {
    auto g = sa.gradient(x);
    auto h = sb.gradient(x);
    for (size_t i = 0; i < g.size(); ++i) g[i] += h[i];
    return g;
  };
  if (sa.has_hessian() && sb.has_hessian()) {
    s.hessian = [sa, sb](std::span<const double> x) {
      auto g = sa.hessian(x);
      auto h = sb.hessian(x);
      for (size_t i = 0; i < g.size(); ++i) g[i] += h[i];
      return g;
    };
  }
  return ScalarField(std::move(s));
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) { return a + (-b); }

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  check_dims(a, b);
  if (a.is_exact() && b.is_exact()) return ScalarField(a.poly() * b.poly());
  ScalarField sa = a.as_smooth(), sb = b.as_smooth();
  int n = a.dimension();
  SmoothSpec s;
  s.dimension = n;
  s.value = [sa, sb](std::span<const double> x) { return sa.value(x) * sb.value(x); };
  s.gradient = [sa, sb](std::span<const double> x) {
    double va = sa.value(x), vb = sb.value(x);
    auto ga = sa.gradient(x);
    auto gb = sb.gradient(x);
    for (size_t i = 0; i < ga.size(); ++i) ga[i] = ga[i] * vb + va * gb[i];
    return ga;
  };
  if (sa.has_hessian() && sb.has_hessian()) {
    s.hessian = [sa, sb, n](std::span<const double> x) {
      double va = sa.value(x), vb = sb.value(x);
      auto ga = sa.gradient(x);
      auto gb = sb.gradient(x);
      auto ha = sa.hessian(x);
      auto hb = sb.hessian(x);
      std::vector<double> h(static_cast<size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          h[i * n + j] =
              ha[i * n + j] * vb + va * hb[i * n + j] + ga[i] * gb[j] + ga[j] * gb[i];
      return h;
    };
  }
  return ScalarField(std::move(s));
}

ScalarField ScalarField::operator*(const Rational& c) const {
  if (poly_) return ScalarField(*poly_ * c);
  return *this * ScalarField::constant(dim_, c).as_smooth();
}

std::string ScalarField::to_string(std::span<const std::string> names) const {
  return poly_ ? poly_->to_string(names) : "<smooth>";
}

}  // namespace ff
