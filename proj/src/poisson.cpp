#include "ff/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ff {

namespace {

int levi_civita_sign(const std::vector<int>& tuple) {
  int inv = 0;
  for (size_t i = 0; i < tuple.size(); ++i)
    for (size_t j = i + 1; j < tuple.size(); ++j)
      if (tuple[i] > tuple[j]) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

/// Shape that proves positivity: positive constant term plus terms with
/// positive coefficients and all-even exponents (or the negative of such).
bool positive_shape(const Polynomial& p) {
  Rational c0 = p.constant_value();
  if (c0.sign() <= 0) return false;
  for (const auto& [e, c] : p.terms()) {
    bool constant_term = true;
    for (uint32_t k : e)
      if (k != 0) constant_term = false;
    if (constant_term) continue;
    if (c.sign() <= 0) return false;
    for (uint32_t k : e)
      if (k % 2 != 0) return false;
  }
  return true;
}

}  // namespace

NonvanishingCert certify_nonvanishing(const ScalarField& k, const Chart& chart,
                                      int nodes_per_axis) {
  if (k.dimension() != chart.dimension())
    throw std::invalid_argument("certify_nonvanishing: dimension mismatch");
  NonvanishingCert cert;
  if (k.is_exact()) {
    const Polynomial& p = k.poly();
    if (p.is_zero()) return cert;
    if (p.is_constant() || positive_shape(p) || positive_shape(-p)) {
      cert.ok = true;
      cert.exact = true;
      cert.min_abs_sample = p.is_constant() ? std::abs(p.constant_value().to_double())
                                            : std::abs(p.constant_value().to_double());
      return cert;
    }
  }
  std::vector<int> counts(chart.dimension(), nodes_per_axis);
  GridSpec grid = GridSpec::uniform(chart, counts);
  double min_abs = std::numeric_limits<double>::infinity();
  for (size_t t = 0; t < grid.node_count(); ++t) {
    GridSpec::Node node = grid.node(t);
    if (k.is_exact()) {
      if (auto v = k.value_partial(node.xq)) {
        if (v->is_zero()) return cert;  // exact zero on the sample grid
        double av = std::abs(v->to_double());
        min_abs = std::min(min_abs, av);
        continue;
      }
    }
    double v = std::abs(k.value(node.xd));
    if (v <= 1e-12) return cert;
    min_abs = std::min(min_abs, v);
  }
  cert.ok = true;
  cert.exact = false;
  cert.min_abs_sample = min_abs;
  return cert;
}

namespace {

Rational orientation_constant(const Chart& chart) {
  const ScalarField& mu = chart.orientation();
  if (!mu.is_exact() || !mu.poly().is_constant())
    throw std::invalid_argument(
        "build_flaschka_ratiu: orientation must be an Exact constant coefficient");
  Rational c = mu.poly().constant_value();
  if (c.is_zero()) throw std::invalid_argument("build_flaschka_ratiu: vanishing orientation");
  return c;
}

MultivectorField build_exact_bivector(const Chart& chart,
                                      const std::vector<ScalarField>& casimirs,
                                      const ScalarField& k, const Rational& mu) {
  int n = chart.dimension();
  int m = n - 2;
  std::vector<std::vector<Polynomial>> grads;
  grads.reserve(m);
  for (const ScalarField& f : casimirs) {
    std::vector<Polynomial> g;
    g.reserve(n);
    for (int l = 0; l < n; ++l) g.push_back(f.poly().derivative(l));
    grads.push_back(std::move(g));
  }
  Rational inv_mu = Rational(1) / mu;
  MultivectorField pi(chart, 2);
  std::vector<int> tuple(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<int> comp;
      for (int l = 0; l < n; ++l)
        if (l != i && l != j) comp.push_back(l);
      Polynomial acc(n);
      do {
        tuple.clear();
        tuple.push_back(i);
        tuple.push_back(j);
        tuple.insert(tuple.end(), comp.begin(), comp.end());
        int sign = levi_civita_sign(tuple);
        Polynomial term = Polynomial::constant(n, Rational(sign));
        for (int a = 0; a < m; ++a) term = term * grads[a][comp[a]];
        acc += term;
      } while (std::next_permutation(comp.begin(), comp.end()));
      acc = acc * inv_mu;
      if (acc.is_zero()) continue;
      pi.set({i, j}, k * ScalarField(std::move(acc)));
    }
  }
  return pi;
}

MultivectorField build_smooth_bivector(const Chart& chart,
                                       const std::vector<ScalarField>& casimirs,
                                       const ScalarField& k, const Rational& mu) {
  int n = chart.dimension();
  int m = n - 2;
  double inv_mu = 1.0 / mu.to_double();
  std::vector<ScalarField> cs;
  cs.reserve(m);
  for (const ScalarField& f : casimirs) cs.push_back(f.as_smooth());
  ScalarField ks = k.as_smooth();

  MultivectorField pi(chart, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<std::vector<int>> perms;
      std::vector<int> comp;
      for (int l = 0; l < n; ++l)
        if (l != i && l != j) comp.push_back(l);
      std::vector<int> signs;
      do {
        std::vector<int> tuple{i, j};
        tuple.insert(tuple.end(), comp.begin(), comp.end());
        perms.push_back(comp);
        signs.push_back(levi_civita_sign(tuple));
      } while (std::next_permutation(comp.begin(), comp.end()));

      auto sum_at = [cs, perms, signs, m](std::span<const double> x) {
        std::vector<std::vector<double>> g;
        g.reserve(cs.size());
        for (const ScalarField& f : cs) g.push_back(f.gradient(x));
        double acc = 0.0;
        for (size_t p = 0; p < perms.size(); ++p) {
          double term = signs[p];
          for (int a = 0; a < m; ++a) term *= g[a][perms[p][a]];
          acc += term;
        }
        return acc;
      };

      SmoothSpec s;
      s.dimension = n;
      s.value = [ks, sum_at, inv_mu](std::span<const double> x) {
        return ks.value(x) * sum_at(x) * inv_mu;
      };
      s.gradient = [ks, cs, perms, signs, m, n, sum_at, inv_mu](std::span<const double> x) {
        std::vector<std::vector<double>> g;
        std::vector<std::vector<double>> h;
        for (const ScalarField& f : cs) {
          g.push_back(f.gradient(x));
          h.push_back(f.hessian(x));
        }
        double sum = 0.0;
        std::vector<double> dsum(n, 0.0);
        for (size_t p = 0; p < perms.size(); ++p) {
          double term = signs[p];
          for (int a = 0; a < m; ++a) term *= g[a][perms[p][a]];
          sum += term;
          for (int q = 0; q < n; ++q) {
            double dterm = 0.0;
            for (int a = 0; a < m; ++a) {
              double partial = signs[p] * h[a][perms[p][a] * n + q];
              for (int b = 0; b < m; ++b)
                if (b != a) partial *= g[b][perms[p][b]];
              dterm += partial;
            }
            dsum[q] += dterm;
          }
        }
        double kv = ks.value(x);
        std::vector<double> gk = ks.gradient(x);
        std::vector<double> out(n);
        for (int q = 0; q < n; ++q) out[q] = inv_mu * (gk[q] * sum + kv * dsum[q]);
        return out;
      };
      pi.set({i, j}, ScalarField(std::move(s)));
    }
  }
  return pi;
}

}  // namespace

PoissonStructure build_flaschka_ratiu(const Chart& chart, std::vector<ScalarField> casimirs,
                                      ScalarField k, std::string model_tag) {
  int n = chart.dimension();
  if (n < 3) throw std::invalid_argument("build_flaschka_ratiu: chart dimension must be >= 3");
  if (static_cast<int>(casimirs.size()) != n - 2)
    throw std::invalid_argument("build_flaschka_ratiu: expected " + std::to_string(n - 2) +
                                " Casimirs, got " + std::to_string(casimirs.size()));
  for (const ScalarField& f : casimirs)
    if (f.dimension() != n)
      throw std::invalid_argument("build_flaschka_ratiu: Casimir dimension mismatch");
  if (k.dimension() != n)
    throw std::invalid_argument("build_flaschka_ratiu: conformal factor dimension mismatch");
  Rational mu = orientation_constant(chart);
  NonvanishingCert cert = certify_nonvanishing(k, chart);
  if (!cert.ok)
    throw std::runtime_error("build_flaschka_ratiu: vanishing conformal factor detected on grid");

  bool exact = k.is_exact();
  for (const ScalarField& f : casimirs) exact = exact && f.is_exact();

  PoissonStructure p;
  p.chart = chart;
  p.bivector = exact ? build_exact_bivector(chart, casimirs, k, mu)
                     : build_smooth_bivector(chart, casimirs, k, mu);
  p.casimirs = std::move(casimirs);
  p.conformal_factor = std::move(k);
  p.model_tag = std::move(model_tag);

  if (exact && !schouten_self_bracket(p.bivector).exact_zero())
    throw std::logic_error("build_flaschka_ratiu: Jacobi identity failed");
  return p;
}

ScalarField poisson_bracket(const PoissonStructure& p, const ScalarField& f,
                            const ScalarField& g) {
  return bivector_bracket(p.bivector, f, g);
}

std::vector<ScalarField> hamiltonian_vector_field(const PoissonStructure& p,
                                                  const ScalarField& h) {
  return anchor_field(p.bivector, differential(p.chart, h));
}

CasimirCheck is_casimir(const PoissonStructure& p, const ScalarField& f,
                        std::span<const std::vector<double>> samples) {
  std::vector<ScalarField> v = anchor_field(p.bivector, differential(p.chart, f));
  CasimirCheck check;
  bool exact = true;
  for (const ScalarField& c : v) exact = exact && c.is_exact();
  if (exact) {
    check.exact = true;
    check.holds = true;
    for (const ScalarField& c : v)
      if (!c.known_zero()) check.holds = false;
    return check;
  }
  if (samples.empty())
    throw std::invalid_argument("is_casimir: Smooth backend needs sample points");
  for (const auto& x : samples)
    for (const ScalarField& c : v)
      check.max_residual = std::max(check.max_residual, std::abs(c.value(x)));
  check.holds = check.max_residual <= 1e-9;
  return check;
}

PoissonStructure conformal_rescale(const PoissonStructure& p, const ScalarField& c) {
  NonvanishingCert cert = certify_nonvanishing(c, p.chart);
  if (!cert.ok)
    throw std::runtime_error("conformal_rescale: vanishing factor detected on grid");
  PoissonStructure q;
  q.chart = p.chart;
  q.bivector = p.bivector.scaled(c);
  q.casimirs = p.casimirs;
  q.conformal_factor = p.conformal_factor * c;
  q.model_tag = p.model_tag;
  if (q.bivector.all_exact() && !schouten_self_bracket(q.bivector).exact_zero())
    throw std::logic_error("conformal_rescale: Jacobi identity failed after rescale");
  return q;
}

ConformalComparison compare_conformal(const MultivectorField& a, const MultivectorField& b) {
  if (a.chart() != b.chart() || a.degree() != b.degree())
    throw std::invalid_argument("compare_conformal: shape mismatch");
  ConformalComparison cmp;
  if (!a.all_exact() || !b.all_exact()) return cmp;  // Smooth coefficients: undecidable
  if (b.coefficients().empty()) {
    if (a.coefficients().empty()) {
      cmp.kind = Proportionality::ByConstant;
      cmp.constant = Rational(1);
    }
    return cmp;
  }
  if (a.coefficients().empty()) {
    cmp.kind = Proportionality::ByConstant;
    cmp.constant = Rational(0);
    return cmp;
  }
  if (a.coefficients().size() != b.coefficients().size()) return cmp;
  auto it = a.coefficients().begin();
  auto jt = b.coefficients().begin();
  for (; it != a.coefficients().end(); ++it, ++jt)
    if (it->first != jt->first) return cmp;

  // Constant ratio from the leading coefficients of the first pair.
  const Polynomial& a0 = a.coefficients().begin()->second.poly();
  const Polynomial& b0 = b.coefficients().begin()->second.poly();
  Rational r = a0.terms().rbegin()->second / b0.terms().rbegin()->second;
  bool constant_ok = !r.is_zero();
  if (constant_ok) {
    it = a.coefficients().begin();
    jt = b.coefficients().begin();
    for (; it != a.coefficients().end(); ++it, ++jt)
      if (it->second.poly() != jt->second.poly() * r) {
        constant_ok = false;
        break;
      }
  }
  if (constant_ok) {
    cmp.kind = Proportionality::ByConstant;
    cmp.constant = r;
    return cmp;
  }

  std::optional<Polynomial> c = Polynomial::divide_exact(a0, b0);
  if (!c || c->is_zero()) return cmp;
  it = a.coefficients().begin();
  jt = b.coefficients().begin();
  for (; it != a.coefficients().end(); ++it, ++jt)
    if (it->second.poly() != jt->second.poly() * *c) return cmp;
  NonvanishingCert cert = certify_nonvanishing(ScalarField(*c), a.chart());
  if (!cert.ok) return cmp;
  cmp.kind = Proportionality::ByField;
  cmp.field = ScalarField(std::move(*c));
  return cmp;
}

}  // namespace ff
