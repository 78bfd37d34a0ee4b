#include "ff/schouten.hpp"

#include <stdexcept>

namespace ff {

namespace {

// pi^{ab} as a polynomial for arbitrary a, b (sign-extended, zero on diagonal)
Polynomial coeff_poly(const MultivectorField& pi, int a, int b) {
  int n = pi.chart().dimension();
  if (a == b) return Polynomial(n);
  ScalarField c = a < b ? pi.coefficient({a, b}) : pi.coefficient({b, a});
  Polynomial p = c.poly();
  return a < b ? p : -p;
}

}  // namespace

MultivectorField schouten_self_bracket(const MultivectorField& pi) {
  if (pi.degree() != 2)
    throw std::invalid_argument("schouten_self_bracket: bivector required");
  if (!pi.all_exact())
    throw std::invalid_argument(
        "schouten_self_bracket: Exact coefficients required (use jacobiator_numeric for Smooth)");
  const Chart& chart = pi.chart();
  int n = chart.dimension();

  std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n, Polynomial(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m[a][b] = coeff_poly(pi, a, b);

  MultivectorField t(chart, 3);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Polynomial acc(n);
        for (int l = 0; l < n; ++l) {
          acc += m[i][l] * m[j][k].derivative(l);
          acc += m[j][l] * m[k][i].derivative(l);
          acc += m[k][l] * m[i][j].derivative(l);
        }
        acc = acc * Rational(2);
        if (!acc.is_zero()) t.set({i, j, k}, ScalarField(std::move(acc)));
      }
  return t;
}

ScalarField bivector_bracket(const MultivectorField& pi, const ScalarField& f,
                             const ScalarField& g) {
  if (pi.degree() != 2) throw std::invalid_argument("bivector_bracket: bivector required");
  int n = pi.chart().dimension();
  if (f.dimension() != n || g.dimension() != n)
    throw std::invalid_argument("bivector_bracket: dimension mismatch");

  if (pi.all_exact() && f.is_exact() && g.is_exact()) {
    Polynomial acc(n);
    for (const auto& [key, c] : pi.coefficients()) {
      int i = key[0], j = key[1];
      Polynomial term = f.poly().derivative(i) * g.poly().derivative(j) -
                        f.poly().derivative(j) * g.poly().derivative(i);
      acc += c.poly() * term;
    }
    return ScalarField(std::move(acc));
  }

  MultivectorField pic = pi;
  ScalarField fs = f.as_smooth(), gs = g.as_smooth();
  SmoothSpec s;
  s.dimension = n;
  s.value = [pic, fs, gs](std::span<const double> x) {
    auto gf = fs.gradient(x);
    auto gg = gs.gradient(x);
    double acc = 0.0;
    for (const auto& [key, c] : pic.coefficients()) {
      int i = key[0], j = key[1];
      acc += c.value(x) * (gf[i] * gg[j] - gf[j] * gg[i]);
    }
    return acc;
  };
  s.gradient = [pic, fs, gs, n](std::span<const double> x) {
    auto gf = fs.gradient(x);
    auto gg = gs.gradient(x);
    auto hf = fs.hessian(x);
    auto hg = gs.hessian(x);
    std::vector<double> out(n, 0.0);
    for (const auto& [key, c] : pic.coefficients()) {
      int i = key[0], j = key[1];
      double cv = c.value(x);
      auto gc = c.gradient(x);
      double term = gf[i] * gg[j] - gf[j] * gg[i];
      for (int m = 0; m < n; ++m) {
        double dterm = hf[i * n + m] * gg[j] + gf[i] * hg[j * n + m] -
                       hf[j * n + m] * gg[i] - gf[j] * hg[i * n + m];
        out[m] += gc[m] * term + cv * dterm;
      }
    }
    return out;
  };
  return ScalarField(std::move(s));
}

ScalarField jacobiator(const MultivectorField& pi, const ScalarField& f, const ScalarField& g,
                       const ScalarField& h) {
  ScalarField a = bivector_bracket(pi, f, bivector_bracket(pi, g, h));
  ScalarField b = bivector_bracket(pi, g, bivector_bracket(pi, h, f));
  ScalarField c = bivector_bracket(pi, h, bivector_bracket(pi, f, g));
  return a + b + c;
}

ScalarField trivector_on_gradients(const MultivectorField& t, const ScalarField& f,
                                   const ScalarField& g, const ScalarField& h) {
  if (t.degree() != 3) throw std::invalid_argument("trivector_on_gradients: trivector required");
  if (!t.all_exact() || !f.is_exact() || !g.is_exact() || !h.is_exact())
    throw std::invalid_argument("trivector_on_gradients: Exact inputs required");
  int n = t.chart().dimension();
  Polynomial acc(n);
  for (const auto& [key, c] : t.coefficients()) {
    int i = key[0], j = key[1], k = key[2];
    Polynomial fi = f.poly().derivative(i), fj = f.poly().derivative(j),
               fk = f.poly().derivative(k);
    Polynomial gi = g.poly().derivative(i), gj = g.poly().derivative(j),
               gk = g.poly().derivative(k);
    Polynomial hi = h.poly().derivative(i), hj = h.poly().derivative(j),
               hk = h.poly().derivative(k);
    Polynomial det = fi * (gj * hk - gk * hj) - fj * (gi * hk - gk * hi) +
                     fk * (gi * hj - gj * hi);
    acc += c.poly() * det;
  }
  return ScalarField(std::move(acc));
}

double jacobiator_numeric(const MultivectorField& pi, const ScalarField& f, const ScalarField& g,
                          const ScalarField& h, std::span<const double> x) {
  if (pi.degree() != 2) throw std::invalid_argument("jacobiator_numeric: bivector required");
  int n = pi.chart().dimension();

  // Full coefficient matrix and its gradients at x.
  std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
  std::vector<std::vector<double>> dm(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) dm[a * n + b] = std::vector<double>(n, 0.0);
  for (const auto& [key, c] : pi.coefficients()) {
    int a = key[0], b = key[1];
    double v = c.value(x);
    auto gv = c.gradient(x);
    m[a * n + b] = v;
    m[b * n + a] = -v;
    dm[a * n + b] = gv;
    for (int l = 0; l < n; ++l) dm[b * n + a][l] = -gv[l];
  }

  auto gf = f.gradient(x);
  auto gg = g.gradient(x);
  auto gh = h.gradient(x);

  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        double tijk = 0.0;
        for (int l = 0; l < n; ++l) {
          tijk += m[i * n + l] * dm[j * n + k][l];
          tijk += m[j * n + l] * dm[k * n + i][l];
          tijk += m[k * n + l] * dm[i * n + j][l];
        }
        tijk *= 2.0;
        double det = gf[i] * (gg[j] * gh[k] - gg[k] * gh[j]) -
                     gf[j] * (gg[i] * gh[k] - gg[k] * gh[i]) +
                     gf[k] * (gg[i] * gh[j] - gg[j] * gh[i]);
        acc += tijk * det;
      }
  return 0.5 * acc;
}

}  // namespace ff
