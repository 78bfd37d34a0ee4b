#include "ff/tensor.hpp"

#include "ff/linalg.hpp"

namespace ff {

DifferentialForm exterior_derivative(const DifferentialForm& w) {
  const Chart& chart = w.chart();
  int n = chart.dimension();
  if (w.degree() >= n)
    return DifferentialForm(chart, std::min(w.degree() + 1, n));
  DifferentialForm d(chart, w.degree() + 1);
  for (const auto& [key, f] : w.coefficients()) {
    for (int m = 0; m < n; ++m) {
      if (std::binary_search(key.begin(), key.end(), m)) continue;
      ScalarField df = f.derivative(m);
      if (df.known_zero()) continue;
      IndexKey ext = key;
      auto pos = std::lower_bound(ext.begin(), ext.end(), m);
      int before = static_cast<int>(pos - ext.begin());
      ext.insert(pos, m);
      d.add(ext, (before % 2 == 0) ? df : -df);
    }
  }
  return d;
}

DifferentialForm differential(const Chart& chart, const ScalarField& f) {
  if (f.dimension() != chart.dimension())
    throw std::invalid_argument("differential: dimension mismatch");
  DifferentialForm df(chart, 1);
  for (int i = 0; i < chart.dimension(); ++i) df.set({i}, f.derivative(i));
  return df;
}

double pair_bivector(const MultivectorField& pi, const DifferentialForm& alpha,
                     const DifferentialForm& beta, std::span<const double> x) {
  if (pi.degree() != 2) throw std::invalid_argument("pair_bivector: bivector required");
  if (alpha.degree() != 1 || beta.degree() != 1)
    throw std::invalid_argument("pair_bivector: 1-forms required");
  if (pi.chart() != alpha.chart() || pi.chart() != beta.chart())
    throw std::invalid_argument("pair_bivector: chart mismatch");
  int n = pi.chart().dimension();
  std::vector<double> a(n, 0.0), b(n, 0.0);
  for (const auto& [k, f] : alpha.coefficients()) a[k[0]] = f.value(x);
  for (const auto& [k, f] : beta.coefficients()) b[k[0]] = f.value(x);
  double acc = 0.0;
  for (const auto& [k, f] : pi.coefficients()) {
    double c = f.value(x);
    acc += c * (a[k[0]] * b[k[1]] - a[k[1]] * b[k[0]]);
  }
  return acc;
}

std::vector<ScalarField> anchor_field(const MultivectorField& pi, const DifferentialForm& alpha) {
  if (pi.degree() != 2) throw std::invalid_argument("anchor_field: bivector required");
  if (alpha.degree() != 1) throw std::invalid_argument("anchor_field: 1-form required");
  if (pi.chart() != alpha.chart()) throw std::invalid_argument("anchor_field: chart mismatch");
  int n = pi.chart().dimension();
  std::vector<ScalarField> v(n, ScalarField::constant(n, Rational(0)));
  for (const auto& [k, f] : pi.coefficients()) {
    int i = k[0], j = k[1];
    ScalarField aj = alpha.coefficient({j});
    ScalarField ai = alpha.coefficient({i});
    if (!aj.known_zero()) v[i] = v[i] + f * aj;   // pi^{ij} a_j
    if (!ai.known_zero()) v[j] = v[j] - f * ai;   // pi^{ji} a_i = -pi^{ij} a_i
  }
  return v;
}

std::vector<double> anchor_at(const MultivectorField& pi, std::span<const double> alpha,
                              std::span<const double> x) {
  int n = pi.chart().dimension();
  if (static_cast<int>(alpha.size()) != n)
    throw std::invalid_argument("anchor_at: covector size mismatch");
  std::vector<double> v(n, 0.0);
  for (const auto& [k, f] : pi.coefficients()) {
    double c = f.value(x);
    v[k[0]] += c * alpha[k[1]];
    v[k[1]] -= c * alpha[k[0]];
  }
  return v;
}

Eigen::MatrixXd bivector_matrix(const MultivectorField& pi, std::span<const double> x) {
  if (pi.degree() != 2) throw std::invalid_argument("bivector_matrix: bivector required");
  int n = pi.chart().dimension();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [k, f] : pi.coefficients()) {
    double c = f.value(x);
    m(k[0], k[1]) = c;
    m(k[1], k[0]) = -c;
  }
  return m;
}

std::vector<std::vector<Rational>> bivector_matrix_exact(const MultivectorField& pi,
                                                         std::span<const Rational> x) {
  if (pi.degree() != 2) throw std::invalid_argument("bivector_matrix_exact: bivector required");
  int n = pi.chart().dimension();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
  for (const auto& [k, f] : pi.coefficients()) {
    Rational c = f.value_exact(x);
    m[k[0]][k[1]] = c;
    m[k[1]][k[0]] = -c;
  }
  return m;
}

std::optional<std::vector<std::vector<Rational>>> bivector_matrix_partial(
    const MultivectorField& pi, std::span<const std::optional<Rational>> x) {
  if (pi.degree() != 2) throw std::invalid_argument("bivector_matrix_partial: bivector required");
  int n = pi.chart().dimension();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
  for (const auto& [k, f] : pi.coefficients()) {
    std::optional<Rational> c = f.value_partial(x);
    if (!c) return std::nullopt;
    m[k[0]][k[1]] = *c;
    m[k[1]][k[0]] = -*c;
  }
  return m;
}

int rank_at(const MultivectorField& pi, std::span<const double> x) {
  return rank_numeric(bivector_matrix(pi, x));
}

int rank_at(const MultivectorField& pi, std::span<const Rational> x) {
  return rank_exact(bivector_matrix_exact(pi, x));
}

std::optional<int> rank_at_partial(const MultivectorField& pi,
                                   std::span<const std::optional<Rational>> x) {
  auto m = bivector_matrix_partial(pi, x);
  if (!m) return std::nullopt;
  return rank_exact(std::move(*m));
}

}  // namespace ff
