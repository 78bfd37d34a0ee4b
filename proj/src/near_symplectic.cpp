#include "ff/near_symplectic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ff/leaf.hpp"
#include "ff/linalg.hpp"

namespace ff {

namespace {

/// (x1, x2, x3) -> (t, x1, x2, x3), inserting an unused t slot.
Polynomial lift_to_chart(const Polynomial& f) {
  Polynomial g(4);
  for (const auto& [e, c] : f.terms()) {
    Exponents le(4, 0);
    for (int i = 0; i < 3; ++i) le[i + 1] = e[i];
    g.add_term(le, c);
  }
  return g;
}

}  // namespace

Chart near_symplectic_chart() {
  std::vector<Axis> axes;
  axes.push_back(Axis::circle("t", 2.0 * std::numbers::pi));
  axes.push_back(Axis::interval("x1", Rational(-1), Rational(1)));
  axes.push_back(Axis::interval("x2", Rational(-1), Rational(1)));
  axes.push_back(Axis::interval("x3", Rational(-1), Rational(1)));
  return Chart::make(std::move(axes));
}

NearSymplecticForm build_near_symplectic(const Polynomial& f, std::string circle_class) {
  if (f.dimension() != 3)
    throw std::invalid_argument("build_near_symplectic: f must be a polynomial in (x1, x2, x3)");
  Chart chart = near_symplectic_chart();
  Polynomial lifted = lift_to_chart(f);
  Polynomial d1 = lifted.derivative(1);
  Polynomial d2 = lifted.derivative(2);
  Polynomial d3 = lifted.derivative(3);

  DifferentialForm omega(chart, 2);
  omega.set({0, 1}, ScalarField(d1));
  omega.set({0, 2}, ScalarField(d2));
  omega.set({0, 3}, ScalarField(d3));
  omega.set({2, 3}, ScalarField(d1));
  omega.set({1, 3}, ScalarField(-d2));
  omega.set({1, 2}, ScalarField(d3));

  return NearSymplecticForm{std::move(chart), std::move(omega), f, std::move(lifted),
                            std::move(circle_class)};
}

NearSymplecticReport check_near_symplectic(const NearSymplecticForm& w, const GridSpec& grid) {
  if (grid.axes().size() != static_cast<size_t>(w.chart.dimension()))
    throw std::invalid_argument("check_near_symplectic: grid dimension mismatch");

  NearSymplecticReport rep;

  DifferentialForm sq = wedge(w.omega, w.omega);
  Polynomial grad2(4);
  for (int i = 1; i < 4; ++i) {
    Polynomial di = w.f_lifted.derivative(i);
    grad2 += di * di;
  }
  ScalarField expect = ScalarField(grad2) * Rational(2);
  ScalarField square = sq.coefficient({0, 1, 2, 3});
  rep.wedge_identity = square.exact_equal(expect);

  rep.d_omega = exterior_derivative(w.omega);
  rep.closed = rep.d_omega.exact_zero();

  struct Entry {
    IndexKey key;
    ScalarField f;
    std::vector<ScalarField> d;
  };
  std::vector<Entry> entries;
  for (const auto& [key, f] : w.omega.coefficients()) {
    Entry e{key, f, {}};
    for (int m = 0; m < 4; ++m) e.d.push_back(f.derivative(m));
    entries.push_back(std::move(e));
  }

  rep.wedge_nonneg = true;
  rep.zero_locus_matches = true;
  rep.gradient_rank3 = true;
  rep.rank_never_2 = true;

  const size_t n = grid.node_count();
  rep.rows.reserve(n);
  for (size_t idx = 0; idx < n; ++idx) {
    GridSpec::Node nd = grid.node(idx);
    NearSymplecticReport::Row row;
    row.x = nd.xd;

    bool exact_ok = true;
    bool zero = true;
    std::vector<std::vector<Rational>> m(4, std::vector<Rational>(4, Rational(0)));
    for (const Entry& e : entries) {
      auto v = e.f.value_partial(nd.xq);
      if (!v) {
        exact_ok = false;
        break;
      }
      if (!v->is_zero()) zero = false;
      m[e.key[0]][e.key[1]] = *v;
      m[e.key[1]][e.key[0]] = -*v;
    }

    if (exact_ok) {
      row.zero = zero;
      row.rank = rank_exact(m);
      if (auto ws = square.value_partial(nd.xq)) {
        row.wedge_square = ws->to_double();
        if (ws->sign() < 0) rep.wedge_nonneg = false;
      } else {
        row.wedge_square = square.value(nd.xd);
        if (row.wedge_square < 0) rep.wedge_nonneg = false;
      }
    } else {
      Eigen::MatrixXd md = Eigen::MatrixXd::Zero(4, 4);
      zero = true;
      for (const Entry& e : entries) {
        double v = e.f.value(nd.xd);
        if (std::abs(v) > 1e-12) zero = false;
        md(e.key[0], e.key[1]) = v;
        md(e.key[1], e.key[0]) = -v;
      }
      row.zero = zero;
      row.rank = rank_numeric(md);
      row.wedge_square = square.value(nd.xd);
      if (row.wedge_square < 0) rep.wedge_nonneg = false;
    }

    bool crit;
    if (nd.xq[1] && nd.xq[2] && nd.xq[3]) {
      std::vector<Rational> x3{*nd.xq[1], *nd.xq[2], *nd.xq[3]};
      auto g = w.f.gradient_eval(std::span<const Rational>(x3));
      crit = g[0].is_zero() && g[1].is_zero() && g[2].is_zero();
    } else {
      std::vector<double> x3{nd.xd[1], nd.xd[2], nd.xd[3]};
      auto g = w.f.gradient_eval(std::span<const double>(x3));
      crit = std::abs(g[0]) < 1e-12 && std::abs(g[1]) < 1e-12 && std::abs(g[2]) < 1e-12;
    }
    if (crit != row.zero) rep.zero_locus_matches = false;

    if (row.zero) {
      rep.zero_rows.push_back(idx);
      if (exact_ok) {
        std::vector<std::vector<Rational>> jac;
        for (const Entry& e : entries) {
          std::vector<Rational> jrow(4, Rational(0));
          for (int col = 0; col < 4; ++col) {
            auto v = e.d[col].value_partial(nd.xq);
            jrow[col] = v ? *v : Rational(0);
          }
          jac.push_back(std::move(jrow));
        }
        row.gradient_rank = rank_exact(std::move(jac));
      } else {
        Eigen::MatrixXd jac(entries.size(), 4);
        for (size_t r = 0; r < entries.size(); ++r)
          for (int col = 0; col < 4; ++col) jac(r, col) = entries[r].d[col].value(nd.xd);
        row.gradient_rank = rank_numeric(jac);
      }
      if (*row.gradient_rank != 3) rep.gradient_rank3 = false;
    }

    if (!((row.rank == 0 && row.zero) || (row.rank == 4 && !row.zero))) rep.rank_never_2 = false;
    rep.rows.push_back(std::move(row));
  }

  return rep;
}

double pointwise_norm(const NearSymplecticForm& w, std::span<const double> x) {
  double s = 0.0;
  for (const auto& [key, f] : w.omega.coefficients()) {
    double v = f.value(x);
    s += v * v;
  }
  return std::sqrt(s);
}

ContrastReport contrast_report(const NearSymplecticForm& w, const PoissonStructure& fold,
                               std::vector<double> radii) {
  if (radii.size() < 2) throw std::invalid_argument("contrast_report: need at least two radii");
  for (size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw std::invalid_argument("contrast_report: radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1]))
      throw std::invalid_argument("contrast_report: radii must be strictly decreasing");
  }

  ContrastReport rep;
  std::vector<double> norms, ratios;
  for (double r : radii) {
    std::vector<double> x{0.0, r, 0.0, 0.0};
    ContrastRow row;
    row.radius = r;
    row.omega_norm = pointwise_norm(w, x);
    row.area_ratio = area_form_ratio(fold, x);
    norms.push_back(row.omega_norm);
    ratios.push_back(row.area_ratio);
    rep.rows.push_back(row);
  }
  rep.omega_slope = fit_loglog(radii, norms).slope;
  rep.ratio_slope = fit_loglog(radii, ratios).slope;
  return rep;
}

}  // namespace ff
