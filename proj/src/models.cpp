#include "ff/models.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ff/parallel.hpp"

namespace ff {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Polynomial var(int dim, int i) { return Polynomial::variable(dim, i); }

}  // namespace

Chart lefschetz_chart() {
  return Chart::make({Axis::interval("x1", Rational(-1), Rational(1)),
                      Axis::interval("y1", Rational(-1), Rational(1)),
                      Axis::interval("x2", Rational(-1), Rational(1)),
                      Axis::interval("y2", Rational(-1), Rational(1))});
}

Chart fold_chart() {
  Rational r(8, 5);
  return Chart::make({Axis::circle("theta", kTwoPi), Axis::interval("x1", -r, r),
                      Axis::interval("x2", -r, r), Axis::interval("x3", -r, r)});
}

std::vector<ScalarField> lefschetz_casimirs() {
  // F1 = x1^2 - y1^2 + x2^2 - y2^2, F2 = 2(x1 y1 + x2 y2): Re and Im of
  // z1^2 + z2^2 with z_j = x_j + i y_j.
  Polynomial x1 = var(4, 0), y1 = var(4, 1), x2 = var(4, 2), y2 = var(4, 3);
  Polynomial f1 = x1 * x1 - y1 * y1 + x2 * x2 - y2 * y2;
  Polynomial f2 = (x1 * y1 + x2 * y2) * Rational(2);
  return {ScalarField(std::move(f1)), ScalarField(std::move(f2))};
}

std::vector<ScalarField> fold_casimirs() {
  Polynomial x1 = var(4, 1), x2 = var(4, 2), x3 = var(4, 3);
  Polynomial q = -(x1 * x1) + x2 * x2 + x3 * x3;
  return {ScalarField(var(4, 0)), ScalarField(std::move(q))};
}

PoissonStructure lefschetz_model(ScalarField k) {
  Chart chart = lefschetz_chart();
  if (k.dimension() != 4) throw std::invalid_argument("lefschetz_model: k must live on B^4");
  NonvanishingCert cert = certify_nonvanishing(k, chart);
  if (!cert.ok) throw std::runtime_error("lefschetz_model: vanishing k detected on grid");

  Polynomial x1 = var(4, 0), y1 = var(4, 1), x2 = var(4, 2), y2 = var(4, 3);
  MultivectorField pi(chart, 2);
  // Coefficients of the vanishing-cycle bivector on the chart
  // (x1, y1, x2, y2); rank 2 away from the origin, rank 0 at it.
  pi.set({0, 1}, k * ScalarField(x2 * x2 + y2 * y2));                    // d_x1 ^ d_y1
  pi.set({2, 3}, k * ScalarField(x1 * x1 + y1 * y1));                    // d_x2 ^ d_y2
  pi.set({0, 3}, k * ScalarField(-(y1 * y2) - x1 * x2));                 // d_x1 ^ d_y2
  pi.set({1, 2}, k * ScalarField(x1 * x2 + y1 * y2));                    // d_y1 ^ d_x2
  pi.set({1, 3}, k * ScalarField(-(x1 * y2) + y1 * x2));                 // d_y1 ^ d_y2
  pi.set({0, 2}, k * ScalarField(-(x1 * y2) + y1 * x2));                 // d_x1 ^ d_x2

  PoissonStructure p;
  p.chart = chart;
  p.bivector = std::move(pi);
  p.casimirs = lefschetz_casimirs();
  p.conformal_factor = std::move(k);
  p.model_tag = "lefschetz";
  return p;
}

PoissonStructure fold_model(ScalarField k, bool orientable) {
  Chart chart = fold_chart();
  if (k.dimension() != 4)
    throw std::invalid_argument("fold_model: k must live on S^1 x B^3");
  NonvanishingCert cert = certify_nonvanishing(k, chart);
  if (!cert.ok) throw std::runtime_error("fold_model: vanishing k detected on grid");
  if (!orientable) {
    std::vector<std::vector<double>> pts;
    if (!(k.is_exact() && k.poly().degree_in(0) == 0)) {
      // Deterministic sample set for the non-exact symmetry check.
      for (int t = 0; t < 8; ++t)
        for (int a = -2; a <= 2; ++a)
          for (int b = -2; b <= 2; ++b)
            for (int c = -2; c <= 2; ++c)
              pts.push_back({kTwoPi * t / 8.0, 0.7 * a, 0.7 * b, 0.7 * c});
    }
    IotaSymmetry sym = check_iota_symmetry(chart, k, pts);
    if (!sym.holds)
      throw std::invalid_argument(
          "fold_model: non-orientable variant needs an involution-symmetric k");
  }

  Polynomial x1 = var(4, 1), x2 = var(4, 2), x3 = var(4, 3);
  MultivectorField pi(chart, 2);
  pi.set({2, 3}, k * ScalarField(x1));       // x1 d_x2 ^ d_x3
  pi.set({1, 3}, k * ScalarField(x2));       // x2 d_x1 ^ d_x3
  pi.set({1, 2}, k * ScalarField(-x3));      // -x3 d_x1 ^ d_x2

  PoissonStructure p;
  p.chart = chart;
  p.bivector = std::move(pi);
  p.casimirs = fold_casimirs();
  p.conformal_factor = std::move(k);
  p.model_tag = orientable ? "fold" : "fold-nonorientable";
  return p;
}

namespace {

void require_fold_chart(const Chart& chart) {
  if (chart.dimension() != 4 || !chart.axis(0).periodic)
    throw std::invalid_argument("involution: fold chart required");
}

const int kIotaSigns[4] = {1, -1, -1, 1};

}  // namespace

std::vector<double> iota_apply(const Chart& chart, std::span<const double> x) {
  require_fold_chart(chart);
  std::vector<double> y(x.begin(), x.end());
  y[0] += chart.axis(0).period / 2.0;
  y[1] = -y[1];
  y[2] = -y[2];
  chart.wrap(y);
  return y;
}

ScalarField iota_pullback(const Chart& chart, const ScalarField& f) {
  require_fold_chart(chart);
  if (f.is_exact() && f.poly().degree_in(0) == 0)
    return ScalarField(f.poly().substitute_signs(kIotaSigns));
  ScalarField fs = f.as_smooth();
  Chart c = chart;
  SmoothSpec s;
  s.dimension = 4;
  s.value = [fs, c](std::span<const double> x) { return fs.value(iota_apply(c, x)); };
  s.gradient = [fs, c](std::span<const double> x) {
    std::vector<double> g = fs.gradient(iota_apply(c, x));
    for (int i = 0; i < 4; ++i) g[i] *= kIotaSigns[i];
    return g;
  };
  if (fs.has_hessian()) {
    s.hessian = [fs, c](std::span<const double> x) {
      std::vector<double> h = fs.hessian(iota_apply(c, x));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) h[i * 4 + j] *= kIotaSigns[i] * kIotaSigns[j];
      return h;
    };
  }
  return ScalarField(std::move(s));
}

IotaSymmetry check_iota_symmetry(const Chart& chart, const ScalarField& k,
                                 std::span<const std::vector<double>> samples) {
  require_fold_chart(chart);
  IotaSymmetry sym;
  if (k.is_exact() && k.poly().degree_in(0) == 0) {
    sym.exact = true;
    sym.holds = k.poly().substitute_signs(kIotaSigns) == k.poly();
    return sym;
  }
  if (samples.empty())
    throw std::invalid_argument("check_iota_symmetry: sampled path needs points");
  for (const auto& x : samples) {
    double r = std::abs(k.value(iota_apply(chart, x)) - k.value(x));
    sym.max_residual = std::max(sym.max_residual, r);
  }
  sym.holds = sym.max_residual <= 1e-9;
  return sym;
}

InvolutionCheck involution_poisson_check(const PoissonStructure& p, const ScalarField& g,
                                         const ScalarField& h,
                                         std::span<const std::vector<double>> samples) {
  require_fold_chart(p.chart);
  InvolutionCheck check;

  ScalarField gi = iota_pullback(p.chart, g);
  ScalarField hi = iota_pullback(p.chart, h);
  ScalarField lhs = poisson_bracket(p, gi, hi);
  ScalarField rhs0 = poisson_bracket(p, g, h);

  bool exact_ok = lhs.is_exact() && rhs0.is_exact() && rhs0.poly().degree_in(0) == 0 &&
                  lhs.poly().degree_in(0) == 0;
  if (exact_ok) {
    check.exact = true;
    Polynomial diff = lhs.poly() - rhs0.poly().substitute_signs(kIotaSigns);
    check.holds = diff.is_zero();
    if (!check.holds) {
      // Deterministic scan for a witnessing point of the nonzero residual.
      for (int trial = 0; trial < 4096 && !check.witness; ++trial) {
        std::vector<Rational> xq;
        std::vector<double> xd;
        for (int i = 0; i < 4; ++i) {
          long num = ((trial * 13 + i * 7) % 21) - 10;  // grid in [-1, 1]
          xq.emplace_back(num, 10);
          xd.push_back(xq.back().to_double());
        }
        Rational v = diff.eval(std::span<const Rational>(xq));
        if (!v.is_zero()) {
          check.witness = xd;
          check.max_residual = std::abs(v.to_double());
        }
      }
    }
    return check;
  }

  if (samples.empty())
    throw std::invalid_argument("involution_poisson_check: sampled path needs points");
  ScalarField rhs = iota_pullback(p.chart, rhs0);
  for (const auto& x : samples) {
    double r = std::abs(lhs.value(x) - rhs.value(x));
    if (r > check.max_residual) {
      check.max_residual = r;
      check.witness = std::vector<double>(x.begin(), x.end());
    }
  }
  check.holds = check.max_residual <= 1e-9;
  if (check.holds) check.witness.reset();
  return check;
}

bool sl2_check(const PoissonStructure& p) {
  int n = p.chart.dimension();
  if (n < 3) return false;
  if (!p.bivector.all_exact()) return false;
  // Coordinate functions e1, e2, e3 on the last three axes.
  std::vector<ScalarField> e;
  for (int i = n - 3; i < n; ++i) e.emplace_back(Polynomial::variable(n, i));
  ScalarField b12 = poisson_bracket(p, e[0], e[1]);
  ScalarField b23 = poisson_bracket(p, e[1], e[2]);
  ScalarField b13 = poisson_bracket(p, e[0], e[2]);
  return b12.exact_equal(-e[2]) && b23.exact_equal(e[0]) && b13.exact_equal(e[1]);
}

std::vector<double> fold_fundamental_domain(const Chart& chart, std::span<const double> x) {
  require_fold_chart(chart);
  std::vector<double> y(x.begin(), x.end());
  chart.wrap(y);
  double half = chart.axis(0).period / 2.0;
  if (y[0] >= half) y = iota_apply(chart, y);
  return y;
}

std::string to_string(NodeLabel label) {
  switch (label) {
    case NodeLabel::Regular: return "Regular";
    case NodeLabel::LefschetzPoint: return "LefschetzPoint";
    case NodeLabel::FoldCircle: return "FoldCircle";
    case NodeLabel::Singular: return "Singular";
  }
  return "Singular";
}

SingularSetReport classify_singular_set(const PoissonStructure& p, const GridSpec& grid) {
  SingularSetReport report;
  size_t total = grid.node_count();
  if (total == 0) return report;
  bool lefschetz = p.model_tag == "lefschetz";
  bool fold = p.model_tag == "fold" || p.model_tag == "fold-nonorientable";
  report.rows.resize(total);
  parallel_for(total, [&](size_t t) {
    GridSpec::Node node = grid.node(t);
    SingularSetReport::Row row;
    row.x = node.xd;
    std::optional<int> exact_rank = rank_at_partial(p.bivector, node.xq);
    if (exact_rank) {
      row.rank = *exact_rank;
      row.exact = true;
    } else {
      row.rank = rank_at(p.bivector, node.xd);
      row.exact = false;
    }
    if (row.rank == 2) {
      row.label = NodeLabel::Regular;
    } else if (row.rank == 0 && lefschetz) {
      row.label = NodeLabel::LefschetzPoint;
    } else if (row.rank == 0 && fold) {
      row.label = NodeLabel::FoldCircle;
    } else {
      row.label = NodeLabel::Singular;
    }
    report.rows[t] = std::move(row);
  });
  return report;
}

double singular_set_distance(const PoissonStructure& p, std::span<const double> x) {
  if (p.model_tag == "lefschetz") {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
  }
  if (p.model_tag == "fold" || p.model_tag == "fold-nonorientable") {
    double s = 0.0;
    for (size_t i = 1; i < x.size(); ++i) s += x[i] * x[i];
    return std::sqrt(s);
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace ff
