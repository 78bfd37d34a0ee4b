#include <doctest.h>

#include "ff/models.hpp"
#include "ff/rng.hpp"
#include "ff/tensor.hpp"

using ff::Chart;
using ff::MultivectorField;
using ff::Polynomial;
using ff::PoissonStructure;
using ff::Rational;
using ff::ScalarField;

namespace {

Chart box4() {
  std::vector<ff::Axis> axes;
  for (int i = 1; i <= 4; ++i)
    axes.push_back(ff::Axis::interval("x" + std::to_string(i), Rational(-1), Rational(1)));
  return Chart::make(std::move(axes));
}

ScalarField v(int i) { return ScalarField(Polynomial::variable(4, i)); }

ScalarField one() { return ScalarField::constant(4, Rational(1)); }

}  // namespace

TEST_CASE("nonvanishing certificates") {
  Chart c = box4();
  auto exact_pos = ff::certify_nonvanishing(one() + v(0) * v(0), c);
  CHECK(exact_pos.ok);
  CHECK(exact_pos.exact);
  auto exact_neg = ff::certify_nonvanishing(-(one() * Rational(3)) - v(1) * v(1), c);
  CHECK(exact_neg.ok);
  CHECK(exact_neg.exact);
  auto constant = ff::certify_nonvanishing(ScalarField::constant(4, Rational(-2)), c);
  CHECK(constant.ok);
  CHECK(constant.exact);

  // x1 vanishes at a grid node and is caught exactly
  auto vanishing = ff::certify_nonvanishing(v(0), c);
  CHECK_FALSE(vanishing.ok);

  // 1 + x1 vanishes inside the box on a point the sample grid happens to hit
  auto boundary = ff::certify_nonvanishing(one() + v(0), c);
  CHECK_FALSE(boundary.ok);

  // same polynomial on the fold box misses the zero: sampled, not exact
  auto missed = ff::certify_nonvanishing(ScalarField(Polynomial::constant(4, Rational(1)) +
                                                     Polynomial::variable(4, 1)),
                                         ff::fold_chart());
  CHECK(missed.ok);
  CHECK_FALSE(missed.exact);
  CHECK(missed.min_abs_sample > 0.0);
}

TEST_CASE("coordinate Casimirs give the complementary plane field") {
  Chart c = box4();
  PoissonStructure p = ff::build_flaschka_ratiu(c, {v(0), v(1)}, one());
  CHECK(p.bivector.coefficients().size() == 1);
  CHECK(p.bivector.coefficient({2, 3}).exact_equal(one()));
  CHECK(p.model_tag == "custom");
}

TEST_CASE("builder validates inputs") {
  Chart c = box4();
  CHECK_THROWS_AS(ff::build_flaschka_ratiu(c, {v(0)}, one()), std::invalid_argument);
  CHECK_THROWS_AS(ff::build_flaschka_ratiu(c, {v(0), v(1)}, v(0)), std::runtime_error);
}

TEST_CASE("construction is Poisson and matches the wedge route") {
  ff::Rng rng(59);
  Chart c = box4();
  for (int trial = 0; trial < 25; ++trial) {
    ScalarField f1(ff::random_polynomial(rng, 4, 3, 2));
    ScalarField f2(ff::random_polynomial(rng, 4, 3, 2));
    ScalarField k = one() + v(0) * v(0);
    PoissonStructure p = ff::build_flaschka_ratiu(c, {f1, f2}, k);
    CHECK(ff::schouten_self_bracket(p.bivector).exact_zero());

    // independent route: pi^{ij} = sign(i j l m) k (dF1 ^ dF2)_{lm} for the
    // complementary pair (l, m)
    ff::DifferentialForm w = wedge(differential(c, f1), differential(c, f2));
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        std::vector<int> rest;
        for (int m = 0; m < 4; ++m)
          if (m != i && m != j) rest.push_back(m);
        ff::IndexKey key = {i, j, rest[0], rest[1]};
        int sign = ff::detail::sort_sign(key);
        ScalarField expect = k * w.coefficient({rest[0], rest[1]});
        if (sign < 0) expect = -expect;
        CHECK(p.bivector.coefficient({i, j}).exact_equal(expect));
      }

    // declared Casimirs are Casimirs
    for (const ScalarField& f : {f1, f2}) {
      ff::CasimirCheck chk = ff::is_casimir(p, f);
      CHECK(chk.exact);
      CHECK(chk.holds);
    }
  }
}

TEST_CASE("orientation rescales the builder output") {
  Chart plain = box4();
  std::vector<ff::Axis> axes(plain.axes().begin(), plain.axes().end());
  Chart doubled = Chart::make(std::move(axes), ScalarField::constant(4, Rational(2)));
  PoissonStructure a = ff::build_flaschka_ratiu(plain, {v(0), v(1)}, one());
  PoissonStructure b = ff::build_flaschka_ratiu(doubled, {v(0), v(1)}, one());
  // doubling the volume density halves every coefficient
  REQUIRE(b.bivector.coefficients().size() == a.bivector.coefficients().size());
  for (const auto& [key, f] : a.bivector.coefficients())
    CHECK(b.bivector.coefficient(key).exact_equal(f * Rational(1, 2)));
}

TEST_CASE("bracket and Hamiltonian fields") {
  Chart c = box4();
  PoissonStructure p = ff::build_flaschka_ratiu(c, {v(0), v(1)}, one());
  // bracket reduces to the (x3, x4) plane
  CHECK(ff::poisson_bracket(p, v(2), v(3)).exact_equal(one()));
  CHECK(ff::poisson_bracket(p, v(3), v(2)).exact_equal(-one()));
  CHECK(ff::poisson_bracket(p, v(0), v(3)).known_zero());

  ff::Rng rng(61);
  for (int i = 0; i < 10; ++i) {
    ScalarField f(ff::random_polynomial(rng, 4, 2, 2));
    ScalarField h(ff::random_polynomial(rng, 4, 2, 2));
    std::vector<ScalarField> xh = ff::hamiltonian_vector_field(p, h);
    // X_h(f) = {f, h}
    ScalarField applied = ScalarField::constant(4, Rational(0));
    for (int m = 0; m < 4; ++m) applied = applied + xh[m] * f.derivative(m);
    CHECK(applied.exact_equal(ff::poisson_bracket(p, f, h)));
  }
}

TEST_CASE("is_casimir rejects non-Casimirs with the right residual") {
  PoissonStructure p = ff::fold_model(one());
  ScalarField x3 = ScalarField(Polynomial::variable(4, 3));
  ff::CasimirCheck chk = ff::is_casimir(p, x3);
  CHECK(chk.exact);
  CHECK_FALSE(chk.holds);
  // the defect field is x2 d_x1 + x1 d_x2
  std::vector<ScalarField> defect =
      ff::anchor_field(p.bivector, differential(p.chart, x3));
  CHECK(defect[1].exact_equal(ScalarField(Polynomial::variable(4, 2))));
  CHECK(defect[2].exact_equal(ScalarField(Polynomial::variable(4, 1))));
}

TEST_CASE("smooth casimir check needs samples") {
  PoissonStructure p = ff::fold_model(one());
  ScalarField f2 = p.casimirs[1].as_smooth();
  std::vector<std::vector<double>> samples;
  ff::Rng rng(67);
  for (int i = 0; i < 30; ++i) samples.push_back(ff::random_point(rng, p.chart));
  ff::CasimirCheck chk = ff::is_casimir(p, f2, samples);
  CHECK_FALSE(chk.exact);
  CHECK(chk.holds);
  CHECK(chk.max_residual <= 1e-9);
}

TEST_CASE("conformal rescale preserves everything that matters") {
  Chart c = box4();
  ff::Rng rng(71);
  ScalarField f1(ff::random_polynomial(rng, 4, 2, 2));
  ScalarField f2(ff::random_polynomial(rng, 4, 2, 2));
  PoissonStructure p = ff::build_flaschka_ratiu(c, {f1, f2}, one());
  ScalarField factor = one() + v(0) * v(0);
  PoissonStructure q = ff::conformal_rescale(p, factor);
  CHECK(ff::schouten_self_bracket(q.bivector).exact_zero());
  CHECK(q.conformal_factor.exact_equal(factor));
  CHECK(q.bivector.exact_equal(p.bivector.scaled(factor)));
  for (const ScalarField& f : p.casimirs) CHECK(ff::is_casimir(q, f).holds);
  CHECK_THROWS_AS(ff::conformal_rescale(p, v(0)), std::runtime_error);
}

TEST_CASE("compare_conformal classifications") {
  Chart c = box4();
  PoissonStructure p = ff::build_flaschka_ratiu(c, {v(0), v(1)}, one() + v(2) * v(2));
  auto self = ff::compare_conformal(p.bivector, p.bivector);
  CHECK(self.kind == ff::Proportionality::ByConstant);
  CHECK(self.constant == Rational(1));

  auto scaled = ff::compare_conformal(p.bivector.scaled(Rational(-7, 3)), p.bivector);
  CHECK(scaled.kind == ff::Proportionality::ByConstant);
  CHECK(scaled.constant == Rational(-7, 3));

  ScalarField field = one() + v(0) * v(0);
  auto by_field = ff::compare_conformal(p.bivector.scaled(field), p.bivector);
  CHECK(by_field.kind == ff::Proportionality::ByField);
  REQUIRE(by_field.field.has_value());
  CHECK(by_field.field->exact_equal(field));

  MultivectorField other(c, 2);
  other.set({0, 1}, one());
  auto none = ff::compare_conformal(other, p.bivector);
  CHECK(none.kind == ff::Proportionality::None);

  MultivectorField zero(c, 2);
  auto a_zero = ff::compare_conformal(zero, p.bivector);
  CHECK(a_zero.kind == ff::Proportionality::ByConstant);
  CHECK(a_zero.constant == Rational(0));
}
