#include <doctest.h>

#include <cmath>

#include "ff/models.hpp"
#include "ff/rng.hpp"

using ff::Rng;

TEST_CASE("same seed reproduces the stream") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(43);
  int differing = 0;
  Rng a2(42);
  for (int i = 0; i < 100; ++i)
    if (a2.next_u64() != c.next_u64()) ++differing;
  CHECK(differing > 90);
}

TEST_CASE("splits are independent of call interleaving") {
  Rng root(7);
  Rng lhs = root.split("jacobi");
  // drawing from one substream must not disturb another
  Rng noisy = root.split("other");
  for (int i = 0; i < 10; ++i) noisy.next_u64();
  Rng rhs = root.split("jacobi");
  for (int i = 0; i < 50; ++i) CHECK(lhs.next_u64() == rhs.next_u64());

  CHECK(root.split("a").next_u64() != root.split("b").next_u64());
  CHECK(root.split(uint64_t{0}).next_u64() != root.split(uint64_t{1}).next_u64());
}

TEST_CASE("uniform draws stay in range") {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    double v = rng.uniform(-2.0, 3.0);
    CHECK(v >= -2.0);
    CHECK(v <= 3.0);
    int64_t k = rng.uniform_int(-4, 4);
    CHECK(k >= -4);
    CHECK(k <= 4);
  }
  bool saw_lo = false, saw_hi = false;
  Rng r2(6);
  for (int i = 0; i < 500; ++i) {
    int64_t k = r2.uniform_int(0, 3);
    saw_lo = saw_lo || k == 0;
    saw_hi = saw_hi || k == 3;
  }
  CHECK(saw_lo);
  CHECK(saw_hi);
}

TEST_CASE("small_rational respects the bounds") {
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    ff::Rational q = rng.small_rational(3, 4);
    double v = q.to_double();
    CHECK(v >= -3.0);
    CHECK(v <= 3.0);
  }
}

TEST_CASE("random polynomials are bounded and deterministic") {
  Rng a(11), b(11);
  for (int i = 0; i < 20; ++i) {
    ff::Polynomial p = ff::random_polynomial(a, 3, 2, 2);
    ff::Polynomial q = ff::random_polynomial(b, 3, 2, 2);
    CHECK(p == q);
    CHECK(p.total_degree() <= 2);
    for (const auto& [e, c] : p.terms()) {
      CHECK_FALSE(c.is_zero());
      CHECK(std::abs(c.to_double()) <= 2.0);
    }
  }
}

TEST_CASE("random points land in the chart") {
  Rng rng(13);
  ff::Chart fold = ff::fold_chart();
  for (int i = 0; i < 200; ++i) {
    std::vector<double> x = ff::random_point(rng, fold);
    CHECK(x[0] >= 0.0);
    CHECK(x[0] < fold.axis(0).period);
    for (int m = 1; m < 4; ++m) {
      CHECK(x[m] >= fold.axis(m).lo_d());
      CHECK(x[m] <= fold.axis(m).hi_d());
    }
  }
  for (int i = 0; i < 50; ++i) {
    std::vector<ff::Rational> xq = ff::random_rational_point(rng, fold, 10);
    for (int m = 1; m < 4; ++m) {
      CHECK(xq[m] >= fold.axis(m).lo);
      CHECK(xq[m] <= fold.axis(m).hi);
      CHECK((xq[m] * ff::Rational(10)).denominator_str() == "1");
    }
  }
}
