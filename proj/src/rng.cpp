#include "ff/rng.hpp"

#include <cmath>
#include <functional>

namespace ff {

namespace {

void enumerate_exponents(int dimension, int budget, Exponents& cur, int pos,
                         const std::function<void(const Exponents&)>& emit) {
  if (pos == dimension) {
    emit(cur);
    return;
  }
  for (int e = 0; e <= budget; ++e) {
    cur[pos] = static_cast<uint32_t>(e);
    enumerate_exponents(dimension, budget - e, cur, pos + 1, emit);
  }
  cur[pos] = 0;
}

}  // namespace

Polynomial random_polynomial(Rng& rng, int dimension, int max_degree, long coeff_range) {
  Polynomial p(dimension);
  Exponents cur(dimension, 0);
  enumerate_exponents(dimension, max_degree, cur, 0, [&](const Exponents& e) {
    long c = rng.uniform_int(-coeff_range, coeff_range);
    if (c != 0) p.add_term(e, Rational(c));
  });
  return p;
}

std::vector<double> random_point(Rng& rng, const Chart& chart) {
  std::vector<double> x(chart.dimension());
  for (int i = 0; i < chart.dimension(); ++i) {
    const Axis& a = chart.axis(i);
    x[i] = rng.uniform(a.lo_d(), a.hi_d());
  }
  return x;
}

std::vector<Rational> random_rational_point(Rng& rng, const Chart& chart, long den) {
  std::vector<Rational> x(chart.dimension(), Rational(0));
  for (int i = 0; i < chart.dimension(); ++i) {
    const Axis& a = chart.axis(i);
    if (a.periodic) {
      long hi = static_cast<long>(std::floor(a.period)) * den;
      x[i] = Rational(rng.uniform_int(0, hi), den);
    } else {
      mpq_class lo_scaled = a.lo.raw() * den;
      mpq_class hi_scaled = a.hi.raw() * den;
      mpz_class lo_num, hi_num;
      mpz_cdiv_q(lo_num.get_mpz_t(), lo_scaled.get_num().get_mpz_t(),
                 lo_scaled.get_den().get_mpz_t());
      mpz_fdiv_q(hi_num.get_mpz_t(), hi_scaled.get_num().get_mpz_t(),
                 hi_scaled.get_den().get_mpz_t());
      x[i] = Rational(rng.uniform_int(lo_num.get_si(), hi_num.get_si()), den);
    }
  }
  return x;
}

}  // namespace ff
