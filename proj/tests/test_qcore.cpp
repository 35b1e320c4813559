#include <doctest.h>

#include <cmath>

#include "qks/qcore.hpp"
#include "qks/rational.hpp"

using namespace qks;
using doctest::Approx;

TEST_SUITE("qcore") {
  TEST_CASE("q-bracket values") {
    CHECK(q_bracket(0, QContext(0.5)) == 0.0);
    CHECK(q_bracket(3, QContext(0.5)) == Approx(1.75).epsilon(1e-15));
    CHECK(q_bracket(5, QContext(1.0)) == 5.0);
    CHECK(q_bracket(7, QContext(0.0)) == 1.0);
  }

  TEST_CASE("q-factorial values") {
    CHECK(q_factorial(0, QContext(-0.3)) == 1.0);
    CHECK(q_factorial(3, QContext(0.5)) == Approx(2.625).epsilon(1e-15));
    CHECK(q_factorial(4, QContext(1.0)) == 24.0);
  }

  TEST_CASE("Gaussian binomial values") {
    CHECK(q_binomial(2, 5, QContext(0.5)) == 0.0);
    CHECK(q_binomial(4, 2, QContext(0.5)) == Approx(2.1875).epsilon(1e-15));
    CHECK(q_binomial(5, 2, QContext(1.0)) == 10.0);
    CHECK(q_binomial(6, 3, QContext(0.0)) == 1.0);
  }

  TEST_CASE("Gaussian binomial is exact over the rationals") {
    const Rational q = make_rational(1, 2);
    CHECK(q_binomial(4, 2, q) == make_rational(35, 16));
    // Pascal rule [n k] = [n-1 k-1] + q^k [n-1 k]
    for (int n = 1; n <= 9; ++n) {
      for (int k = 1; k < n; ++k) {
        CHECK(q_binomial(n, k, q) ==
              q_binomial(n - 1, k - 1, q) + ipow(q, k) * q_binomial(n - 1, k, q));
      }
    }
  }

  TEST_CASE("finite Pochhammer") {
    CHECK(q_pochhammer(0.7, 0, QContext(0.5)) == 1.0);
    CHECK(q_pochhammer(0.3, 4, QContext(1.0)) == Approx(0.2401).epsilon(1e-14));
    CHECK(q_pochhammer(0.3, 4, QContext(0.0)) == Approx(0.7).epsilon(1e-15));
  }

  TEST_CASE("infinite Pochhammer against a long direct product") {
    const QContext c(0.5);
    CHECK(q_pochhammer_inf(0.0, c).value == 1.0);
    double direct = 1.0;
    for (int k = 0; k < 200; ++k) direct *= 1.0 - 0.5 * std::pow(0.5, k);
    const auto r = q_pochhammer_inf(0.5, c);
    CHECK(std::abs(r.value - direct) <= 1e-14);
    CHECK(std::abs(r.value - direct) <= r.tail_estimate + 1e-16);
    for (double q : {-0.9, -0.4, 0.3, 0.9}) {
      const QContext cq(q);
      double d = 1.0;
      for (int k = 0; k < 2000; ++k) d *= 1.0 - 0.7 * std::pow(q, k);
      CHECK(q_pochhammer_inf(0.7, cq).value == Approx(d).epsilon(1e-13));
    }
  }

  TEST_CASE("log Pochhammer matches the product") {
    const QContext c(0.8);
    const auto lp = log_q_pochhammer_inf(-0.6, c);
    CHECK(lp.sign == 1);
    CHECK(std::exp(lp.log_abs) ==
          Approx(q_pochhammer_inf(-0.6, c).value).epsilon(1e-13));
    // factors 1 - 1.5*0.8^k: -0.5, -0.2, then positive
    CHECK(log_q_pochhammer_inf(1.5, c).sign == 1);
    // 1 - 1.1 = -0.1, then positive
    CHECK(log_q_pochhammer_inf(1.1, c).sign == -1);
  }

  TEST_CASE("support interval") {
    const auto s0 = support(QContext(0.0));
    CHECK(s0.lo == -2.0);
    CHECK(s0.hi == 2.0);
    CHECK(support(QContext(0.75)).hi == Approx(4.0));
    CHECK(support(QContext(1.0)).unbounded);
    CHECK(std::isinf(support_half_width(QContext(1.0))));
  }

  TEST_CASE("context validation and regime errors") {
    CHECK_THROWS_AS(QContext(1.5), DomainError);
    CHECK_THROWS_AS(QContext(-1.0), DomainError);
    CHECK_THROWS_AS(QContext(0.5).with_max_terms(0), DomainError);
    CHECK_THROWS_AS(QContext(0.5).with_series_tol(0.0), DomainError);
    CHECK_THROWS_AS(q_pochhammer_inf(0.5, QContext(1.0)), RegimeError);
    CHECK_THROWS_AS(q_pochhammer_inf(0.5, QContext(0.97)), NonConvergent);
    CHECK(QContext(1.0).regime() == Regime::One);
    CHECK(QContext(0.99).regime() == Regime::SubUnit);
  }
}

TEST_CASE("partial products report a tail instead of raising" * doctest::test_suite("qcore")) {
  const QContext c = QContext(0.8).with_max_terms(6);
  CHECK_THROWS_AS(q_pochhammer_inf(0.5, c), NonConvergent);
  const auto r6 = q_pochhammer_inf(0.5, c.with_allow_partial(true));
  const auto full = q_pochhammer_inf(0.5, QContext(0.8));
  CHECK(r6.terms_used == 6);
  CHECK(std::isfinite(r6.tail_estimate));
  CHECK(std::abs(r6.value - full.value) <= r6.tail_estimate);
}
