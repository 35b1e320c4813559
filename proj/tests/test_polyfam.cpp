#include <doctest.h>

#include <cmath>

#include "qks/polyfam.hpp"

using namespace qks;
using doctest::Approx;

TEST_SUITE("polyfam") {
  TEST_CASE("q-Hermite values") {
    for (double q : {-0.5, 0.0, 0.5, 1.0}) {
      CHECK(hermite_q(1, 0.7, QContext(q)) == Approx(0.7));
    }
    CHECK(hermite_q(2, 2.0, QContext(0.5)) == Approx(3.0).epsilon(1e-15));
    CHECK(hermite_q(3, 1.0, QContext(0.5)) == Approx(-1.5).epsilon(1e-15));
    CHECK(hermite_q(4, 1.2, QContext(0.0)) ==
          Approx(chebyshev_u(4, 0.6)).epsilon(1e-14));
    // q = 1: probabilists' Hermite, He_4 = x^4 - 6x^2 + 3
    CHECK(hermite_q(4, 1.5, QContext(1.0)) ==
          Approx(std::pow(1.5, 4) - 6 * 2.25 + 3).epsilon(1e-14));
  }

  TEST_CASE("Al-Salam-Chihara values") {
    const QContext c(0.5);
    CHECK(asc_p(1, 1.0, {0.5, 0.4}, c) == Approx(0.8).epsilon(1e-15));
    for (int n = 0; n <= 6; ++n) {
      CHECK(asc_p(n, 0.3, {1.1, 0.0}, c) ==
            Approx(hermite_q(n, 0.3, c)).epsilon(1e-14));
    }
    const double x = 0.9, y = -0.6, rho = 0.35;
    const double u3 = chebyshev_u(3, x / 2), u2 = chebyshev_u(2, x / 2),
                 u1 = chebyshev_u(1, x / 2);
    CHECK(asc_p(3, x, {y, rho}, QContext(0.0)) ==
          Approx(u3 - rho * y * u2 + rho * rho * u1).epsilon(1e-14));
    const QContext one(1.0);
    const double s = std::sqrt(1 - rho * rho);
    for (int n = 0; n <= 6; ++n) {
      CHECK(asc_p(n, x, {y, rho}, one) ==
            Approx(hermite_q(n, (x - rho * y) / s, one) * std::pow(s, n))
                .epsilon(1e-13));
    }
  }

  TEST_CASE("ASC parameters are validated") {
    CHECK_THROWS_AS(asc_p(2, 0.0, {0.0, 1.0}, QContext(0.5)), DomainError);
    CHECK_THROWS_AS(asc_p(2, 0.0, {5.0, 0.3}, QContext(0.5)), DomainError);
  }

  TEST_CASE("Chebyshev U values") {
    CHECK(chebyshev_u(0, 0.3) == 1.0);
    CHECK(chebyshev_u(1, 0.3) == Approx(0.6));
    CHECK(chebyshev_u(2, 0.5) == Approx(0.0));
  }

  TEST_CASE("B polynomials") {
    CHECK(b_poly(1, 0.8, QContext(0.5)) == Approx(-0.8));
    CHECK(b_poly(3, 0.8, QContext(0.0)) == Approx(0.0));
    CHECK(b_poly(2, 0.8, QContext(1.0)) == Approx(0.64 + 1.0));
  }

  TEST_CASE("Rogers-Szego values") {
    CHECK(rogers_szego(0, 0.3, QContext(0.5)) == 1.0);
    CHECK(rogers_szego(2, 1.0, QContext(0.5)) == Approx(3.5));
    for (int n = 0; n <= 10; ++n) {
      CHECK(rogers_szego(n, 1.0, QContext(1.0)) == Approx(std::pow(2.0, n)));
    }
  }

  TEST_CASE("continuous q-Hermite rescaling") {
    const QContext c(0.5);
    CHECK(cont_q_hermite(0, 0.4, c) == 1.0);
    CHECK(cont_q_hermite(1, 0.4, c) == Approx(0.8).epsilon(1e-15));
    // h_{n+1} = 2x h_n - (1 - q^n) h_{n-1}
    const double x = -0.35;
    for (int n = 1; n < 10; ++n) {
      CHECK(cont_q_hermite(n + 1, x, c) ==
            Approx(2 * x * cont_q_hermite(n, x, c) -
                   (1 - std::pow(0.5, n)) * cont_q_hermite(n - 1, x, c))
                .epsilon(1e-13));
    }
    CHECK_THROWS_AS(cont_q_hermite(2, 0.1, QContext(1.0)), RegimeError);
  }

  TEST_CASE("sup bound") {
    CHECK(hermite_sup_bound(0, QContext(0.5)) == 1.0);
    CHECK(hermite_sup_bound(2, QContext(0.5)) == Approx(7.0));
    CHECK_THROWS_AS(hermite_sup_bound(2, QContext(1.0)), RegimeError);
  }

  TEST_CASE("degree cap on single-value evaluators") {
    CHECK_NOTHROW(hermite_q(kMaxDegree, 0.1, QContext(0.5)));
    CHECK_THROWS_AS(hermite_q(kMaxDegree + 1, 0.1, QContext(0.5)), DegreeCap);
    CHECK_THROWS_AS(hermite_q(-1, 0.1, QContext(0.5)), DomainError);
  }

  TEST_CASE("family names round-trip") {
    for (FamilyTag t : {FamilyTag::HermiteQ, FamilyTag::ASC, FamilyTag::ChebyshevU,
                        FamilyTag::BPoly, FamilyTag::RogersSzego,
                        FamilyTag::ContinuousQHermite}) {
      CHECK(parse_family(family_name(t)) == t);
    }
    CHECK_FALSE(parse_family("laguerre").has_value());
  }

  TEST_CASE("normalised sequences match the direct recurrences") {
    const double q = 0.7, x = 1.3, y = -0.4, rho = 0.6;
    NormalizedHermite nh(x, q);
    NormalizedAsc na(x, y, rho, q);
    NormalizedB nb(y, q);
    LogQFactorial lf(q);
    const auto h = rec::hermite_table(30, x, q);
    const auto p = rec::asc_table(30, x, y, rho, q);
    const auto b = rec::b_table(30, y, q);
    for (int n = 0; n <= 30; ++n) {
      const double f = std::sqrt(q_factorial(n, q));
      CHECK(lf(n) == Approx(std::log(q_factorial(n, q))).epsilon(1e-13));
      CHECK(nh(n) == Approx(h[n] / f).epsilon(1e-11));
      CHECK(na(n) == Approx(p[n] / f).epsilon(1e-11));
      CHECK(nb(n) == Approx(b[n] / f).epsilon(1e-11));
    }
    // stays finite far beyond where the raw values overflow
    NormalizedHermite far(2.0, 0.9);
    CHECK(std::isfinite(far(2000)));
  }
}
