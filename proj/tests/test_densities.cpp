#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qks/densities.hpp"

using namespace qks;
using doctest::Approx;

TEST_SUITE("densities") {
  TEST_CASE("auxiliary factors") {
    const QContext c0(0.0), c5(0.5);
    CHECK(aux_r(0, 1.7 * 1.7, c0) == Approx(4 - 1.7 * 1.7));
    CHECK(aux_r(3, 2.5, c0) == 1.0);
    CHECK(aux_r(0, 0.0, c5) == 4.0);
    CHECK(aux_v(4, 0.3, -1.2, 0.0, c5) == 1.0);
    CHECK(aux_v(0, 0.0, 0.0, 0.5, c5) == Approx(0.5625));
    double prev = aux_v(0, 1.1, 0.4, 0.6, c5);
    for (int k = 1; k < 40; ++k) {
      const double v = aux_v(k, 1.1, 0.4, 0.6, c5);
      CHECK(std::abs(v - 1.0) <= std::abs(prev - 1.0));
      prev = v;
    }
  }

  TEST_CASE("q-Normal values") {
    CHECK(density_fn(0.0, QContext(1.0)) ==
          Approx(1.0 / std::sqrt(2 * std::numbers::pi)).epsilon(1e-15));
    CHECK(density_fn(0.0, QContext(0.0)) ==
          Approx(1.0 / std::numbers::pi).epsilon(1e-15));
    CHECK(density_fn(5.0, QContext(0.0)) == 0.0);
    CHECK(density_fn(3.0, QContext(0.0)) == 0.0);
    // semicircle at q = 0
    for (double x : {-1.9, -0.5, 0.7, 1.5}) {
      CHECK(density_fn(x, QContext(0.0)) ==
            Approx(std::sqrt(4 - x * x) / (2 * std::numbers::pi)).epsilon(1e-14));
    }
  }

  TEST_CASE("conditional q-Normal values") {
    const QContext c(0.4);
    for (double x : {-2.0, 0.1, 1.3}) {
      CHECK(density_fcn(x, {0.8, 0.0}, c) ==
            Approx(density_fn(x, c)).epsilon(1e-14));
    }
    CHECK(density_fcn(0.0, {0.0, 0.5}, QContext(1.0)) ==
          Approx(1.0 / std::sqrt(2 * std::numbers::pi * 0.75)).epsilon(1e-15));
    CHECK_THROWS_AS(density_fcn(0.0, {0.0, 1.0}, c), DomainError);
    CHECK_THROWS_AS(density_fcn(0.0, {9.0, 0.3}, c), DomainError);
    CHECK(density_fcn(9.0, {0.0, 0.3}, c) == 0.0);
  }

  TEST_CASE("Askey-Wilson density reduces at rho13 = 0") {
    const QContext c(0.6);
    for (double x3 : {-1.5, 0.2, 2.1}) {
      CHECK(density_faw(x3, 0.7, 0.0, -0.3, 0.45, c) ==
            Approx(density_fcn(x3, {-0.3, 0.45}, c)).epsilon(1e-13));
    }
  }

  TEST_CASE("reports carry term counts") {
    const auto r = density_fn_report(0.4, QContext(0.8));
    CHECK(r.terms_used > 1);
    CHECK(r.tail_estimate >= 0.0);
    CHECK(r.tail_estimate < 1e-12);
    CHECK(density_fn_report(0.4, QContext(1.0)).terms_used == 0);
  }

  TEST_CASE("Gauss-Legendre rule") {
    const auto g = gauss_legendre(20);
    double s0 = 0, s2 = 0, s38 = 0;
    for (int i = 0; i < 20; ++i) {
      s0 += g.weights[i];
      s2 += g.weights[i] * g.nodes[i] * g.nodes[i];
      s38 += g.weights[i] * std::pow(g.nodes[i], 38);
    }
    CHECK(s0 == Approx(2.0).epsilon(1e-14));
    CHECK(s2 == Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(s38 == Approx(2.0 / 39.0).epsilon(1e-12));
    CHECK_THROWS_AS(gauss_legendre(0), DomainError);
  }

  TEST_CASE("densities integrate to one") {
    const QuadratureRule rule(256);
    for (double q : {-0.6, 0.0, 0.3, 0.9}) {
      const QContext c(q);
      CHECK(integrate([&](double x) { return density_fn(x, c); }, rule, c) ==
            Approx(1.0).epsilon(1e-10));
      CHECK(integrate([&](double x) { return density_fcn(x, {0.5, -0.6}, c); },
                      rule, c) == Approx(1.0).epsilon(1e-10));
    }
    const QContext one(1.0);
    CHECK(integrate([&](double x) { return density_fn(x, one); }, rule, one) ==
          Approx(1.0).epsilon(1e-12));
    CHECK(integrate([&](double x) { return x * x * density_fn(x, one); }, rule,
                    one) == Approx(1.0).epsilon(1e-12));
  }
}
