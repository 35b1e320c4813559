#include <doctest.h>

#include <cmath>
#include <limits>

#include "qks/series.hpp"

using namespace qks;
using doctest::Approx;

TEST_SUITE("series") {
  TEST_CASE("geometric series with exact majorants") {
    const QContext c(0.5);
    auto term = [](int n) {
      const double v = std::pow(0.5, n);
      return SeriesTerm{v, v};
    };
    const auto r = sum_series(term, c, "geometric");
    CHECK(r.value == Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(r.value - 2.0) <= r.tail_estimate);
    CHECK(r.tail_estimate <= 1e-12 * 2.0 + 1e-13);
  }

  TEST_CASE("terminating series has zero extrapolated tail") {
    const QContext c(0.5);
    auto term = [](int n) {
      return n < 3 ? SeriesTerm{1.0 + n, 1.0 + n} : SeriesTerm{0.0, 0.0};
    };
    const auto r = sum_series(term, c, "finite");
    CHECK(r.value == 6.0);
    CHECK(r.tail_estimate < 1e-13);
  }

  TEST_CASE("limits: raise or return a partial sum") {
    auto term = [](int n) {
      const double v = std::pow(0.9, n);
      return SeriesTerm{v, v};
    };
    const QContext small = QContext(0.5).with_max_terms(10);
    CHECK_THROWS_AS(sum_series(term, small, "slow"), NonConvergent);
    const auto r = sum_series(term, small.with_allow_partial(true), "slow");
    CHECK(r.terms_used == 10);
    // the remaining geometric tail is 9 * 0.9^10
    CHECK(r.tail_estimate >= 9.0 * std::pow(0.9, 10) * (1 - 1e-12));
    CHECK(std::abs(10.0 - r.value) <= r.tail_estimate);
  }

  TEST_CASE("non-decaying majorants give an infinite tail") {
    auto term = [](int) { return SeriesTerm{1.0, 1.0}; };
    const auto r = sum_series(term, QContext(0.5).with_max_terms(5).with_allow_partial(true),
                              "divergent");
    CHECK(std::isinf(r.tail_estimate));
  }

  TEST_CASE("non-finite terms are rejected") {
    auto term = [](int n) {
      return n == 2 ? SeriesTerm{std::numeric_limits<double>::quiet_NaN(), 1.0}
                    : SeriesTerm{1e-3, 1e-3};
    };
    CHECK_THROWS_AS(sum_series(term, QContext(0.5), "nan"), NonConvergent);
  }

  TEST_CASE("Hermite majorant bounds normalised q-Hermite values") {
    for (double q : {-0.7, 0.0, 0.5, 0.9}) {
      const QContext c(q);
      const double a = support_half_width(c);
      for (double x : {-a, -0.3 * a, 0.8 * a}) {
        HermiteMajorant m(x, c);
        NormalizedHermite h(x, q);
        for (int n = 0; n <= 80; ++n) {
          CHECK(std::abs(h(n)) <= m(n) * (1 + 1e-10));
        }
      }
    }
  }

  TEST_CASE("Cramer bound at q = 1") {
    const QContext one(1.0);
    for (double x : {0.0, 1.5, -3.0}) {
      HermiteMajorant m(x, one);
      NormalizedHermite h(x, 1.0);
      for (int n = 0; n <= 60; ++n) {
        CHECK(std::abs(h(n)) <= m(n) * (1 + 1e-10));
      }
    }
  }

  TEST_CASE("ASC majorant bounds normalised ASC values") {
    for (double q : {-0.5, 0.3, 0.8, 1.0}) {
      const QContext c(q);
      const double a = q < 1 ? support_half_width(c) : 3.0;
      for (double rho : {-0.8, 0.4}) {
        for (double x : {-0.9 * a, 0.2 * a}) {
          const double y = 0.5 * a;
          AscMajorant m(x, y, rho, c);
          NormalizedAsc p(x, y, rho, q);
          for (int n = 0; n <= 50; ++n) {
            CHECK(std::abs(p(n)) <= m(n) * (1 + 1e-9));
          }
        }
      }
    }
  }
}
