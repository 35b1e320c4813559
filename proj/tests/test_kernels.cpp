#include <doctest.h>

#include <cmath>
#include <string>

#include "qks/kernels.hpp"

using namespace qks;
using doctest::Approx;

TEST_SUITE("kernels") {
  TEST_CASE("correlation determinant") {
    CHECK(delta_of(0, 0, 0) == 1.0);
    CHECK(delta_of(0.3, std::sqrt(0.6), std::sqrt(0.6)) == Approx(0.07).epsilon(1e-13));
    CHECK(delta_of(1, 0, 0) == 0.0);
    CHECK(delta_of_wyzn(0.3, 0.5, -0.2) == Approx(delta_of(0.3, 0.5, -0.2)));
    CHECK(delta_of_det(0.3, 0.5, -0.2) == Approx(delta_of(0.3, 0.5, -0.2)));
    CHECK(CorrelationTriple{0.2, 0.5, 0.4}.feasible());
    CHECK_FALSE(CorrelationTriple{0.9, 0.9, -0.9}.feasible());
  }

  TEST_CASE("infeasible triple names delta") {
    try {
      require_feasible({0.9, 0.9, -0.9});
      FAIL("expected InfeasibleCorrelation");
    } catch (const InfeasibleCorrelation& e) {
      CHECK(e.delta() == Approx(1 + 2 * 0.9 * 0.9 * -0.9 - 3 * 0.81));
      CHECK(std::string(e.what()).find("delta") != std::string::npos);
    }
    CHECK_THROWS_AS(require_feasible({1.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(f3d(0, 0, 0, {0.9, 0.9, -0.9}, QContext(0.5)),
                    InfeasibleCorrelation);
  }

  TEST_CASE("gamma_mk") {
    const QContext c(0.5);
    CHECK(gamma_mk(0, 0, 0.3, -1.1, 0.0, c).value == Approx(1.0));
    // independent long sum
    const auto h = rec::hermite_table(301, 0.0, 0.5);
    double brute = 0.0, fact = 1.0;
    for (int i = 0; i < 300; ++i) {
      if (i > 0) fact *= q_bracket(i, 0.5);
      brute += std::pow(0.5, i) / fact * h[i + 1] * h[i];
    }
    CHECK(std::abs(gamma_mk(1, 0, 0.0, 0.0, 0.5, c).value - brute) <= 1e-10);
    const double ratio = density_fcn(0.0, {0.0, 0.5}, c) / density_fn(0.0, c);
    CHECK(std::abs(gamma_mk(0, 0, 0.0, 0.0, 0.5, c).value - ratio) <= 1e-8);
  }

  TEST_CASE("closed forms") {
    const QContext c(0.5);
    CHECK(q_mk_closed(0, 0, 0.4, -0.7, 0.3, c) == 1.0);
    const double x = 0.6, y = -1.1, r1 = 0.3, r2 = -0.45, r3 = 0.5;
    for (int n = 0; n <= 6; ++n) {
      for (CnForm f : {CnForm::Connection, CnForm::Hermite}) {
        CHECK(c_n(n, x, y, r2 * r3, r2, r3, c, f) ==
              Approx(std::pow(r2, n) * hermite_q(n, x, c)).epsilon(1e-12));
        CHECK(c_n(n, x, y, r1, r1 * r3, r3, c, f) ==
              Approx(std::pow(r1, n) * hermite_q(n, y, c)).epsilon(1e-12));
        CHECK(c_n(n, x, y, 0.0, r2, r3, c, f) ==
              Approx(std::pow(r2, n) * asc_p(n, x, {y, r3}, c) /
                     q_pochhammer(r3 * r3, n, c))
                  .epsilon(1e-12));
        double sum = 0.0;
        for (int s = 0; s <= n; ++s) {
          sum += q_binomial(n, s, c) * std::pow(r1, n - s) * std::pow(r2, s) *
                 hermite_q(n - s, y, c) * hermite_q(s, x, c);
        }
        CHECK(c_n(n, x, y, r1, r2, 0.0, c, f) == Approx(sum).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("Poisson-Mehler") {
    CHECK(poisson_mehler(0.4, 1.2, 0.0, QContext(0.5)).value == 1.0);
    CHECK(poisson_mehler(0.0, 0.0, 0.5, QContext(1.0)).value ==
          Approx(1.0 / std::sqrt(0.75)).epsilon(1e-10));
    CHECK(mehler_closed_form(0.0, 0.0, 0.5) == Approx(1.1547005383792515));
  }

  TEST_CASE("f3d special parameters") {
    const QContext c(0.5);
    for (double x1 : {-1.5, 0.4}) {
      for (double x3 : {-0.2, 2.1}) {
        const double x2 = 0.9;
        const double indep = density_fcn(x1, {x2, 0.3}, c) *
                             density_fn(x2, c) * density_fn(x3, c);
        const double markov = density_fcn(x1, {x3, 0.5}, c) *
                              density_fcn(x3, {x2, 0.4}, c) * density_fn(x2, c);
        for (F3dForm f : {F3dForm::Direct, F3dForm::HC, F3dForm::ASC}) {
          CHECK(f3d(x1, x2, x3, {0.3, 0.0, 0.0}, c, f).value ==
                Approx(indep).epsilon(1e-10));
          CHECK(f3d(x1, x2, x3, {0.2, 0.5, 0.4}, c, f).value ==
                Approx(markov).epsilon(1e-10));
        }
      }
    }
    CHECK(f3d(9.0, 0.0, 0.0, {0.2, 0.5, 0.4}, c).value == 0.0);
  }

  TEST_CASE("f3d forms agree within tails") {
    const QContext c(0.5);
    const CorrelationTriple corr{0.35, 0.5, 0.4};
    const auto d = f3d(0.3, -0.7, 1.2, corr, c, F3dForm::Direct);
    const auto h = f3d(0.3, -0.7, 1.2, corr, c, F3dForm::HC);
    const auto a = f3d(0.3, -0.7, 1.2, corr, c, F3dForm::ASC);
    CHECK(std::abs(d.value - a.value) <= d.tail_estimate + a.tail_estimate);
    CHECK(std::abs(h.value - a.value) <= h.tail_estimate + a.tail_estimate);
  }

  TEST_CASE("q = 1 gives the trivariate Gaussian") {
    const QContext one(1.0);
    const CorrelationTriple corr{0.35, 0.5, 0.4};
    const double g = gaussian3d_density(0.3, -0.7, 1.2, corr);
    CHECK(f3d(0.3, -0.7, 1.2, corr, one).value == Approx(g).epsilon(1e-14));
    CHECK(std::abs(f3d_asc_series(0.3, -0.7, 1.2, corr, one).value - g) <= 1e-6);
    // independent value: N(0, I) at the origin
    CHECK(gaussian3d_density(0, 0, 0, {0, 0, 0}) ==
          Approx(std::pow(2 * M_PI, -1.5)).epsilon(1e-15));
  }

  TEST_CASE("Askey-Wilson expansion") {
    const QContext c(0.5);
    CHECK(aw_expansion(0.7, -0.2, 0.0, 1.1, 0.4, c).value ==
          Approx(density_fcn(0.7, {1.1, 0.4}, c)).epsilon(1e-14));
    CHECK(std::abs(aw_expansion(0.7, -0.2, 0.5, 1.1, 0.4, c).value -
                   density_faw(0.7, -0.2, 0.5, 1.1, 0.4, c)) <= 1e-7);
    const auto partial = aw_expansion(0.7, -0.2, 0.5, 1.1, 0.4, c, 3);
    CHECK(partial.terms_used == 3);
  }

  TEST_CASE("two-sided kernels") {
    const QContext c(0.5);
    const auto k2 = qk_kernel(2, 0, 0, 0, 0.5, 0.4, c);
    CHECK(std::abs(k2.lhs.value - k2.rhs.value) <= 1e-7);
    const auto z = kernel_rho12_zero(0.3, -1.0, 0.8, 0.0, 0.5, c);
    CHECK(z.lhs.value == Approx(1.0));
    CHECK(z.rhs.value == Approx(1.0));
    const auto r = kernel_recentring(0.3, -1.0, 0.8, {0.35, 0.5, 0.4}, c);
    CHECK(std::abs(r.lhs.value - r.rhs.value) <= 1e-7);
    CHECK_THROWS_AS(qk_kernel(-1, 0, 0, 0, 0.5, 0.4, c), DomainError);
  }

  TEST_CASE("form names") {
    for (F3dForm f : {F3dForm::Direct, F3dForm::HC, F3dForm::ASC}) {
      CHECK(parse_f3d_form(f3d_form_name(f)) == f);
    }
    CHECK_FALSE(parse_f3d_form("kibble").has_value());
  }
}
