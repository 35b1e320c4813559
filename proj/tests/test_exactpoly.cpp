#include <doctest.h>

#include "qks/exactpoly.hpp"
#include "qks/polyfam.hpp"
#include "qks/rational.hpp"

using namespace qks;

TEST_SUITE("exactpoly") {
  TEST_CASE("ring arithmetic") {
    const RationalMvPoly x = RationalMvPoly::variable(0);
    const RationalMvPoly p = poly_mul(x + RationalMvPoly(1L), x - RationalMvPoly(1L));
    CHECK(poly_equal(p, x * x - RationalMvPoly(1L)).equal);
    CHECK(poly_eval(p, {make_rational(3, 2), Rational(0), Rational(0)}) ==
          make_rational(5, 4));
    CHECK(poly_add(p, -p).is_zero());
    CHECK(poly_scale(x, Rational(0)).is_zero());
  }

  TEST_CASE("H_2 from the recurrence is x^2 - 1 at every q") {
    const RationalMvPoly x = RationalMvPoly::variable(0);
    for (const Rational& q :
         {make_rational(1, 2), make_rational(-1, 3), make_rational(9, 10)}) {
      const auto h = rec::hermite_table(2, x, q);
      CHECK(poly_equal(h[2], x * x - RationalMvPoly(1L)).equal);
    }
  }

  TEST_CASE("inequality reports the first differing monomial") {
    const RationalMvPoly x = RationalMvPoly::variable(0);
    const RationalMvPoly y = RationalMvPoly::variable(1);
    const auto cmp = poly_equal(x * x + y, x * x + make_rational(2, 1) * y);
    REQUIRE_FALSE(cmp.equal);
    REQUIRE(cmp.witness.has_value());
    CHECK(monomial_to_string(*cmp.witness) == "x2");
    CHECK(cmp.lhs_coefficient == Rational(1));
    CHECK(cmp.rhs_coefficient == Rational(2));
  }

  TEST_CASE("canonical printing is graded lexicographic") {
    const RationalMvPoly x = RationalMvPoly::variable(0);
    const RationalMvPoly y = RationalMvPoly::variable(1);
    const RationalMvPoly p = y + x * x + make_rational(1, 2) * x * y + RationalMvPoly(3L);
    const std::string s = p.to_string();
    CHECK(s.find("x1^2") < s.find("x2"));
    CHECK(p.total_degree() == 2);
  }

  TEST_CASE("family coefficients") {
    const RationalMvPoly x = RationalMvPoly::variable(0);
    const RationalMvPoly y = RationalMvPoly::variable(1);
    ExactFamilyParams p;
    p.q = make_rational(1, 2);
    CHECK(poly_equal(family_coeffs(FamilyTag::HermiteQ, 2, p),
                     x * x - RationalMvPoly(1L)).equal);
    p.rho = make_rational(2, 5);
    p.y = make_rational(1, 2);
    CHECK(poly_equal(family_coeffs(FamilyTag::ASC, 1, p),
                     x - RationalMvPoly(make_rational(1, 5))).equal);
    p.y.reset();
    CHECK(poly_equal(family_coeffs(FamilyTag::ASC, 1, p),
                     x - make_rational(2, 5) * y).equal);
    p.q = Rational(1);
    CHECK(poly_equal(family_coeffs(FamilyTag::BPoly, 2, p),
                     x * x + RationalMvPoly(1L)).equal);
  }
}
