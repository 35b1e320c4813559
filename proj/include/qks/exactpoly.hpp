#pragma once

// Sparse polynomials in x1, x2, x3 with exact rational coefficients.

#include <array>
#include <map>
#include <optional>
#include <string>

#include "qks/rational.hpp"

namespace qks {

using Exponents = std::array<unsigned, 3>;

/// Graded lexicographic order: higher total degree first, then lex on (e1, e2, e3).
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const noexcept;
};

class RationalMvPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexGreater>;

  RationalMvPoly() = default;
  RationalMvPoly(const Rational& constant);  // NOLINT: ring embedding
  RationalMvPoly(long constant);             // NOLINT: ring embedding

  /// The polynomial x_{index+1}; index in {0, 1, 2}.
  static RationalMvPoly variable(int index);
  static RationalMvPoly monomial(const Exponents& e, const Rational& c);

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  unsigned total_degree() const noexcept;
  /// Coefficient of x^e (zero when absent).
  Rational coefficient(const Exponents& e) const;
  std::string to_string() const;

  RationalMvPoly& operator+=(const RationalMvPoly& other);
  RationalMvPoly& operator-=(const RationalMvPoly& other);
  RationalMvPoly& operator*=(const RationalMvPoly& other);
  RationalMvPoly& operator*=(const Rational& c);

  friend bool operator==(const RationalMvPoly& a, const RationalMvPoly& b) {
    return a.terms_ == b.terms_;
  }

 private:
  void accumulate(const Exponents& e, const Rational& c);

  TermMap terms_;
};

RationalMvPoly operator+(RationalMvPoly a, const RationalMvPoly& b);
RationalMvPoly operator-(RationalMvPoly a, const RationalMvPoly& b);
RationalMvPoly operator-(const RationalMvPoly& a);
RationalMvPoly operator*(const RationalMvPoly& a, const RationalMvPoly& b);
RationalMvPoly operator*(RationalMvPoly a, const Rational& c);
RationalMvPoly operator*(const Rational& c, RationalMvPoly a);

RationalMvPoly poly_add(const RationalMvPoly& a, const RationalMvPoly& b);
RationalMvPoly poly_mul(const RationalMvPoly& a, const RationalMvPoly& b);
RationalMvPoly poly_scale(const RationalMvPoly& a, const Rational& c);
Rational poly_eval(const RationalMvPoly& a, const std::array<Rational, 3>& point);

/// Outcome of an exact comparison; on mismatch, the leading (graded-lex)
/// monomial where the coefficients differ.
struct PolyComparison {
  bool equal = true;
  std::optional<Exponents> witness;
  Rational lhs_coefficient;
  Rational rhs_coefficient;
};
PolyComparison poly_equal(const RationalMvPoly& a, const RationalMvPoly& b);

std::string monomial_to_string(const Exponents& e);

}  // namespace qks
