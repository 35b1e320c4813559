#include "qks/exactpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace qks {

namespace {
unsigned degree_of(const Exponents& e) { return e[0] + e[1] + e[2]; }
}  // namespace

bool GradedLexGreater::operator()(const Exponents& a,
                                  const Exponents& b) const noexcept {
  const unsigned da = degree_of(a);
  const unsigned db = degree_of(b);
  if (da != db) return da > db;
  return a > b;
}

RationalMvPoly::RationalMvPoly(const Rational& constant) {
  if (constant != 0) terms_.emplace(Exponents{0, 0, 0}, constant);
}

RationalMvPoly::RationalMvPoly(long constant)
    : RationalMvPoly(Rational(constant)) {}

RationalMvPoly RationalMvPoly::variable(int index) {
  if (index < 0 || index > 2) {
    throw std::out_of_range("variable index must be 0, 1 or 2");
  }
  Exponents e{0, 0, 0};
  e[index] = 1;
  return monomial(e, Rational(1));
}

RationalMvPoly RationalMvPoly::monomial(const Exponents& e, const Rational& c) {
  RationalMvPoly p;
  if (c != 0) p.terms_.emplace(e, c);
  return p;
}

unsigned RationalMvPoly::total_degree() const noexcept {
  return terms_.empty() ? 0 : degree_of(terms_.begin()->first);
}

Rational RationalMvPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void RationalMvPoly::accumulate(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

RationalMvPoly& RationalMvPoly::operator+=(const RationalMvPoly& other) {
  for (const auto& [e, c] : other.terms_) accumulate(e, c);
  return *this;
}

RationalMvPoly& RationalMvPoly::operator-=(const RationalMvPoly& other) {
  for (const auto& [e, c] : other.terms_) accumulate(e, Rational(-c));
  return *this;
}

RationalMvPoly& RationalMvPoly::operator*=(const RationalMvPoly& other) {
  RationalMvPoly product;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      const Exponents e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      product.accumulate(e, Rational(ca * cb));
    }
  }
  terms_ = std::move(product.terms_);
  return *this;
}

RationalMvPoly& RationalMvPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

std::string monomial_to_string(const Exponents& e) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < 3; ++i) {
    if (e[i] == 0) continue;
    if (!first) os << '*';
    os << 'x' << (i + 1);
    if (e[i] > 1) os << '^' << e[i];
    first = false;
  }
  if (first) os << '1';
  return os.str();
}

std::string RationalMvPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool constant = degree_of(e) == 0;
    Rational magnitude = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (constant) {
      os << magnitude.get_str();
    } else {
      if (magnitude != 1) os << magnitude.get_str() << '*';
      os << monomial_to_string(e);
    }
    first = false;
  }
  return os.str();
}

RationalMvPoly operator+(RationalMvPoly a, const RationalMvPoly& b) {
  a += b;
  return a;
}

RationalMvPoly operator-(RationalMvPoly a, const RationalMvPoly& b) {
  a -= b;
  return a;
}

RationalMvPoly operator-(const RationalMvPoly& a) {
  return poly_scale(a, Rational(-1));
}

RationalMvPoly operator*(const RationalMvPoly& a, const RationalMvPoly& b) {
  RationalMvPoly out(a);
  out *= b;
  return out;
}

RationalMvPoly operator*(RationalMvPoly a, const Rational& c) {
  a *= c;
  return a;
}

RationalMvPoly operator*(const Rational& c, RationalMvPoly a) {
  a *= c;
  return a;
}

RationalMvPoly poly_add(const RationalMvPoly& a, const RationalMvPoly& b) {
  return a + b;
}

RationalMvPoly poly_mul(const RationalMvPoly& a, const RationalMvPoly& b) {
  return a * b;
}

RationalMvPoly poly_scale(const RationalMvPoly& a, const Rational& c) {
  return a * c;
}

Rational poly_eval(const RationalMvPoly& a,
                   const std::array<Rational, 3>& point) {
  Rational sum(0);
  for (const auto& [e, c] : a.terms()) {
    Rational term(c);
    for (int i = 0; i < 3; ++i) {
      for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
    }
    sum += term;
  }
  return sum;
}

PolyComparison poly_equal(const RationalMvPoly& a, const RationalMvPoly& b) {
  PolyComparison out;
  const RationalMvPoly diff = a - b;
  if (diff.is_zero()) return out;
  const Exponents lead = diff.terms().begin()->first;
  out.equal = false;
  out.witness = lead;
  out.lhs_coefficient = a.coefficient(lead);
  out.rhs_coefficient = b.coefficient(lead);
  return out;
}

}  // namespace qks
