#include "qks/polyfam.hpp"

#include <cmath>
#include <string>

namespace qks {

namespace {

// Closed form of [k]_q for the long normalised sequences.
double bracket(int k, double q) {
  if (q == 1.0) return static_cast<double>(k);
  return (1.0 - ipow(q, k)) / (1.0 - q);
}

void check_degree(int n) {
  if (n < 0) throw DomainError("degree must be nonnegative");
  if (n > kMaxDegree) {
    throw DegreeCap("degree " + std::to_string(n) + " exceeds the cap of " +
                    std::to_string(kMaxDegree));
  }
}

}  // namespace

std::string family_name(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::HermiteQ: return "hermite-q";
    case FamilyTag::ASC: return "asc";
    case FamilyTag::ChebyshevU: return "chebyshev-u";
    case FamilyTag::BPoly: return "b-poly";
    case FamilyTag::RogersSzego: return "rogers-szego";
    case FamilyTag::ContinuousQHermite: return "cont-q-hermite";
  }
  return "unknown";
}

std::optional<FamilyTag> parse_family(const std::string& name) {
  for (FamilyTag tag :
       {FamilyTag::HermiteQ, FamilyTag::ASC, FamilyTag::ChebyshevU,
        FamilyTag::BPoly, FamilyTag::RogersSzego,
        FamilyTag::ContinuousQHermite}) {
    if (family_name(tag) == name) return tag;
  }
  return std::nullopt;
}

double hermite_q(int n, double x, const QContext& ctx) {
  check_degree(n);
  return rec::hermite_table(n, x, ctx.q()).back();
}

double asc_p(int n, double x, const AscParams& p, const QContext& ctx) {
  check_degree(n);
  if (!(std::abs(p.rho) < 1.0)) throw DomainError("ASC requires |rho| < 1");
  if (!support(ctx).contains(p.y)) {
    throw DomainError("ASC conditioning point y lies outside S(q)");
  }
  return rec::asc_table(n, x, p.y, p.rho, ctx.q()).back();
}

double chebyshev_u(int n, double x) {
  check_degree(n);
  return rec::chebyshev_u_table<double, double>(n, x).back();
}

double b_poly(int n, double y, const QContext& ctx) {
  check_degree(n);
  return rec::b_table(n, y, ctx.q()).back();
}

double rogers_szego(int n, double x, const QContext& ctx) {
  check_degree(n);
  return rec::rogers_szego(n, x, ctx.q());
}

double cont_q_hermite(int n, double x, const QContext& ctx) {
  check_degree(n);
  if (ctx.regime() == Regime::One) {
    throw RegimeError("continuous q-Hermite polynomials need |q| < 1");
  }
  if (n == 0) return 1.0;
  const double s = std::sqrt(1.0 - ctx.q());
  return std::pow(s, n) * hermite_q(n, 2.0 * x / s, ctx);
}

double hermite_sup_bound(int n, const QContext& ctx) {
  check_degree(n);
  if (ctx.regime() == Regime::One) {
    throw RegimeError("H_n(x|1) is unbounded on the real line");
  }
  return rogers_szego(n, 1.0, ctx) * std::pow(1.0 - ctx.q(), -0.5 * n);
}

RationalMvPoly family_coeffs(FamilyTag tag, int n,
                             const ExactFamilyParams& p) {
  check_degree(n);
  const RationalMvPoly x = RationalMvPoly::variable(0);
  switch (tag) {
    case FamilyTag::HermiteQ:
      return rec::hermite_table(n, x, p.q).back();
    case FamilyTag::ASC: {
      const RationalMvPoly y =
          p.y ? RationalMvPoly(*p.y) : RationalMvPoly::variable(1);
      return rec::asc_table(n, x, y, p.rho, p.q).back();
    }
    case FamilyTag::ChebyshevU:
      return rec::chebyshev_u_table<RationalMvPoly, Rational>(n, x).back();
    case FamilyTag::BPoly:
      return rec::b_table(n, x, p.q).back();
    case FamilyTag::RogersSzego:
      return rec::rogers_szego(n, x, p.q);
    case FamilyTag::ContinuousQHermite:
      return rec::cont_q_hermite_table(n, x, p.q).back();
  }
  throw DomainError("unknown polynomial family");
}

// ---------------------------------------------------------------------------

double LogQFactorial::operator()(int n) {
  while (static_cast<int>(values_.size()) <= n) {
    const int k = static_cast<int>(values_.size());
    values_.push_back(values_.back() + std::log(bracket(k, q_)));
  }
  return values_[n];
}

NormalizedHermite::NormalizedHermite(double x, double q)
    : x_(x), q_(q), values_{1.0, x} {}

double NormalizedHermite::operator()(int n) {
  while (static_cast<int>(values_.size()) <= n) {
    const int k = static_cast<int>(values_.size()) - 1;
    const double next =
        (x_ * values_[k] - std::sqrt(bracket(k, q_)) * values_[k - 1]) /
        std::sqrt(bracket(k + 1, q_));
    values_.push_back(next);
  }
  return values_[n];
}

NormalizedAsc::NormalizedAsc(double x, double y, double rho, double q)
    : x_(x), y_(y), rho_(rho), q_(q), values_{1.0, x - rho * y} {}

double NormalizedAsc::operator()(int n) {
  while (static_cast<int>(values_.size()) <= n) {
    const int k = static_cast<int>(values_.size()) - 1;
    const double qk = ipow(q_, k);
    const double qkm1 = ipow(q_, k - 1);
    const double next =
        ((x_ - rho_ * y_ * qk) * values_[k] -
         (1.0 - rho_ * rho_ * qkm1) * std::sqrt(bracket(k, q_)) *
             values_[k - 1]) /
        std::sqrt(bracket(k + 1, q_));
    values_.push_back(next);
  }
  return values_[n];
}

NormalizedB::NormalizedB(double y, double q) : y_(y), q_(q), values_{1.0, -y} {}

double NormalizedB::operator()(int n) {
  while (static_cast<int>(values_.size()) <= n) {
    const int k = static_cast<int>(values_.size()) - 1;
    const double next = (-ipow(q_, k) * y_ * values_[k] +
                         ipow(q_, k - 1) * std::sqrt(bracket(k, q_)) *
                             values_[k - 1]) /
                        std::sqrt(bracket(k + 1, q_));
    values_.push_back(next);
  }
  return values_[n];
}

}  // namespace qks
