#pragma once

// Polynomial families defined by three-term recurrences.
//
// The rec:: templates run a recurrence over any ring T with scalars S, which
// is how one implementation produces both float values (T = S = double) and
// exact coefficient polynomials (T = RationalMvPoly, S = Rational).

#include <optional>
#include <string>
#include <vector>

#include "qks/exactpoly.hpp"
#include "qks/qcore.hpp"

namespace qks {

enum class FamilyTag {
  HermiteQ,
  ASC,
  ChebyshevU,
  BPoly,
  RogersSzego,
  ContinuousQHermite
};

std::string family_name(FamilyTag tag);
/// Accepts the CLI spellings (hermite-q, asc, chebyshev-u, b-poly,
/// rogers-szego, cont-q-hermite).
std::optional<FamilyTag> parse_family(const std::string& name);

/// Conditioning point and correlation of the Al-Salam--Chihara family.
struct AscParams {
  double y = 0.0;
  double rho = 0.0;
};

/// Largest degree accepted by the single-value evaluators.
inline constexpr int kMaxDegree = 64;

namespace rec {

/// H_0..H_n via H_{k+1} = x H_k - [k]_q H_{k-1}.
template <class T, class S>
std::vector<T> hermite_table(int n, const T& x, const S& q) {
  std::vector<T> h;
  h.reserve(n + 1);
  h.push_back(T(S(1)));
  if (n == 0) return h;
  h.push_back(x);
  for (int k = 1; k < n; ++k) {
    const S bracket = q_bracket(k, q);
    h.push_back(x * h[k] - bracket * h[k - 1]);
  }
  return h;
}

/// P_0..P_n via P_{k+1} = (x - rho y q^k) P_k - (1 - rho^2 q^{k-1}) [k]_q P_{k-1}.
template <class T, class S>
std::vector<T> asc_table(int n, const T& x, const T& y, const S& rho,
                         const S& q) {
  std::vector<T> p;
  p.reserve(n + 1);
  p.push_back(T(S(1)));
  S qk(1);  // q^k
  for (int k = 0; k < n; ++k) {
    const S shift_coeff = rho * qk;
    T next = (x - shift_coeff * y) * p[k];
    if (k > 0) {
      const S qkm1 = ipow(q, k - 1);
      const S coeff = (S(1) - rho * rho * qkm1) * q_bracket(k, q);
      next -= coeff * p[k - 1];
    }
    p.push_back(std::move(next));
    qk *= q;
  }
  return p;
}

/// B_0..B_n via B_{k+1} = -q^k y B_k + q^{k-1} [k]_q B_{k-1}.
template <class T, class S>
std::vector<T> b_table(int n, const T& y, const S& q) {
  std::vector<T> b;
  b.reserve(n + 1);
  b.push_back(T(S(1)));
  S qk(1);
  for (int k = 0; k < n; ++k) {
    const S minus_qk = -qk;
    T next = minus_qk * y * b[k];
    if (k > 0) {
      const S coeff = ipow(q, k - 1) * q_bracket(k, q);
      next += coeff * b[k - 1];
    }
    b.push_back(std::move(next));
    qk *= q;
  }
  return b;
}

template <class T, class S>
std::vector<T> chebyshev_u_table(int n, const T& x) {
  std::vector<T> u;
  u.reserve(n + 1);
  u.push_back(T(S(1)));
  if (n == 0) return u;
  const T two_x = S(2) * x;
  u.push_back(two_x);
  for (int k = 1; k < n; ++k) u.push_back(two_x * u[k] - u[k - 1]);
  return u;
}

/// Continuous q-Hermite h_0..h_n via h_{k+1} = 2x h_k - (1 - q^k) h_{k-1}.
template <class T, class S>
std::vector<T> cont_q_hermite_table(int n, const T& x, const S& q) {
  std::vector<T> h;
  h.reserve(n + 1);
  h.push_back(T(S(1)));
  if (n == 0) return h;
  const T two_x = S(2) * x;
  h.push_back(two_x);
  for (int k = 1; k < n; ++k) {
    const S coeff = S(1) - ipow(q, k);
    h.push_back(two_x * h[k] - coeff * h[k - 1]);
  }
  return h;
}

/// W_n(x|q) = sum_j [n j]_q x^j.
template <class T, class S>
T rogers_szego(int n, const T& x, const S& q) {
  T sum(S(0));
  T power(S(1));
  for (int j = 0; j <= n; ++j) {
    const S binom = q_binomial(n, j, q);
    sum += binom * power;
    power = power * x;
  }
  return sum;
}

}  // namespace rec

// ---------------------------------------------------------------------------
// Float evaluators.  Degrees above kMaxDegree raise DegreeCap.

double hermite_q(int n, double x, const QContext& ctx);
double asc_p(int n, double x, const AscParams& p, const QContext& ctx);
double chebyshev_u(int n, double x);
double b_poly(int n, double y, const QContext& ctx);
double rogers_szego(int n, double x, const QContext& ctx);
/// h_n(x|q) = (1-q)^{n/2} H_n(2x/sqrt(1-q) | q); RegimeError at q = 1.
double cont_q_hermite(int n, double x, const QContext& ctx);
/// W_n(1|q) (1-q)^{-n/2}, the sup of |H_n| over S(q); RegimeError at q = 1.
double hermite_sup_bound(int n, const QContext& ctx);

// ---------------------------------------------------------------------------
// Exact coefficients.

struct ExactFamilyParams {
  Rational q;
  Rational rho{0};
  /// Conditioning point of the ASC family; symbolic x2 when absent.
  std::optional<Rational> y;
};

/// The degree-n member of a family as a polynomial in x1 (and x2 for a
/// symbolic ASC conditioning point).
RationalMvPoly family_coeffs(FamilyTag tag, int n, const ExactFamilyParams& p);

// ---------------------------------------------------------------------------
// Normalised sequences for long series.  The n-th element is the polynomial
// value divided by sqrt([n]_q!), which keeps terms of degree several hundred
// inside double range.  Sequences extend lazily on access.

/// log [n]_q! for n = 0, 1, ...
class LogQFactorial {
 public:
  explicit LogQFactorial(double q) : q_(q), values_{0.0} {}
  double operator()(int n);

 private:
  double q_;
  std::vector<double> values_;
};

class NormalizedHermite {
 public:
  NormalizedHermite(double x, double q);
  double operator()(int n);

 private:
  double x_, q_;
  std::vector<double> values_;
};

class NormalizedAsc {
 public:
  NormalizedAsc(double x, double y, double rho, double q);
  double operator()(int n);

 private:
  double x_, y_, rho_, q_;
  std::vector<double> values_;
};

class NormalizedB {
 public:
  NormalizedB(double y, double q);
  double operator()(int n);

 private:
  double y_, q_;
  std::vector<double> values_;
};

}  // namespace qks
