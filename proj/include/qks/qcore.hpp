#pragma once

// q-arithmetic primitives.
//
// Every finite quantity is a template on the scalar type so the same code
// serves the double-precision workhorse and the exact rational oracle
// (qks::Rational).  The double overloads taking a QContext are the ones the
// rest of the numerical library uses.

#include <cmath>
#include <cstdlib>
#include <limits>

#include "qks/errors.hpp"

namespace qks {

enum class Regime { SubUnit, One };

/// A validated q in (-1, 1] together with the truncation policy used by all
/// infinite sums and products evaluated under it.
class QContext {
 public:
  explicit QContext(double q, double product_tol = 1e-14,
                    double series_tol = 1e-12, int max_terms = 512);

  double q() const noexcept { return q_; }
  Regime regime() const noexcept { return regime_; }
  double product_tol() const noexcept { return product_tol_; }
  double series_tol() const noexcept { return series_tol_; }
  int max_terms() const noexcept { return max_terms_; }
  /// When set, a series that exhausts max_terms returns its partial sum and
  /// tail estimate instead of raising NonConvergent.
  bool allow_partial() const noexcept { return allow_partial_; }

  QContext with_max_terms(int max_terms) const;
  QContext with_series_tol(double tol) const;
  QContext with_allow_partial(bool allow) const;

  /// Reads QKS_MAX_TERMS from the environment, if set.
  static QContext from_env(double q);

 private:
  double q_;
  Regime regime_;
  double product_tol_;
  double series_tol_;
  int max_terms_;
  bool allow_partial_ = false;
};

/// Value of a truncated infinite sum or product.
struct TruncationReport {
  double value = 0.0;
  int terms_used = 0;
  double tail_estimate = 0.0;
};

struct SupportInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool unbounded = false;

  bool contains(double x) const noexcept {
    return unbounded || (x >= lo && x <= hi);
  }
};

// ---------------------------------------------------------------------------
// Scalar-generic finite quantities.

/// base^e for e >= 0, with 0^0 = 1.
template <class Scalar>
Scalar ipow(const Scalar& base, int e) {
  Scalar result(1);
  Scalar b(base);
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

/// [n]_q = 1 + q + ... + q^{n-1}.
template <class Scalar>
Scalar q_bracket(int n, const Scalar& q) {
  Scalar sum(0);
  Scalar power(1);
  for (int i = 0; i < n; ++i) {
    sum += power;
    power *= q;
  }
  return sum;
}

template <class Scalar>
Scalar q_factorial(int n, const Scalar& q) {
  Scalar result(1);
  for (int i = 1; i <= n; ++i) result *= q_bracket(i, q);
  return result;
}

/// (a;q)_n = prod_{i<n} (1 - a q^i).
template <class Scalar>
Scalar q_pochhammer(const Scalar& a, int n, const Scalar& q) {
  Scalar result(1);
  Scalar aqi(a);
  for (int i = 0; i < n; ++i) {
    result *= Scalar(1) - aqi;
    aqi *= q;
  }
  return result;
}

/// Gaussian binomial; zero unless n >= k >= 0.
template <class Scalar>
Scalar q_binomial(int n, int k, const Scalar& q) {
  if (k < 0 || n < k) return Scalar(0);
  if (q == Scalar(1)) {
    Scalar num = q_factorial(n, q);
    Scalar den = q_factorial(k, q) * q_factorial(n - k, q);
    return Scalar(num / den);
  }
  Scalar num = q_pochhammer(q, n, q);
  Scalar den = q_pochhammer(q, n - k, q) * q_pochhammer(q, k, q);
  return Scalar(num / den);
}

/// q^{binom(k,2)}.
template <class Scalar>
Scalar q_triangular_power(int k, const Scalar& q) {
  return ipow(q, k * (k - 1) / 2);
}

// ---------------------------------------------------------------------------
// Double-precision API.

double q_bracket(int n, const QContext& ctx);
double q_factorial(int n, const QContext& ctx);
double q_binomial(int n, int k, const QContext& ctx);
double q_pochhammer(double a, int n, const QContext& ctx);

/// (a;q)_inf truncated at the first K with 2|a||q|^K/(1-|q|) below
/// product_tol (and |a q^K| <= 1/2).  Requires |q| <= 0.95.
TruncationReport q_pochhammer_inf(double a, const QContext& ctx);

/// Log-magnitude form of (a;q)_inf for products that under/overflow.
struct LogProduct {
  double log_abs = 0.0;
  int sign = 1;
  int terms_used = 0;
  /// Bound on |log(true) - log(reported)|.
  double log_tail = 0.0;
};
LogProduct log_q_pochhammer_inf(double a, const QContext& ctx);

SupportInterval support(const QContext& ctx);

/// Half-width 2/sqrt(1-q) of S(q); infinity at q = 1.
double support_half_width(const QContext& ctx);

/// Largest |q| accepted by the float infinite-product backend.
inline constexpr double kMaxProductQ = 0.95;

}  // namespace qks
