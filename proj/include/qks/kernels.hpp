#pragma once

// Kernel sums in three variables: gamma_{m,k}, the finite closed forms Q_{m,k}
// and C_n, the Poisson--Mehler sum, three expansions of the trivariate density
// f_3D, the Askey--Wilson expansion and the special-parameter kernels.

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "qks/densities.hpp"
#include "qks/polyfam.hpp"
#include "qks/qcore.hpp"

namespace qks {

// ---------------------------------------------------------------------------
// Correlations

/// 1 + 2 r12 r13 r23 - r12^2 - r13^2 - r23^2.
double delta_of(double rho12, double rho13, double rho23);
/// (1 - r12^2)(1 - r23^2) - (r13 - r12 r23)^2.
double delta_of_wyzn(double rho12, double rho13, double rho23);
/// Determinant of the correlation matrix (LU).
double delta_of_det(double rho12, double rho13, double rho23);

struct CorrelationTriple {
  double rho12 = 0.0;
  double rho13 = 0.0;
  double rho23 = 0.0;

  double delta() const { return delta_of(rho12, rho13, rho23); }
  bool feasible() const { return delta() >= 0.0; }
  Eigen::Matrix3d matrix() const;
};

/// DomainError unless every |rho| < 1; InfeasibleCorrelation if delta < 0.
void require_feasible(const CorrelationTriple& c);

/// Density of N(0, corr.matrix()) at (x1, x2, x3).
double gaussian3d_density(double x1, double x2, double x3,
                          const CorrelationTriple& corr);

// ---------------------------------------------------------------------------
// Finite closed forms, generic over (T, S) like the recurrences in polyfam.

namespace rec {

/// prod_{i=0}^{n-1} (a - b q^{start+i}).
template <class S>
S shifted_product(int n, const S& a, const S& b, const S& q, int start = 0) {
  S out(1);
  S qi = ipow(q, start);
  for (int i = 0; i < n; ++i) {
    out *= a - b * qi;
    qi *= q;
  }
  return out;
}

/// Q_{m,k}(x,y|rho) = sum_s (-1)^s q^{C(s,2)} [k s] rho^s H_{k-s}(y)
///                    P_{m+s}(x|y,rho) / (rho^2)_{m+s}.
template <class T, class S>
T q_mk(int m, int k, const T& x, const T& y, const S& rho, const S& q) {
  const std::vector<T> h = hermite_table(k, y, q);
  const std::vector<T> p = asc_table(m + k, x, y, rho, q);
  T sum(S(0));
  for (int s = 0; s <= k; ++s) {
    S c = q_triangular_power(s, q) * q_binomial(k, s, q) * ipow(rho, s) /
          q_pochhammer(S(rho * rho), m + s, q);
    if (s % 2 == 1) c = -c;
    sum += c * (h[k - s] * p[m + s]);
  }
  return sum;
}

/// C_n(x,y|r1,r2,r3) through the ASC connection:
///   sum_s [n s] H_{n-s}(y) P_s(x|y,r3) r1^{n-s} prod_{i<s}(r2 - q^i r1 r3)
///   / (r3^2)_s.
template <class T, class S>
T c_n_connection(int n, const T& x, const T& y, const S& r1, const S& r2,
                 const S& r3, const S& q) {
  const std::vector<T> h = hermite_table(n, y, q);
  const std::vector<T> p = asc_table(n, x, y, r3, q);
  T sum(S(0));
  const S r13 = r1 * r3;
  for (int s = 0; s <= n; ++s) {
    const S c = q_binomial(n, s, q) * ipow(r1, n - s) *
                shifted_product(s, r2, r13, q) /
                q_pochhammer(S(r3 * r3), s, q);
    sum += c * (h[n - s] * p[s]);
  }
  return sum;
}

/// C_n(x,y|r1,r2,r3) in q-Hermite polynomials of x and y only; no division
/// other than the overall (r3^2)_n.
template <class T, class S>
T c_n_hermite(int n, const T& x, const T& y, const S& r1, const S& r2,
              const S& r3, const S& q) {
  const std::vector<T> hx = hermite_table(n, x, q);
  const std::vector<T> hy = hermite_table(n, y, q);
  const S r13 = r1 * r3;
  const S r23 = r2 * r3;
  T outer(S(0));
  for (int k = 0; 2 * k <= n; ++k) {
    S ck = q_triangular_power(k, q) * q_binomial(n, 2 * k, q) *
           q_binomial(2 * k, k, q) * q_factorial(k, q) * ipow(r3, k) *
           shifted_product(k, r2, r13, q) * shifted_product(k, r1, r23, q);
    if (k % 2 == 1) ck = -ck;
    if (ck == S(0)) continue;
    const int rest = n - 2 * k;
    T inner(S(0));
    for (int i = 0; i <= rest; ++i) {
      const S ci = q_binomial(rest, i, q) * shifted_product(i, r2, r13, q, k) *
                   shifted_product(rest - i, r1, r23, q, k);
      inner += ci * (hx[i] * hy[rest - i]);
    }
    outer += ck * inner;
  }
  return outer * S(S(1) / q_pochhammer(S(r3 * r3), n, q));
}

}  // namespace rec

// ---------------------------------------------------------------------------
// Float API

/// gamma_{m,k}(x,y|rho) = sum_i rho^i/[i]! H_{i+m}(x) H_{i+k}(y).
TruncationReport gamma_mk(int m, int k, double x, double y, double rho,
                          const QContext& ctx);

double q_mk_closed(int m, int k, double x, double y, double rho,
                   const QContext& ctx);

enum class CnForm { Connection, Hermite };

double c_n(int n, double x, double y, double rho1, double rho2, double rho3,
           const QContext& ctx, CnForm form = CnForm::Connection);

/// sum_n rho^n/[n]! H_n(x) H_n(y), summed as a series at every q in (-1, 1].
TruncationReport poisson_mehler(double x, double y, double rho,
                                const QContext& ctx);

/// Classical Mehler kernel, the q = 1 value of poisson_mehler.
double mehler_closed_form(double x, double y, double rho);

enum class F3dForm { Direct, HC, ASC };

const char* f3d_form_name(F3dForm form);
std::optional<F3dForm> parse_f3d_form(const std::string& name);

/// f_3D(x1,x2,x3|rho12,rho13,rho23,q).  At q = 1 every form returns the
/// Gaussian density; zero when a point leaves S(q).
TruncationReport f3d(double x1, double x2, double x3,
                     const CorrelationTriple& corr, const QContext& ctx,
                     F3dForm form = F3dForm::ASC);

/// The ASC expansion of f_3D summed as a series, also at q = 1.
TruncationReport f3d_asc_series(double x1, double x2, double x3,
                                const CorrelationTriple& corr,
                                const QContext& ctx);

/// f_CN(x3|x2,rho23) sum_s rho13^s/([s]!(rho13^2 rho23^2)_s)
///   P_s(x1|x2,rho13 rho23) P_s(x3|x2,rho23).
/// With n_terms the sum stops after that many terms.
TruncationReport aw_expansion(double x3, double x1, double rho13, double x2,
                              double rho23, const QContext& ctx,
                              std::optional<int> n_terms = std::nullopt);

struct KernelSides {
  TruncationReport lhs;
  TruncationReport rhs;
};

/// Two evaluations of the ASC kernel at rho12 = q^k rho13 rho23.
/// lhs: f_CN(x1|x3,rho13)/f_CN(x1|x2,q^k rho13 rho23) times the (finite) sum
///      centred at x3.
/// rhs: the same kernel centred at x2, an infinite series.
KernelSides qk_kernel(int k, double x1, double x2, double x3, double rho13,
                      double rho23, const QContext& ctx);

/// rho12 = 0.  lhs: sum_s (-1)^s q^{C(s,2)} (rho13 rho23)^s
///   /([s]!(rho13^2)_s(rho23^2)_s) P_s(x1|x3,rho13) P_s(x2|x3,rho23).
/// rhs: f_N(x1)/f_CN(x1|x3,rho13) sum_k rho13^k/([k]!(rho23^2)_k)
///   H_k(x1) P_k(x3|x2,rho23).
KernelSides kernel_rho12_zero(double x1, double x2, double x3, double rho13,
                              double rho23, const QContext& ctx);

/// Kernel centred at x3 times f_CN(x1|x3,rho13) (lhs) against the kernel
/// centred at x2 times f_CN(x1|x2,rho12) (rhs).
KernelSides kernel_recentring(double x1, double x2, double x3,
                              const CorrelationTriple& corr,
                              const QContext& ctx);

}  // namespace qks
