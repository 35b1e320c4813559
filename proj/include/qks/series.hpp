#pragma once

// Series summation with a posteriori tails.
//
// A term callback returns the term value together with a majorant of its
// absolute value.  After each term the engine extrapolates the remaining
// majorants geometrically, using the larger of the two upcoming ratios; this
// is a certified bound once majorant ratios stop increasing, which holds for
// every series built from the sup bounds below.

#include <functional>
#include <string>
#include <vector>

#include "qks/polyfam.hpp"
#include "qks/qcore.hpp"

namespace qks {

struct SeriesTerm {
  double value = 0.0;
  double majorant = 0.0;
};

using TermFn = std::function<SeriesTerm(int)>;

/// Sums term(0), term(1), ... until the extrapolated tail is below
/// series_tol * max(1, |sum|).  Raises NonConvergent after max_terms unless
/// ctx.allow_partial() is set, in which case the partial sum is returned with
/// its (possibly infinite) tail.
TruncationReport sum_series(const TermFn& term, const QContext& ctx,
                            const std::string& what);

/// Cramer's constant: |He_n(x)| <= K sqrt(n!) exp(x^2/4).
inline constexpr double kCramer = 1.086435;

/// Majorant of |H_n(x|q)| / sqrt([n]_q!).  Below q = 1 it is the sup over S(q),
/// W_n(1|q)/sqrt((q)_n); at q = 1 it is Cramer's bound at x.
class HermiteMajorant {
 public:
  HermiteMajorant(double x, const QContext& ctx);
  double operator()(int n);

 private:
  double q_;
  bool classical_;
  double classical_value_ = 0.0;
  std::vector<double> w_;        // W_n(1|q)
  std::vector<double> poch_q_;   // (q)_n
};

/// Majorant of |P_n(x|y,rho,q)| / sqrt([n]_q!) via the expansion of P_n in
/// B_{n-k}(y) H_k(x); at q = 1 via Cramer on the rescaled Hermite form.
class AscMajorant {
 public:
  AscMajorant(double x, double y, double rho, const QContext& ctx);
  double operator()(int n);

 private:
  double rho_;
  bool classical_;
  double classical_base_ = 0.0;
  LogQFactorial lf_;
  NormalizedB b_;
  HermiteMajorant h_;
  std::vector<double> values_;
};

/// Sum over s of c_s Pa_s Pb_s where Pa_s = P_s(xa|y,rho_a)/sqrt([s]!) and
/// Pb_s likewise.  c_0 = 1 and c_s = c_{s-1} * ratio(s).
struct AscPair {
  double xa = 0.0;
  double rho_a = 0.0;
  double xb = 0.0;
  double rho_b = 0.0;
  double y = 0.0;
};

TruncationReport asc_pair_series(const AscPair& pair,
                                 const std::function<double(int)>& ratio,
                                 const QContext& ctx, const std::string& what);

}  // namespace qks
