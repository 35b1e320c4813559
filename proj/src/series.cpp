#include "qks/series.hpp"

#include <cmath>
#include <limits>

#include "qks/errors.hpp"

namespace qks {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tail after the first n+1 terms given the next two majorants.
double extrapolated_tail(double m0, double m1, double m2) {
  if (m1 == 0.0 && m2 == 0.0) return 0.0;
  if (m0 == 0.0 || m1 == 0.0) return kInf;
  const double r = std::max(m1 / m0, m2 / m1);
  if (!(r < 1.0)) return kInf;
  return m1 / (1.0 - r);
}

}  // namespace

TruncationReport sum_series(const TermFn& term, const QContext& ctx,
                            const std::string& what) {
  std::vector<SeriesTerm> cache;
  auto get = [&](int s) -> const SeriesTerm& {
    while (static_cast<int>(cache.size()) <= s) {
      cache.push_back(term(static_cast<int>(cache.size())));
    }
    return cache[s];
  };

  const double eps = std::numeric_limits<double>::epsilon();
  double sum = 0.0;
  double abs_sum = 0.0;
  double tail = kInf;
  int used = 0;
  for (int n = 0; n < ctx.max_terms(); ++n) {
    const SeriesTerm t = get(n);
    if (!std::isfinite(t.value) || !std::isfinite(t.majorant)) {
      throw NonConvergent(what + ": non-finite term at index " +
                          std::to_string(n));
    }
    sum += t.value;
    abs_sum += std::abs(t.value);
    used = n + 1;
    tail = extrapolated_tail(t.majorant, get(n + 1).majorant,
                             get(n + 2).majorant);
    if (tail <= ctx.series_tol() * std::max(1.0, std::abs(sum))) break;
  }

  TruncationReport r;
  r.value = sum;
  r.terms_used = used;
  r.tail_estimate = tail + 32.0 * eps * abs_sum;
  if (!(tail <= ctx.series_tol() * std::max(1.0, std::abs(sum))) &&
      !ctx.allow_partial()) {
    throw NonConvergent(what + ": tail above series_tol after " +
                        std::to_string(used) + " terms");
  }
  return r;
}

// ---------------------------------------------------------------------------

HermiteMajorant::HermiteMajorant(double x, const QContext& ctx)
    : q_(ctx.q()), classical_(ctx.regime() == Regime::One) {
  if (classical_) {
    classical_value_ = kCramer * std::exp(0.25 * x * x);
  } else {
    w_ = {1.0, 2.0};
    poch_q_ = {1.0, 1.0 - q_};
  }
}

double HermiteMajorant::operator()(int n) {
  if (classical_) return classical_value_;
  while (static_cast<int>(w_.size()) <= n) {
    const int k = static_cast<int>(w_.size()) - 1;
    const double qk = ipow(q_, k);
    w_.push_back(2.0 * w_[k] - (1.0 - qk) * w_[k - 1]);
    poch_q_.push_back(poch_q_.back() * (1.0 - qk * q_));
  }
  return w_[n] / std::sqrt(poch_q_[n]);
}

AscMajorant::AscMajorant(double x, double y, double rho, const QContext& ctx)
    : rho_(rho),
      classical_(ctx.regime() == Regime::One),
      lf_(ctx.q()),
      b_(y, ctx.q()),
      h_(x, ctx) {
  if (classical_) {
    const double s = std::sqrt(1.0 - rho * rho);
    const double xi = (x - rho * y) / s;
    classical_base_ = kCramer * std::exp(0.25 * xi * xi);
  }
}

double AscMajorant::operator()(int n) {
  if (classical_) {
    return classical_base_ * std::pow(1.0 - rho_ * rho_, 0.5 * n);
  }
  while (static_cast<int>(values_.size()) <= n) {
    const int t = static_cast<int>(values_.size());
    const double lft = lf_(t);
    double sum = 0.0;
    for (int k = 0; k <= t; ++k) {
      const double binom = std::exp(0.5 * (lft - lf_(k) - lf_(t - k)));
      sum += binom * std::pow(std::abs(rho_), t - k) * std::abs(b_(t - k)) *
             h_(k);
    }
    values_.push_back(sum);
  }
  return values_[n];
}

TruncationReport asc_pair_series(const AscPair& pair,
                                 const std::function<double(int)>& ratio,
                                 const QContext& ctx, const std::string& what) {
  const double q = ctx.q();
  NormalizedAsc pa(pair.xa, pair.y, pair.rho_a, q);
  NormalizedAsc pb(pair.xb, pair.y, pair.rho_b, q);
  AscMajorant ma(pair.xa, pair.y, pair.rho_a, ctx);
  AscMajorant mb(pair.xb, pair.y, pair.rho_b, ctx);
  double coeff = 1.0;
  int last = 0;
  auto term = [&](int s) {
    // called with s = 0, 1, 2, ... in order
    for (; last < s; ++last) coeff *= ratio(last + 1);
    SeriesTerm t;
    if (coeff == 0.0) return t;
    t.value = coeff * pa(s) * pb(s);
    t.majorant = std::abs(coeff) * ma(s) * mb(s);
    return t;
  };
  return sum_series(term, ctx, what);
}

}  // namespace qks
