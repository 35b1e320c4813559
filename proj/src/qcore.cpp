#include "qks/qcore.hpp"

#include <cstdlib>
#include <string>

namespace qks {

QContext::QContext(double q, double product_tol, double series_tol,
                   int max_terms)
    : q_(q),
      regime_(q == 1.0 ? Regime::One : Regime::SubUnit),
      product_tol_(product_tol),
      series_tol_(series_tol),
      max_terms_(max_terms) {
  if (!(q > -1.0 && q <= 1.0)) {
    throw DomainError("q must lie in (-1, 1], got " + std::to_string(q));
  }
  if (!(product_tol > 0.0) || !(series_tol > 0.0)) {
    throw DomainError("truncation tolerances must be positive");
  }
  if (max_terms < 1) throw DomainError("max_terms must be at least 1");
}

QContext QContext::with_max_terms(int max_terms) const {
  QContext copy(q_, product_tol_, series_tol_, max_terms);
  copy.allow_partial_ = allow_partial_;
  return copy;
}

QContext QContext::with_series_tol(double tol) const {
  QContext copy(q_, product_tol_, tol, max_terms_);
  copy.allow_partial_ = allow_partial_;
  return copy;
}

QContext QContext::with_allow_partial(bool allow) const {
  QContext copy(*this);
  copy.allow_partial_ = allow;
  return copy;
}

QContext QContext::from_env(double q) {
  QContext ctx(q);
  if (const char* env = std::getenv("QKS_MAX_TERMS"); env && *env) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (*end != '\0' || value < 1 || value > 1'000'000) {
      throw DomainError(std::string("invalid QKS_MAX_TERMS: ") + env);
    }
    ctx = ctx.with_max_terms(static_cast<int>(value));
  }
  return ctx;
}

double q_bracket(int n, const QContext& ctx) { return q_bracket(n, ctx.q()); }

double q_factorial(int n, const QContext& ctx) {
  return q_factorial(n, ctx.q());
}

double q_binomial(int n, int k, const QContext& ctx) {
  return q_binomial(n, k, ctx.q());
}

double q_pochhammer(double a, int n, const QContext& ctx) {
  return q_pochhammer(a, n, ctx.q());
}

LogProduct log_q_pochhammer_inf(double a, const QContext& ctx) {
  if (ctx.regime() == Regime::One) {
    throw RegimeError("(a;q)_inf is undefined at q = 1");
  }
  const double aq = std::abs(ctx.q());
  if (aq > kMaxProductQ) {
    throw NonConvergent("infinite products are restricted to |q| <= 0.95");
  }
  LogProduct out;
  if (a == 0.0) return out;

  const double abs_a = std::abs(a);
  double aqk = a;  // a q^k
  for (int k = 0; k < ctx.max_terms(); ++k) {
    const double factor = 1.0 - aqk;
    out.terms_used = k + 1;
    if (factor == 0.0) {
      out.sign = 0;
      out.log_abs = -std::numeric_limits<double>::infinity();
      out.log_tail = 0.0;
      return out;
    }
    if (factor < 0.0) out.sign = -out.sign;
    out.log_abs += std::log(std::abs(factor));
    aqk *= ctx.q();
    // |log(1 - u)| <= 2|u| for |u| <= 1/2 bounds every remaining factor.
    const double next = abs_a * std::pow(aq, k + 1);
    if (next <= 0.5) {
      const double bound = 2.0 * next / (1.0 - aq);
      if (bound < ctx.product_tol()) {
        out.log_tail = bound;
        return out;
      }
    }
  }
  if (ctx.allow_partial()) {
    const double next = abs_a * std::pow(aq, ctx.max_terms());
    out.log_tail = next <= 0.5 ? 2.0 * next / (1.0 - aq)
                               : std::numeric_limits<double>::infinity();
    return out;
  }
  throw NonConvergent("(a;q)_inf did not reach product_tol within max_terms");
}

TruncationReport q_pochhammer_inf(double a, const QContext& ctx) {
  const LogProduct lp = log_q_pochhammer_inf(a, ctx);
  TruncationReport r;
  r.terms_used = lp.terms_used;
  if (lp.sign == 0) return r;
  r.value = lp.sign * std::exp(lp.log_abs);
  r.tail_estimate = std::abs(r.value) * std::expm1(lp.log_tail);
  return r;
}

double support_half_width(const QContext& ctx) {
  if (ctx.regime() == Regime::One) return std::numeric_limits<double>::infinity();
  return 2.0 / std::sqrt(1.0 - ctx.q());
}

SupportInterval support(const QContext& ctx) {
  SupportInterval s;
  if (ctx.regime() == Regime::One) {
    s.unbounded = true;
    s.lo = -std::numeric_limits<double>::infinity();
    s.hi = std::numeric_limits<double>::infinity();
    return s;
  }
  s.hi = support_half_width(ctx);
  s.lo = -s.hi;
  return s;
}

}  // namespace qks
