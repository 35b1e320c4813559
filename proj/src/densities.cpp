#include "qks/densities.hpp"

#include <algorithm>
#include <limits>

#include "qks/errors.hpp"

namespace qks {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

struct LogDensity {
  double log_abs = -std::numeric_limits<double>::infinity();
  double log_tail = 0.0;
  int terms = 0;
  bool zero = true;
};

// log f_N(x) and, when `cond` is set, the extra factors of f_CN.
LogDensity log_density(double x, const DensityParams* cond,
                       const QContext& ctx) {
  LogDensity out;
  const double q = ctx.q();
  const double aq = std::abs(q);
  const double omq = 1.0 - q;
  const double x2 = x * x;

  const LogProduct qinf = log_q_pochhammer_inf(q, ctx);
  double log_abs = qinf.log_abs + 0.5 * std::log(omq) - kLog2Pi;
  double log_tail = qinf.log_tail;
  int terms = qinf.terms_used;

  const double r0 = aux_r(0, x2, ctx);
  if (r0 <= 0.0) return out;
  log_abs += 0.5 * std::log(r0);

  double rho = 0.0, y = 0.0, cw = 0.0;
  if (cond) {
    rho = cond->rho;
    y = cond->y;
    const LogProduct rinf = log_q_pochhammer_inf(rho * rho, ctx);
    log_abs += rinf.log_abs;
    log_tail += rinf.log_tail;
    terms = std::max(terms, rinf.terms_used);
    cw = 3.0 + 2.0 * omq * std::abs(x * y) + omq * (x2 + y * y);
    const double v0 = aux_v(0, x, y, rho, ctx);
    if (v0 <= 0.0) {
      throw DomainError("v_0 is not positive; check |rho| < 1 and support");
    }
    log_abs -= std::log(v0);
  }

  const double cr = 3.0 + omq * x2;
  const double arho = std::abs(rho);
  double qk = 1.0;
  bool done = false;
  for (int k = 1; k <= ctx.max_terms(); ++k) {
    qk *= q;
    const double bound = std::abs(qk) * (cr + (cond ? cw * arho : 0.0));
    if (bound <= 0.5 && 2.0 * bound / (1.0 - aq) < ctx.product_tol()) {
      log_tail += 2.0 * bound / (1.0 - aq);
      terms = std::max(terms, k);
      done = true;
      break;
    }
    const double u = qk * (2.0 + qk - omq * x2);  // r_k - 1
    log_abs += std::log1p(u);
    if (cond) {
      const double w = aux_v(k, x, y, rho, ctx) - 1.0;
      if (w <= -1.0) throw DomainError("v_k is not positive");
      log_abs -= std::log1p(w);
    }
  }
  if (!done) {
    if (!ctx.allow_partial()) {
      throw NonConvergent("density product did not reach product_tol");
    }
    const double bound = std::abs(qk * q) * (cr + (cond ? cw * arho : 0.0));
    log_tail += bound <= 0.5 ? 2.0 * bound / (1.0 - aq)
                             : std::numeric_limits<double>::infinity();
    terms = ctx.max_terms();
  }
  out.log_abs = log_abs;
  out.log_tail = log_tail;
  out.terms = terms;
  out.zero = false;
  return out;
}

TruncationReport to_report(const LogDensity& ld) {
  TruncationReport r;
  r.terms_used = ld.terms;
  if (ld.zero) return r;
  r.value = std::exp(ld.log_abs);
  r.tail_estimate = r.value * std::expm1(ld.log_tail);
  return r;
}

void check_rho(double rho) {
  if (!(std::abs(rho) < 1.0)) {
    throw DomainError("correlation must satisfy |rho| < 1");
  }
}

}  // namespace

double aux_r(int k, double y, const QContext& ctx) {
  const double q = ctx.q();
  const double qk = ipow(q, k);
  return (1.0 + qk) * (1.0 + qk) - (1.0 - q) * y * qk;
}

double aux_v(int k, double x, double y, double rho, const QContext& ctx) {
  const double q = ctx.q();
  const double r = rho * ipow(q, k);
  const double r2 = r * r;
  const double omr2 = 1.0 - r2;
  return omr2 * omr2 - (1.0 - q) * r * (1.0 + r2) * x * y +
         (1.0 - q) * r2 * (x * x + y * y);
}

TruncationReport density_fn_report(double x, const QContext& ctx) {
  if (ctx.regime() == Regime::One) {
    TruncationReport r;
    r.value = std::exp(-0.5 * x * x - 0.5 * kLog2Pi);
    return r;
  }
  if (!support(ctx).contains(x)) return {};
  return to_report(log_density(x, nullptr, ctx));
}

double density_fn(double x, const QContext& ctx) {
  return density_fn_report(x, ctx).value;
}

TruncationReport density_fcn_report(double x, const DensityParams& p,
                                    const QContext& ctx) {
  check_rho(p.rho);
  if (ctx.regime() == Regime::One) {
    const double var = 1.0 - p.rho * p.rho;
    const double d = x - p.rho * p.y;
    TruncationReport r;
    r.value = std::exp(-0.5 * d * d / var - 0.5 * kLog2Pi) / std::sqrt(var);
    return r;
  }
  const SupportInterval s = support(ctx);
  if (!s.contains(p.y)) {
    throw DomainError("conditioning point lies outside S(q)");
  }
  if (!s.contains(x)) return {};
  return to_report(log_density(x, &p, ctx));
}

double density_fcn(double x, const DensityParams& p, const QContext& ctx) {
  return density_fcn_report(x, p, ctx).value;
}

TruncationReport density_faw_report(double x3, double x1, double rho13,
                                    double x2, double rho23,
                                    const QContext& ctx) {
  check_rho(rho13);
  check_rho(rho23);
  if (ctx.regime() == Regime::SubUnit && !support(ctx).contains(x3)) {
    TruncationReport r;
    return r;
  }
  const TruncationReport den =
      density_fcn_report(x1, {x2, rho13 * rho23}, ctx);
  if (!(den.value >= 1e-300)) {
    throw DivisionByNearZero("f_CN(x1|x2, rho13 rho23) is below 1e-300");
  }
  const TruncationReport a = density_fcn_report(x1, {x3, rho13}, ctx);
  const TruncationReport b = density_fcn_report(x3, {x2, rho23}, ctx);
  TruncationReport r;
  r.value = a.value * b.value / den.value;
  r.terms_used = std::max({a.terms_used, b.terms_used, den.terms_used});
  const auto rel = [](const TruncationReport& t) {
    return t.value > 0.0 ? t.tail_estimate / t.value : 0.0;
  };
  r.tail_estimate = std::abs(r.value) * (rel(a) + rel(b) + rel(den));
  return r;
}

double density_faw(double x3, double x1, double rho13, double x2, double rho23,
                   const QContext& ctx) {
  return density_faw_report(x3, x1, rho13, x2, rho23, ctx).value;
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw DomainError("quadrature needs at least one node");
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) {
        // one more derivative at the converged node
        p1 = 1.0;
        p2 = 0.0;
        for (int j = 1; j <= n; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        break;
      }
    }
    gl.nodes[n - 1 - i] = z;
    gl.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return gl;
}

QuadratureRule::QuadratureRule(int node_count) {
  const GaussLegendre gl = gauss_legendre(node_count);
  const double half = 0.5 * std::numbers::pi;
  theta_ = half * (gl.nodes.array() + 1.0);
  weights_ = half * gl.weights;
}

MappedRule mapped_rule(const QuadratureRule& rule, const QContext& ctx) {
  MappedRule m;
  if (ctx.regime() == Regime::One) {
    static const GaussLegendre gl = gauss_legendre(20);
    constexpr int panels = 10;
    constexpr double lo = -10.0, hi = 10.0;
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = lo + (p + 0.5) * h;
      for (int i = 0; i < gl.nodes.size(); ++i) {
        m.x.push_back(mid + 0.5 * h * gl.nodes[i]);
        m.w.push_back(0.5 * h * gl.weights[i]);
      }
    }
    return m;
  }
  const double a = support_half_width(ctx);
  const int n = rule.node_count();
  m.x.resize(n);
  m.w.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = rule.theta()[i];
    m.x[i] = a * std::cos(t);
    m.w[i] = rule.weights()[i] * a * std::sin(t);
  }
  return m;
}

}  // namespace qks
