#include "qks/kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qks/errors.hpp"
#include "qks/series.hpp"

namespace qks {

namespace {

void check_rho(double rho, const char* name) {
  if (!(std::abs(rho) < 1.0)) {
    throw DomainError(std::string(name) + " must satisfy |rho| < 1");
  }
}

void check_point(double x, const QContext& ctx, const char* name) {
  if (!support(ctx).contains(x)) {
    throw DomainError(std::string(name) + " lies outside S(q)");
  }
}

double rel_tail(const TruncationReport& r) {
  return r.value != 0.0 ? r.tail_estimate / std::abs(r.value) : 0.0;
}

// prefactor * series, with the prefactor carrying a relative tail.
TruncationReport scale(double pref, double pref_rel_tail,
                       const TruncationReport& series) {
  TruncationReport r;
  r.value = pref * series.value;
  r.terms_used = series.terms_used;
  r.tail_estimate = std::abs(pref) * series.tail_estimate +
                    std::abs(r.value) * pref_rel_tail;
  return r;
}

bool off_support(double x1, double x2, double x3, const QContext& ctx) {
  const SupportInterval s = support(ctx);
  return !(s.contains(x1) && s.contains(x2) && s.contains(x3));
}

// Kernel of f_3D centred at x3: sum_s prod_{i<s}(r12 - q^i r13 r23)
// / ((r13^2)_s (r23^2)_s) Pa_s(x1|x3,r13) Pb_s(x2|x3,r23).
TruncationReport centred_at_x3(double x1, double x2, double x3, double r12,
                               double r13, double r23, const QContext& ctx) {
  const double q = ctx.q();
  const double p = r13 * r23;
  const double a = r13 * r13, b = r23 * r23;
  auto ratio = [=](int s) {
    const double qs = ipow(q, s - 1);
    return (r12 - qs * p) / ((1.0 - a * qs) * (1.0 - b * qs));
  };
  return asc_pair_series({x1, r13, x2, r23, x3}, ratio, ctx,
                         "f3d kernel centred at x3");
}

// Same kernel centred at x2: roles of (r12, r13) and (x2, x3) swapped.
TruncationReport centred_at_x2(double x1, double x2, double x3, double r12,
                               double r13, double r23, const QContext& ctx) {
  const double q = ctx.q();
  const double p = r12 * r23;
  const double a = r12 * r12, b = r23 * r23;
  auto ratio = [=](int s) {
    const double qs = ipow(q, s - 1);
    return (r13 - qs * p) / ((1.0 - a * qs) * (1.0 - b * qs));
  };
  return asc_pair_series({x1, r12, x3, r23, x2}, ratio, ctx,
                         "f3d kernel centred at x2");
}

TruncationReport f3d_direct(double x1, double x2, double x3,
                            const CorrelationTriple& c, const QContext& ctx) {
  const double q = ctx.q();
  LogQFactorial lf(q);
  NormalizedHermite h1(x1, q), h2(x2, q), h3(x3, q);
  HermiteMajorant m1(x1, ctx), m2(x2, ctx), m3(x3, ctx);
  const double a13 = std::abs(c.rho13), a12 = std::abs(c.rho12),
               a23 = std::abs(c.rho23);
  auto shell = [&](int n) {
    SeriesTerm t;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; i + j <= n; ++j) {
        const int k = n - i - j;
        const double w = std::exp(0.5 * (lf(i + j) + lf(j + k) + lf(i + k)) -
                                  lf(i) - lf(j) - lf(k));
        const double pw_abs =
            std::pow(a13, i) * std::pow(a12, j) * std::pow(a23, k);
        if (pw_abs == 0.0) continue;
        const double pw = std::pow(c.rho13, i) * std::pow(c.rho12, j) *
                          std::pow(c.rho23, k);
        t.value += pw * w * h1(i + j) * h2(j + k) * h3(i + k);
        t.majorant += pw_abs * w * m1(i + j) * m2(j + k) * m3(i + k);
      }
    }
    return t;
  };
  const TruncationReport s = sum_series(shell, ctx, "f3d direct form");
  const TruncationReport f1 = density_fn_report(x1, ctx);
  const TruncationReport f2 = density_fn_report(x2, ctx);
  const TruncationReport f3 = density_fn_report(x3, ctx);
  return scale(f1.value * f2.value * f3.value,
               rel_tail(f1) + rel_tail(f2) + rel_tail(f3), s);
}

TruncationReport f3d_hc(double x1, double x2, double x3,
                        const CorrelationTriple& c, const QContext& ctx) {
  const double q = ctx.q();
  LogQFactorial lf(q);
  NormalizedHermite h2(x2, q), h3(x3, q);
  NormalizedAsc p1(x1, x3, c.rho13, q);
  HermiteMajorant m2(x2, ctx), m3(x3, ctx);
  AscMajorant mp1(x1, x3, c.rho13, ctx);
  // C_s(x1,x3) with the first two correlations in the order (rho23, rho12):
  // d_t = prod_{i<t}(r12 - q^i r23 r13) / (r13^2)_t, paired with r23^{s-t}.
  std::vector<double> d{1.0};
  const double r2313 = c.rho23 * c.rho13;
  const double a = c.rho13 * c.rho13;
  auto dcoef = [&](int t) {
    while (static_cast<int>(d.size()) <= t) {
      const int i = static_cast<int>(d.size()) - 1;
      const double qi = ipow(q, i);
      d.push_back(d.back() * (c.rho12 - qi * r2313) / (1.0 - a * qi));
    }
    return d[t];
  };
  auto term = [&](int s) {
    SeriesTerm out;
    double val = 0.0, maj = 0.0;
    for (int t = 0; t <= s; ++t) {
      const double dt = dcoef(t);
      if (dt == 0.0) break;
      const double binom = std::exp(0.5 * (lf(s) - lf(t) - lf(s - t)));
      const double pw = std::pow(c.rho23, s - t);
      val += binom * h3(s - t) * p1(t) * pw * dt;
      maj += binom * m3(s - t) * mp1(t) * std::abs(pw) * std::abs(dt);
    }
    out.value = h2(s) * val;
    out.majorant = m2(s) * maj;
    return out;
  };
  const TruncationReport s = sum_series(term, ctx, "f3d HC form");
  const TruncationReport fc = density_fcn_report(x3, {x1, c.rho13}, ctx);
  const TruncationReport f1 = density_fn_report(x1, ctx);
  const TruncationReport f2 = density_fn_report(x2, ctx);
  return scale(fc.value * f1.value * f2.value,
               rel_tail(fc) + rel_tail(f1) + rel_tail(f2), s);
}

}  // namespace

// ---------------------------------------------------------------------------

double delta_of(double rho12, double rho13, double rho23) {
  return 1.0 + 2.0 * rho12 * rho13 * rho23 - rho12 * rho12 - rho13 * rho13 -
         rho23 * rho23;
}

double delta_of_wyzn(double rho12, double rho13, double rho23) {
  const double d = rho13 - rho12 * rho23;
  return (1.0 - rho12 * rho12) * (1.0 - rho23 * rho23) - d * d;
}

double delta_of_det(double rho12, double rho13, double rho23) {
  return CorrelationTriple{rho12, rho13, rho23}.matrix().determinant();
}

Eigen::Matrix3d CorrelationTriple::matrix() const {
  Eigen::Matrix3d m;
  m << 1.0, rho12, rho13, rho12, 1.0, rho23, rho13, rho23, 1.0;
  return m;
}

void require_feasible(const CorrelationTriple& c) {
  check_rho(c.rho12, "rho12");
  check_rho(c.rho13, "rho13");
  check_rho(c.rho23, "rho23");
  const double d = c.delta();
  if (d < 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "correlation matrix is not positive semidefinite, delta = " << d;
    throw InfeasibleCorrelation(os.str(), d);
  }
}

double gaussian3d_density(double x1, double x2, double x3,
                          const CorrelationTriple& corr) {
  const Eigen::Matrix3d m = corr.matrix();
  const Eigen::LLT<Eigen::Matrix3d> llt(m);
  if (llt.info() != Eigen::Success) {
    throw DomainError("correlation matrix is singular or indefinite");
  }
  const Eigen::Vector3d x(x1, x2, x3);
  const double quad = x.dot(llt.solve(x));
  const double logdet =
      2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  return std::exp(-0.5 * quad - 0.5 * logdet -
                  1.5 * std::log(2.0 * std::numbers::pi));
}

// ---------------------------------------------------------------------------

TruncationReport gamma_mk(int m, int k, double x, double y, double rho,
                          const QContext& ctx) {
  if (m < 0 || k < 0) throw DomainError("m and k must be nonnegative");
  check_rho(rho, "rho");
  check_point(x, ctx, "x");
  check_point(y, ctx, "y");
  const double q = ctx.q();
  LogQFactorial lf(q);
  NormalizedHermite hx(x, q), hy(y, q);
  HermiteMajorant mx(x, ctx), my(y, ctx);
  auto term = [&](int i) {
    SeriesTerm t;
    const double w = std::exp(0.5 * (lf(i + m) + lf(i + k)) - lf(i));
    const double pw = std::pow(rho, i);
    t.value = pw * w * hx(i + m) * hy(i + k);
    t.majorant = std::abs(pw) * w * mx(i + m) * my(i + k);
    return t;
  };
  return sum_series(term, ctx, "gamma_mk");
}

double q_mk_closed(int m, int k, double x, double y, double rho,
                   const QContext& ctx) {
  if (m < 0 || k < 0) throw DomainError("m and k must be nonnegative");
  check_rho(rho, "rho");
  return rec::q_mk(m, k, x, y, rho, ctx.q());
}

double c_n(int n, double x, double y, double rho1, double rho2, double rho3,
           const QContext& ctx, CnForm form) {
  if (n < 0) throw DomainError("n must be nonnegative");
  check_rho(rho3, "rho3");
  const double q = ctx.q();
  if (form == CnForm::Connection) {
    return rec::c_n_connection(n, x, y, rho1, rho2, rho3, q);
  }
  return rec::c_n_hermite(n, x, y, rho1, rho2, rho3, q);
}

TruncationReport poisson_mehler(double x, double y, double rho,
                                const QContext& ctx) {
  return gamma_mk(0, 0, x, y, rho, ctx);
}

double mehler_closed_form(double x, double y, double rho) {
  const double r2 = rho * rho;
  return std::exp(-(r2 * (x * x + y * y) - 2.0 * rho * x * y) /
                  (2.0 * (1.0 - r2))) /
         std::sqrt(1.0 - r2);
}

const char* f3d_form_name(F3dForm form) {
  switch (form) {
    case F3dForm::Direct: return "direct";
    case F3dForm::HC: return "hc";
    case F3dForm::ASC: return "asc";
  }
  return "unknown";
}

std::optional<F3dForm> parse_f3d_form(const std::string& name) {
  for (F3dForm f : {F3dForm::Direct, F3dForm::HC, F3dForm::ASC}) {
    if (name == f3d_form_name(f)) return f;
  }
  return std::nullopt;
}

TruncationReport f3d_asc_series(double x1, double x2, double x3,
                                const CorrelationTriple& corr,
                                const QContext& ctx) {
  require_feasible(corr);
  if (off_support(x1, x2, x3, ctx)) return {};
  const TruncationReport s =
      centred_at_x3(x1, x2, x3, corr.rho12, corr.rho13, corr.rho23, ctx);
  const TruncationReport a = density_fcn_report(x1, {x3, corr.rho13}, ctx);
  const TruncationReport b = density_fcn_report(x3, {x2, corr.rho23}, ctx);
  const TruncationReport f = density_fn_report(x2, ctx);
  return scale(a.value * b.value * f.value,
               rel_tail(a) + rel_tail(b) + rel_tail(f), s);
}

TruncationReport f3d(double x1, double x2, double x3,
                     const CorrelationTriple& corr, const QContext& ctx,
                     F3dForm form) {
  require_feasible(corr);
  if (ctx.regime() == Regime::One) {
    TruncationReport r;
    r.value = gaussian3d_density(x1, x2, x3, corr);
    return r;
  }
  if (off_support(x1, x2, x3, ctx)) return {};
  switch (form) {
    case F3dForm::Direct: return f3d_direct(x1, x2, x3, corr, ctx);
    case F3dForm::HC: return f3d_hc(x1, x2, x3, corr, ctx);
    case F3dForm::ASC: break;
  }
  return f3d_asc_series(x1, x2, x3, corr, ctx);
}

TruncationReport aw_expansion(double x3, double x1, double rho13, double x2,
                              double rho23, const QContext& ctx,
                              std::optional<int> n_terms) {
  check_rho(rho13, "rho13");
  check_rho(rho23, "rho23");
  check_point(x1, ctx, "x1");
  check_point(x2, ctx, "x2");
  if (!support(ctx).contains(x3)) return {};
  QContext run = ctx;
  if (n_terms) {
    if (*n_terms < 1) throw DomainError("n_terms must be positive");
    run = ctx.with_max_terms(*n_terms).with_series_tol(1e-300).with_allow_partial(
        true);
  }
  const double q = ctx.q();
  const double a = rho13 * rho13 * rho23 * rho23;
  auto ratio = [=](int s) { return rho13 / (1.0 - a * ipow(q, s - 1)); };
  const TruncationReport s = asc_pair_series(
      {x1, rho13 * rho23, x3, rho23, x2}, ratio, run, "Askey-Wilson expansion");
  const TruncationReport f = density_fcn_report(x3, {x2, rho23}, ctx);
  return scale(f.value, rel_tail(f), s);
}

KernelSides kernel_recentring(double x1, double x2, double x3,
                              const CorrelationTriple& corr,
                              const QContext& ctx) {
  require_feasible(corr);
  check_point(x1, ctx, "x1");
  check_point(x2, ctx, "x2");
  check_point(x3, ctx, "x3");
  const TruncationReport s3 =
      centred_at_x3(x1, x2, x3, corr.rho12, corr.rho13, corr.rho23, ctx);
  const TruncationReport s2 =
      centred_at_x2(x1, x2, x3, corr.rho12, corr.rho13, corr.rho23, ctx);
  const TruncationReport f13 = density_fcn_report(x1, {x3, corr.rho13}, ctx);
  const TruncationReport f12 = density_fcn_report(x1, {x2, corr.rho12}, ctx);
  return {scale(f13.value, rel_tail(f13), s3),
          scale(f12.value, rel_tail(f12), s2)};
}

KernelSides qk_kernel(int k, double x1, double x2, double x3, double rho13,
                      double rho23, const QContext& ctx) {
  if (k < 0) throw DomainError("k must be nonnegative");
  const double rho12 = ipow(ctx.q(), k) * (rho13 * rho23);
  require_feasible({rho12, rho13, rho23});
  check_point(x1, ctx, "x1");
  check_point(x2, ctx, "x2");
  check_point(x3, ctx, "x3");
  const TruncationReport s3 =
      centred_at_x3(x1, x2, x3, rho12, rho13, rho23, ctx);
  const TruncationReport s2 =
      centred_at_x2(x1, x2, x3, rho12, rho13, rho23, ctx);
  const TruncationReport num = density_fcn_report(x1, {x3, rho13}, ctx);
  const TruncationReport den = density_fcn_report(x1, {x2, rho12}, ctx);
  if (!(den.value >= 1e-300)) {
    throw DivisionByNearZero("f_CN(x1|x2, q^k rho13 rho23) is below 1e-300");
  }
  return {scale(num.value / den.value, rel_tail(num) + rel_tail(den), s3),
          s2};
}

KernelSides kernel_rho12_zero(double x1, double x2, double x3, double rho13,
                              double rho23, const QContext& ctx) {
  require_feasible({0.0, rho13, rho23});
  check_point(x1, ctx, "x1");
  check_point(x2, ctx, "x2");
  check_point(x3, ctx, "x3");
  const TruncationReport s3 = centred_at_x3(x1, x2, x3, 0.0, rho13, rho23, ctx);
  const TruncationReport s2 = centred_at_x2(x1, x2, x3, 0.0, rho13, rho23, ctx);
  const TruncationReport fn = density_fn_report(x1, ctx);
  const TruncationReport fc = density_fcn_report(x1, {x3, rho13}, ctx);
  if (!(fc.value >= 1e-300)) {
    throw DivisionByNearZero("f_CN(x1|x3, rho13) is below 1e-300");
  }
  return {s3, scale(fn.value / fc.value, rel_tail(fn) + rel_tail(fc), s2)};
}

}  // namespace qks
