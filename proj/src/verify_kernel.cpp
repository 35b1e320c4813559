#include <algorithm>
#include <array>
#include <vector>

#include "qks/densities.hpp"
#include "qks/kernels.hpp"
#include "verify_internal.hpp"

namespace qks {

namespace {

using detail::fmt;
using detail::Tally;

const std::string kRerun = detail::rerun_command("kernel");

struct Point3 {
  double x1, x2, x3;
};

// {-0.9, 0, 0.9} * 0.9 a in each coordinate.
std::vector<Point3> grid27(const QContext& c) {
  const double a = 0.9 * 0.9 * support_half_width(c);
  std::vector<Point3> out;
  for (double f1 : {-1.0, 0.0, 1.0}) {
    for (double f2 : {-1.0, 0.0, 1.0}) {
      for (double f3 : {-1.0, 0.0, 1.0}) {
        out.push_back({f1 * a, f2 * a, f3 * a});
      }
    }
  }
  return out;
}

std::string at(const Point3& p) {
  return "x=(" + fmt(p.x1) + "," + fmt(p.x2) + "," + fmt(p.x3) + ")";
}

// Agreement within the combined tails, or within abs_tol when that is larger.
void sides_agree(Tally& t, const TruncationReport& a, const TruncationReport& b,
                 double abs_tol, const std::function<std::string()>& where) {
  const double err = std::abs(a.value - b.value);
  const double tol = std::max(a.tail_estimate + b.tail_estimate, abs_tol);
  t.check(err <= tol, err, [&] {
    return where() + " lhs=" + fmt(a.value) + " (tail " + fmt(a.tail_estimate) +
           ") rhs=" + fmt(b.value) + " (tail " + fmt(b.tail_estimate) + ")";
  });
}

}  // namespace

std::vector<IdentityReport> run_kernel_suite(const SuiteConfig& config) {
  const double q = config.kernel_q;
  const QContext c(q);
  const std::vector<Point3> pts = grid27(c);
  const std::string qt = "q=" + fmt(q);
  std::vector<IdentityReport> out;

  {
    Tally t("f3d.form_agreement", CheckMode::SeriesAgreement,
            "direct, Hermite-connection and ASC expansions of f_3D coincide",
            kRerun);
    for (const CorrelationTriple& corr :
         {CorrelationTriple{0.2, 0.5, 0.4}, CorrelationTriple{0.35, 0.5, 0.4},
          CorrelationTriple{-0.3, 0.6, 0.45}}) {
      const std::string ct = qt + " rho=(" + fmt(corr.rho12) + "," +
                             fmt(corr.rho13) + "," + fmt(corr.rho23) + ") ";
      for (const Point3& p : pts) {
        try {
          const auto d = f3d(p.x1, p.x2, p.x3, corr, c, F3dForm::Direct);
          const auto h = f3d(p.x1, p.x2, p.x3, corr, c, F3dForm::HC);
          const auto s = f3d(p.x1, p.x2, p.x3, corr, c, F3dForm::ASC);
          sides_agree(t, d, s, 0.0, [&] { return ct + at(p) + " direct/asc"; });
          sides_agree(t, h, s, 0.0, [&] { return ct + at(p) + " hc/asc"; });
        } catch (const std::exception& e) {
          t.error(e, ct + at(p));
        }
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("f3d.markov_product", CheckMode::SeriesAgreement,
            "rho12 = rho13 rho23: f_3D = f_CN(x1|x3,rho13) f_CN(x3|x2,rho23) "
            "f_N(x2)",
            kRerun);
    const CorrelationTriple corr{0.2, 0.5, 0.4};
    for (const Point3& p : pts) {
      try {
        const double expect = density_fcn(p.x1, {p.x3, 0.5}, c) *
                              density_fcn(p.x3, {p.x2, 0.4}, c) *
                              density_fn(p.x2, c);
        for (F3dForm form : {F3dForm::Direct, F3dForm::HC, F3dForm::ASC}) {
          const auto v = f3d(p.x1, p.x2, p.x3, corr, c, form);
          t.close(v.value, expect,
                  v.tail_estimate + 1e-12 * std::max(1.0, std::abs(expect)),
                  [&] { return qt + " " + at(p) + " form=" + f3d_form_name(form); });
        }
      } catch (const std::exception& e) {
        t.error(e, qt + " " + at(p));
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("askey_wilson.expansion", CheckMode::SeriesAgreement,
            "f_AW(x3|x1,r13,x2,r23) = f_CN(x3|x2,r23) sum_s r13^s/([s]! "
            "(r13^2 r23^2)_s) P_s(x1|x2,r13 r23) P_s(x3|x2,r23)",
            kRerun);
    for (auto [r13, r23] : {std::pair{0.5, 0.4}, std::pair{0.7, -0.6}}) {
      for (const Point3& p : pts) {
        try {
          const auto s = aw_expansion(p.x3, p.x1, r13, p.x2, r23, c);
          const double d = density_faw(p.x3, p.x1, r13, p.x2, r23, c);
          t.close(s.value, d, 1e-7, [&] {
            return qt + " r13=" + fmt(r13) + " r23=" + fmt(r23) + " " + at(p);
          });
        } catch (const std::exception& e) {
          t.error(e, qt + " " + at(p));
        }
      }
    }
    out.push_back(t.finish());
  }

  const double r13 = 0.5, r23 = 0.4;
  const std::array<const char*, 3> qk_ids{"kernel.ratio_expansion",
                                          "kernel.sign_factor_closed_form",
                                          "kernel.qk_recentring"};
  const std::array<const char*, 3> qk_anchors{
      "rho12 = rho13 rho23: kernel centred at x2 = f_CN(x1|x3,rho13)/"
      "f_CN(x1|x2,rho13 rho23)",
      "rho12 = q rho13 rho23: kernel centred at x2 = f_CN ratio times "
      "1 - (1-q) r13 r23 (x1 - r13 x3)(x2 - r23 x3)/((1-r13^2)(1-r23^2))",
      "rho12 = q^k rho13 rho23, k in {0,1,2}: kernel centred at x2 = f_CN "
      "ratio times the finite kernel centred at x3"};
  for (int id = 0; id < 3; ++id) {
    Tally t(qk_ids[id], CheckMode::SeriesAgreement, qk_anchors[id], kRerun);
    const std::vector<int> ks =
        id == 2 ? std::vector<int>{0, 1, 2} : std::vector<int>{id};
    for (int k : ks) {
      for (const Point3& p : pts) {
        try {
          const KernelSides sides = qk_kernel(k, p.x1, p.x2, p.x3, r13, r23, c);
          sides_agree(t, sides.lhs, sides.rhs, 1e-7, [&] {
            return qt + " k=" + std::to_string(k) + " " + at(p);
          });
        } catch (const std::exception& e) {
          t.error(e, qt + " " + at(p));
        }
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("kernel.rho12_zero", CheckMode::SeriesAgreement,
            "rho12 = 0: sum_s (-1)^s q^C(s,2) (r13 r23)^s/([s]!(r13^2)_s "
            "(r23^2)_s) P_s(x1|x3,r13) P_s(x2|x3,r23) = f_N(x1)/f_CN(x1|x3,r13) "
            "sum_k r13^k/([k]!(r23^2)_k) H_k(x1) P_k(x3|x2,r23)",
            kRerun);
    for (const Point3& p : pts) {
      try {
        const KernelSides sides =
            kernel_rho12_zero(p.x1, p.x2, p.x3, 0.6, 0.5, c);
        sides_agree(t, sides.lhs, sides.rhs, 1e-7,
                    [&] { return qt + " r13=0.6 r23=0.5 " + at(p); });
      } catch (const std::exception& e) {
        t.error(e, qt + " " + at(p));
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("kernel.recentring", CheckMode::SeriesAgreement,
            "f_CN(x1|x3,rho13) K_3(x) = f_CN(x1|x2,rho12) K_2(x) for the "
            "kernels centred at x3 and x2",
            kRerun);
    for (const CorrelationTriple& corr :
         {CorrelationTriple{0.2, 0.5, 0.4}, CorrelationTriple{0.35, 0.5, 0.4},
          CorrelationTriple{-0.3, 0.6, 0.45}}) {
      for (const Point3& p : pts) {
        try {
          const KernelSides sides =
              kernel_recentring(p.x1, p.x2, p.x3, corr, c);
          sides_agree(t, sides.lhs, sides.rhs, 1e-7, [&] {
            return qt + " rho=(" + fmt(corr.rho12) + "," + fmt(corr.rho13) +
                   "," + fmt(corr.rho23) + ") " + at(p);
          });
        } catch (const std::exception& e) {
          t.error(e, qt + " " + at(p));
        }
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("gamma.closed_form_ratio", CheckMode::SeriesAgreement,
            "gamma_{m,k}(x,y|rho) / gamma_{0,0}(x,y|rho) = Q_{m,k}(x,y|rho)",
            kRerun);
    const double a = 0.9 * support_half_width(c);
    for (double fx : {-0.8, 0.0, 0.8}) {
      for (double fy : {-0.8, 0.0, 0.8}) {
        const double x = fx * a, y = fy * a;
        for (int m = 0; m <= 4; ++m) {
          for (int k = 0; k <= 4; ++k) {
            try {
              const auto g = gamma_mk(m, k, x, y, 0.5, c);
              const auto g0 = gamma_mk(0, 0, x, y, 0.5, c);
              const double closed = q_mk_closed(m, k, x, y, 0.5, c);
              const double lhs = g.value / g0.value;
              const double tail =
                  (g.tail_estimate + std::abs(lhs) * g0.tail_estimate) /
                  std::abs(g0.value);
              t.close(lhs, closed,
                      tail + 1e-10 * std::max(1.0, std::abs(closed)), [&] {
                        return qt + " rho=0.5 x=" + fmt(x) + " y=" + fmt(y) +
                               " m=" + std::to_string(m) +
                               " k=" + std::to_string(k);
                      });
            } catch (const std::exception& e) {
              t.error(e, qt);
            }
          }
        }
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("poisson_mehler.density_ratio", CheckMode::SeriesAgreement,
            "sum_n rho^n/[n]! H_n(x) H_n(y) = f_CN(x|y,rho)/f_N(x)", kRerun);
    const double a = 0.9 * support_half_width(c);
    for (double rho : {0.5, -0.7}) {
      for (double fx : {-0.9, -0.3, 0.0, 0.6}) {
        for (double fy : {-0.5, 0.2, 0.9}) {
          const double x = fx * a, y = fy * a;
          try {
            const auto s = poisson_mehler(x, y, rho, c);
            const double r = density_fcn(x, {y, rho}, c) / density_fn(x, c);
            t.close(s.value, r,
                    s.tail_estimate + 1e-10 * std::max(1.0, std::abs(r)), [&] {
                      return qt + " rho=" + fmt(rho) + " x=" + fmt(x) +
                             " y=" + fmt(y);
                    });
          } catch (const std::exception& e) {
            t.error(e, qt);
          }
        }
      }
    }
    out.push_back(t.finish());
  }

  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.identity_id < b.identity_id;
  });
  return out;
}

}  // namespace qks
