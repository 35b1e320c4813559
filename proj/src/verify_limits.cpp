#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qks/densities.hpp"
#include "qks/kernels.hpp"
#include "qks/negativity.hpp"
#include "verify_internal.hpp"

namespace qks {

namespace {

using detail::fmt;
using detail::Tally;

std::string corr_tag(const CorrelationTriple& c) {
  return "rho=(" + fmt(c.rho12) + "," + fmt(c.rho13) + "," + fmt(c.rho23) +
         ")";
}

std::string point_tag(double x1, double x2, double x3) {
  return "x=(" + fmt(x1) + "," + fmt(x2) + "," + fmt(x3) + ")";
}

const std::array<CorrelationTriple, 3> kClassicalSets{
    CorrelationTriple{0.2, 0.5, 0.4}, CorrelationTriple{0.35, 0.5, 0.4},
    CorrelationTriple{-0.3, 0.6, 0.45}};

}  // namespace

std::vector<IdentityReport> run_negativity_suite(const SuiteConfig& config) {
  const std::string rerun = detail::rerun_command("negativity");
  const double q = config.negativity_q;
  const double rho = std::sqrt(0.6);
  const std::string qt = "q=" + fmt(q);
  std::vector<IdentityReport> out;

  {
    Tally t("negativity.witness_found", CheckMode::SeriesAgreement,
            "rho12 = q rho13 rho23, rho13^2 = rho23^2 = 0.6: f_3D < 0 on a "
            "set of positive measure",
            rerun + " (or qks negativity -q " + fmt(q) + " --rho13 " +
                fmt(rho) + " --rho23 " + fmt(rho) + ")");
    try {
      const QContext c(q);
      const auto certs =
          search_negative(q, rho, rho, config.negativity_grid, c);
      t.check(!certs.empty(), certs.empty() ? 1.0 : 0.0,
              [&] { return qt + " no certificate on the grid"; });
      for (const auto& cert : certs) {
        const bool ok = cert.sign_factor_value < 0.0 && cert.f3d_value < 0.0 &&
                        std::abs(cert.f3d_value) > 3.0 * cert.f3d_tail &&
                        cert.neighborhood_radius > 0.0;
        t.check(ok, ok ? 0.0 : 1.0, [&] {
          return qt + " " +
                 point_tag(cert.point[0], cert.point[1], cert.point[2]) +
                 " sign_factor=" + fmt(cert.sign_factor_value) +
                 " f3d=" + fmt(cert.f3d_value) + " tail=" + fmt(cert.f3d_tail) +
                 " radius=" + fmt(cert.neighborhood_radius);
        });
      }
      // The corrected construction: x1 = x2 near the same end of the support.
      const double edge = 0.99 * support_half_width(c);
      const bool near = std::any_of(certs.begin(), certs.end(), [&](auto& z) {
        return std::abs(z.point[0] - edge) < 1e-9 &&
               std::abs(z.point[1] - edge) < 1e-9 && std::abs(z.point[2]) < 1e-9;
      });
      t.check(near, near ? 0.0 : 1.0, [&] {
        return qt + " no certificate at " + point_tag(edge, edge, 0.0);
      });
    } catch (const std::exception& e) {
      t.error(e, qt);
    }
    out.push_back(t.finish());
  }

  {
    Tally t("negativity.sign_consistency", CheckMode::SeriesAgreement,
            "rho12 = q rho13 rho23: sign of f_3D (ASC series) follows the "
            "closed-form sign factor where |factor| > 0.5",
            rerun);
    try {
      const QContext c(q);
      const CorrelationTriple corr{q * rho * rho, rho, rho};
      const auto axis = scan_axis(config.negativity_grid, c);
      for (double x1 : axis) {
        for (double x2 : axis) {
          for (double x3 : axis) {
            const double sf = sign_factor(x1, x2, x3, rho, rho, c);
            if (std::abs(sf) <= 0.5) continue;
            const auto f = f3d(x1, x2, x3, corr, c, F3dForm::ASC);
            const bool ok = sf < 0.0 ? f.value < 0.0 &&
                                           std::abs(f.value) > 3.0 * f.tail_estimate
                                     : f.value > 0.0;
            t.check(ok, ok ? 0.0 : std::abs(f.value), [&] {
              return qt + " " + point_tag(x1, x2, x3) + " sign_factor=" +
                     fmt(sf) + " f3d=" + fmt(f.value) +
                     " tail=" + fmt(f.tail_estimate);
            });
          }
        }
      }
    } catch (const std::exception& e) {
      t.error(e, qt);
    }
    out.push_back(t.finish());
  }

  {
    Tally t("negativity.no_witness_small_correlation",
            CheckMode::SeriesAgreement,
            "rho13 = rho23 = 0.1 or rho13 = 0: no negative point on the grid",
            rerun);
    for (auto [r13, r23] : {std::pair{0.1, 0.1}, std::pair{0.0, 0.7}}) {
      try {
        const QContext c(q);
        const auto certs =
            search_negative(q, r13, r23, config.negativity_grid, c);
        t.check(certs.empty(), static_cast<double>(certs.size()), [&] {
          return qt + " rho13=" + fmt(r13) + " rho23=" + fmt(r23) + " " +
                 std::to_string(certs.size()) + " certificates";
        });
      } catch (const std::exception& e) {
        t.error(e, qt);
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("negativity.sign_factor_value", CheckMode::SeriesAgreement,
            "sign factor at q = 0.5, rho13 = rho23 = sqrt 0.6, "
            "x = (2 sqrt 2, 2 sqrt 2, 0) is -14; delta there is 0.07",
            rerun);
    const QContext c(0.5);
    const double x = 2.0 * std::sqrt(2.0);
    t.close(sign_factor(x, x, 0.0, rho, rho, c), -14.0, 1e-12,
            [] { return std::string("q=0.5 sample point"); });
    t.close(sign_factor(0.0, 0.0, 0.0, rho, rho, c), 1.0, 1e-15,
            [] { return std::string("origin"); });
    t.close(delta_of(0.3, rho, rho), 0.07, 1e-14,
            [] { return std::string("delta(0.3, sqrt 0.6, sqrt 0.6)"); });
    out.push_back(t.finish());
  }

  {
    Tally t("correlation.delta_forms", CheckMode::SeriesAgreement,
            "1 + 2 r12 r13 r23 - r12^2 - r13^2 - r23^2 = (1 - r12^2)(1 - r23^2) "
            "- (r13 - r12 r23)^2 = det of the correlation matrix",
            rerun);
    std::mt19937_64 gen(20240611);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const double a = u(gen), b = u(gen), d = u(gen);
      const double v = delta_of(a, b, d);
      auto tag = [&] { return "seed 20240611 triple " + std::to_string(i); };
      t.close(v, delta_of_wyzn(a, b, d), 1e-14, tag);
      t.close(v, delta_of_det(a, b, d), 1e-14, tag);
    }
    out.push_back(t.finish());
  }

  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.identity_id < b.identity_id;
  });
  return out;
}

std::vector<IdentityReport> run_classical_suite(const SuiteConfig&) {
  const std::string rerun = detail::rerun_command("classical");
  const QContext one(1.0);
  std::vector<IdentityReport> out;
  const double pts[] = {-1.2, 0.0, 1.2};

  {
    Tally t("classical.gaussian_density", CheckMode::SeriesAgreement,
            "q = 1: f_3D is the N(0, rho) density", rerun);
    for (const CorrelationTriple& corr : kClassicalSets) {
      for (double x1 : pts) {
        for (double x2 : pts) {
          for (double x3 : pts) {
            auto tag = [&] {
              return "q=1 " + corr_tag(corr) + " " + point_tag(x1, x2, x3);
            };
            try {
              const double g = gaussian3d_density(x1, x2, x3, corr);
              t.close(f3d_asc_series(x1, x2, x3, corr, one).value, g, 1e-6,
                      [&] { return tag() + " series"; });
              t.close(f3d(x1, x2, x3, corr, one).value, g, 1e-6,
                      [&] { return tag() + " dispatch"; });
            } catch (const std::exception& e) {
              t.error(e, tag());
            }
          }
        }
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("classical.kernel_exponent", CheckMode::SeriesAgreement,
            "q = 1: sqrt(delta/((1-r13^2)(1-r23^2))) K_3(x) = "
            "exp(-x'(R^-1 - R0^-1)x/2), R0 = R with r12 replaced by r13 r23",
            rerun);
    for (const CorrelationTriple& corr : kClassicalSets) {
      const CorrelationTriple markov{corr.rho13 * corr.rho23, corr.rho13,
                                     corr.rho23};
      const Eigen::Matrix3d diff =
          corr.matrix().inverse() - markov.matrix().inverse();
      const double scale =
          std::sqrt(corr.delta() / ((1.0 - corr.rho13 * corr.rho13) *
                                    (1.0 - corr.rho23 * corr.rho23)));
      for (double x1 : pts) {
        for (double x2 : pts) {
          for (double x3 : pts) {
            auto tag = [&] {
              return "q=1 " + corr_tag(corr) + " " + point_tag(x1, x2, x3);
            };
            try {
              const double pref = density_fcn(x1, {x3, corr.rho13}, one) *
                                  density_fcn(x3, {x2, corr.rho23}, one) *
                                  density_fn(x2, one);
              const double kernel =
                  f3d_asc_series(x1, x2, x3, corr, one).value / pref;
              const Eigen::Vector3d x(x1, x2, x3);
              const double expect = std::exp(-0.5 * x.dot(diff * x));
              t.close(scale * kernel, expect, 1e-6, tag);
            } catch (const std::exception& e) {
              t.error(e, tag());
            }
          }
        }
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("classical.mehler", CheckMode::SeriesAgreement,
            "q = 1: sum_n rho^n/n! He_n(x) He_n(y) = exp(-(r^2(x^2+y^2) - "
            "2 r x y)/(2(1-r^2)))/sqrt(1-r^2)",
            rerun);
    for (double rho : {0.5, -0.3}) {
      for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        for (double y : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
          auto tag = [&] {
            return "q=1 rho=" + fmt(rho) + " x=" + fmt(x) + " y=" + fmt(y);
          };
          try {
            t.close(poisson_mehler(x, y, rho, one).value,
                    mehler_closed_form(x, y, rho), 1e-8, tag);
          } catch (const std::exception& e) {
            t.error(e, tag());
          }
        }
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("classical.hermite_addition", CheckMode::SeriesAgreement,
            "q = 1: C_n(x,y|r1,r2,r3) = s^n He_n(u/s), s^2 = (r1^2 + r2^2 - "
            "2 r1 r2 r3)/(1-r3^2), u = (x(r2 - r1 r3) + y(r1 - r2 r3))/"
            "(1-r3^2)",
            rerun);
    std::mt19937_64 gen(20240612);
    std::uniform_real_distribution<double> ur(-0.9, 0.9), ux(-2.5, 2.5);
    for (int i = 0; i < 50; ++i) {
      const double r1 = ur(gen), r2 = ur(gen), r3 = ur(gen);
      const double x = ux(gen), y = ux(gen);
      const double s2 = (r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * r3) / (1 - r3 * r3);
      const double u = (x * (r2 - r1 * r3) + y * (r1 - r2 * r3)) / (1 - r3 * r3);
      // G_k = s^k He_k(u/s) satisfies G_{k+1} = u G_k - k s^2 G_{k-1}.
      std::vector<double> g{1.0, u};
      for (int k = 1; k < 6; ++k) g.push_back(u * g[k] - k * s2 * g[k - 1]);
      for (int n = 0; n <= 6; ++n) {
        for (CnForm form : {CnForm::Connection, CnForm::Hermite}) {
          auto tag = [&] {
            return "seed 20240612 point " + std::to_string(i) +
                   " n=" + std::to_string(n) + " r=(" + fmt(r1) + "," +
                   fmt(r2) + "," + fmt(r3) + ") x=" + fmt(x) + " y=" + fmt(y) +
                   (form == CnForm::Connection ? " connection" : " hermite");
          };
          try {
            const double v = c_n(n, x, y, r1, r2, r3, one, form);
            t.close(v, g[n], 1e-8 * std::max(1.0, std::abs(g[n])), tag);
          } catch (const std::exception& e) {
            t.error(e, tag());
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
