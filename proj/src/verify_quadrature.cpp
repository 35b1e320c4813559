#include <algorithm>
#include <array>
#include <vector>

#include "qks/densities.hpp"
#include "qks/kernels.hpp"
#include "qks/polyfam.hpp"
#include "verify_internal.hpp"

namespace qks {

namespace {

using detail::fmt;
using detail::Tally;

const std::string kRerun = detail::rerun_command("quadrature");

std::string qtag(double q) { return "q=" + fmt(q); }

// Values of a polynomial table at every node of a mapped rule.
std::vector<std::vector<double>> hermite_at_nodes(const MappedRule& mr, int n,
                                                  double q) {
  std::vector<std::vector<double>> out;
  out.reserve(mr.x.size());
  for (double x : mr.x) out.push_back(rec::hermite_table(n, x, q));
  return out;
}

const std::array<CorrelationTriple, 2> kDensitySets{
    CorrelationTriple{0.2, 0.5, 0.4}, CorrelationTriple{0.35, 0.5, 0.4}};

std::string corr_tag(const CorrelationTriple& c) {
  return "rho=(" + fmt(c.rho12) + "," + fmt(c.rho13) + "," + fmt(c.rho23) +
         ")";
}

}  // namespace

std::vector<IdentityReport> run_quadrature_suite(const SuiteConfig& config) {
  const int N = config.quadrature_degree;
  const QuadratureRule rule(config.quadrature_nodes);
  std::vector<IdentityReport> out;

  {
    Tally t("hermite.orthogonality",
            CheckMode::Quadrature,
            "int H_n H_m f_N dx = [n]! if n = m, else 0", kRerun);
    for (double q : config.quadrature_qs) {
      try {
        const QContext c(q);
        const MappedRule mr = mapped_rule(rule, c);
        const auto h = hermite_at_nodes(mr, N, q);
        std::vector<double> f(mr.x.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
          f[i] = mr.w[i] * density_fn(mr.x[i], c);
        }
        for (int n = 0; n <= N; ++n) {
          for (int m = 0; m <= N; ++m) {
            double s = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) {
              s += f[i] * h[i][n] * h[i][m];
            }
            const double expect = n == m ? q_factorial(n, q) : 0.0;
            t.close(s, expect, 1e-8, [&] {
              return qtag(q) + " n=" + std::to_string(n) +
                     " m=" + std::to_string(m);
            });
          }
        }
      } catch (const std::exception& e) {
        t.error(e, qtag(q));
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("asc.orthogonality", CheckMode::Quadrature,
            "int P_n P_m f_CN(x|y,rho) dx = (rho^2)_n [n]! if n = m, else 0",
            kRerun);
    for (double q : config.quadrature_qs) {
      for (double rho : {0.3, 0.7}) {
        for (double y : {0.0, 1.0}) {
          try {
            const QContext c(q);
            const MappedRule mr = mapped_rule(rule, c);
            std::vector<std::vector<double>> p;
            std::vector<double> f;
            for (std::size_t i = 0; i < mr.x.size(); ++i) {
              p.push_back(rec::asc_table(N, mr.x[i], y, rho, q));
              f.push_back(mr.w[i] * density_fcn(mr.x[i], {y, rho}, c));
            }
            for (int n = 0; n <= N; ++n) {
              for (int m = 0; m <= N; ++m) {
                double s = 0.0;
                for (std::size_t i = 0; i < f.size(); ++i) {
                  s += f[i] * p[i][n] * p[i][m];
                }
                const double expect =
                    n == m ? q_pochhammer(rho * rho, n, q) * q_factorial(n, q)
                           : 0.0;
                t.close(s, expect, 1e-8, [&] {
                  return qtag(q) + " rho=" + fmt(rho) + " y=" + fmt(y) +
                         " n=" + std::to_string(n) + " m=" + std::to_string(m);
                });
              }
            }
          } catch (const std::exception& e) {
            t.error(e, qtag(q));
          }
        }
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("hermite.conditional_projection", CheckMode::Quadrature,
            "int H_n(x) f_CN(x|y,rho) dx = rho^n H_n(y)", kRerun);
    for (double q : config.quadrature_qs) {
      for (double rho : {0.3, 0.7, -0.5}) {
        for (double y : {0.0, 1.0}) {
          try {
            const QContext c(q);
            const MappedRule mr = mapped_rule(rule, c);
            const auto h = hermite_at_nodes(mr, N, q);
            const auto hy = rec::hermite_table(N, y, q);
            for (int n = 0; n <= N; ++n) {
              double s = 0.0;
              for (std::size_t i = 0; i < mr.x.size(); ++i) {
                s += mr.w[i] * h[i][n] * density_fcn(mr.x[i], {y, rho}, c);
              }
              t.close(s, std::pow(rho, n) * hy[n], 1e-8, [&] {
                return qtag(q) + " rho=" + fmt(rho) + " y=" + fmt(y) +
                       " n=" + std::to_string(n);
              });
            }
          } catch (const std::exception& e) {
            t.error(e, qtag(q));
          }
        }
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("conditional.chapman_kolmogorov", CheckMode::Quadrature,
            "int f_CN(x|y,r1) f_CN(y|z,r2) dy = f_CN(x|z,r1 r2)", kRerun);
    const double frac[] = {-0.9, -0.45, 0.0, 0.45, 0.9};
    for (double q : config.quadrature_qs) {
      for (auto [r1, r2] : {std::pair{0.6, 0.5}, std::pair{-0.4, 0.7}}) {
        try {
          const QContext c(q);
          const MappedRule mr = mapped_rule(rule, c);
          const double a = 0.9 * support_half_width(c);
          for (double fx : frac) {
            for (double fz : frac) {
              const double x = fx * a, z = fz * a;
              const double s = integrate(
                  [&](double y) {
                    return density_fcn(x, {y, r1}, c) *
                           density_fcn(y, {z, r2}, c);
                  },
                  mr);
              t.close(s, density_fcn(x, {z, r1 * r2}, c), 1e-8, [&] {
                return qtag(q) + " r1=" + fmt(r1) + " r2=" + fmt(r2) +
                       " x=" + fmt(x) + " z=" + fmt(z);
              });
            }
          }
        } catch (const std::exception& e) {
          t.error(e, qtag(q));
        }
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("conditional.ratio_bound", CheckMode::Quadrature,
            "0 < f_CN(x|y,rho)/f_N(x) <= (rho^2)_inf/(rho)_inf^4", kRerun);
    for (double q : config.quadrature_qs) {
      for (double rho : {0.3, 0.7}) {
        for (double y : {0.0, 1.0}) {
          try {
            const QContext c(q);
            const double a = support_half_width(c);
            const double bound = q_pochhammer_inf(rho * rho, c).value /
                                 std::pow(q_pochhammer_inf(rho, c).value, 4);
            for (int i = 0; i < 200; ++i) {
              const double x = -a + 2.0 * a * (i + 0.5) / 200.0;
              const double ratio =
                  density_fcn(x, {y, rho}, c) / density_fn(x, c);
              const double excess = std::max(0.0, ratio - bound);
              t.check(ratio > 0.0 && ratio <= bound * (1.0 + 1e-12), excess,
                      [&] {
                        return qtag(q) + " rho=" + fmt(rho) + " y=" + fmt(y) +
                               " x=" + fmt(x) + " ratio=" + fmt(ratio) +
                               " bound=" + fmt(bound);
                      });
            }
          } catch (const std::exception& e) {
            t.error(e, qtag(q));
          }
        }
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("densities.normalization", CheckMode::Quadrature,
            "int f_N dx = 1 and int f_CN(x|y,rho) dx = 1", kRerun);
    for (double q : config.quadrature_qs) {
      try {
        const QContext c(q);
        const MappedRule mr = mapped_rule(rule, c);
        t.close(integrate([&](double x) { return density_fn(x, c); }, mr), 1.0,
                1e-10, [&] { return qtag(q) + " f_N"; });
        for (double rho : {0.3, -0.3, 0.7, -0.7}) {
          for (double y : {0.0, 1.0}) {
            t.close(integrate(
                        [&](double x) { return density_fcn(x, {y, rho}, c); },
                        mr),
                    1.0, 1e-9, [&] {
                      return qtag(q) + " f_CN rho=" + fmt(rho) + " y=" + fmt(y);
                    });
          }
        }
      } catch (const std::exception& e) {
        t.error(e, qtag(q));
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("askey_wilson.normalization", CheckMode::Quadrature,
            "int f_AW(x3|x1,r13,x2,r23) dx3 = 1", kRerun);
    Tally sym("askey_wilson.symmetry", CheckMode::SeriesAgreement,
              "f_AW(x3|x1,r13,x2,r23) = f_AW(x3|x2,r23,x1,r13)", kRerun);
    for (double q : {0.3, 0.7}) {
      const QContext c(q);
      const MappedRule mr = mapped_rule(rule, c);
      for (double r13 : {0.4, 0.6}) {
        for (double r23 : {0.4, 0.6}) {
          for (double x1 : {0.0, 0.9}) {
            for (double x2 : {0.0, 0.9}) {
              auto tag = [&] {
                return qtag(q) + " r13=" + fmt(r13) + " r23=" + fmt(r23) +
                       " x1=" + fmt(x1) + " x2=" + fmt(x2);
              };
              try {
                const double s = integrate(
                    [&](double x3) {
                      return density_faw(x3, x1, r13, x2, r23, c);
                    },
                    mr);
                t.close(s, 1.0, 1e-8, tag);
                for (double x3 : {-1.1, 0.2, 1.7}) {
                  const double v = density_faw(x3, x1, r13, x2, r23, c);
                  const double w = density_faw(x3, x2, r23, x1, r13, c);
                  sym.check(std::abs(v - w) <= 1e-10 * std::abs(v),
                            std::abs(v - w),
                            [&] { return tag() + " x3=" + fmt(x3); });
                }
              } catch (const std::exception& e) {
                t.error(e, tag());
              }
            }
          }
        }
      }
    }
    out.push_back(t.finish());
    out.push_back(sym.finish());
  }

  {
    Tally t("askey_wilson.moment_identity", CheckMode::Quadrature,
            "int (P_n(x3|x2,r23) - r13^n (r23^2)_n/(r13^2 r23^2)_n "
            "P_n(x1|x2,r13 r23)) f_AW dx3 = 0",
            kRerun);
    double printed_err = 0.0;
    const double r13 = 0.5, r23 = 0.4;
    for (double q : config.quadrature_qs) {
      try {
        const QContext c(q);
        const MappedRule mr = mapped_rule(rule, c);
        const double a = support_half_width(c);
        for (double x1 : {-0.45 * a, 0.3 * a}) {
          for (double x2 : {-0.45 * a, 0.3 * a}) {
            std::vector<double> w(mr.x.size());
            for (std::size_t i = 0; i < w.size(); ++i) {
              w[i] = mr.w[i] * density_faw(mr.x[i], x1, r13, x2, r23, c);
            }
            const auto p1 = rec::asc_table(5, x1, x2, r13 * r23, q);
            for (int n = 0; n <= 5; ++n) {
              double m3 = 0.0;
              for (std::size_t i = 0; i < w.size(); ++i) {
                m3 += w[i] * rec::asc_table(n, mr.x[i], x2, r23, q)[n];
              }
              const double denom = q_pochhammer(r13 * r13 * r23 * r23, n, q);
              const double derived = std::pow(r13, n) *
                                     q_pochhammer(r23 * r23, n, q) / denom *
                                     p1[n];
              const double printed =
                  std::pow(r13, n) * q_pochhammer(r23, n, q) / denom * p1[n];
              printed_err = std::max(printed_err, std::abs(m3 - printed));
              t.close(m3 - derived, 0.0, 1e-7, [&] {
                return qtag(q) + " x1=" + fmt(x1) + " x2=" + fmt(x2) +
                       " n=" + std::to_string(n);
              });
            }
          }
        }
      } catch (const std::exception& e) {
        t.error(e, qtag(q));
      }
    }
    t.note("coefficient (rho23^2)_n; the variant with (rho23)_n misses by up "
           "to " +
           fmt(printed_err));
    out.push_back(t.finish());
  }

  {
    // Integrals of f_3D on a product rule; values are computed once per q.
    const QuadratureRule cube(config.cube_nodes);
    Tally norm("f3d.normalization", CheckMode::Quadrature,
               "int f_3D dx1 dx2 dx3 = 1", kRerun);
    Tally mom("f3d.hermite_moments", CheckMode::Quadrature,
              "int H_n(x_a) H_m(x_b) f_3D = rho_ab^n [n]! if n = m, else 0 "
              "(n, m <= 2)",
              kRerun);
    for (double q : config.quadrature_qs) {
      for (const CorrelationTriple& corr : kDensitySets) {
        auto tag = [&] { return qtag(q) + " " + corr_tag(corr); };
        try {
          const QContext c(q);
          const MappedRule mr = mapped_rule(cube, c);
          const std::size_t n = mr.x.size();
          std::vector<double> vals(n * n * n);
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
              for (std::size_t k = 0; k < n; ++k) {
                vals[(i * n + j) * n + k] =
                    mr.w[i] * mr.w[j] * mr.w[k] *
                    f3d(mr.x[i], mr.x[j], mr.x[k], corr, c).value;
              }
            }
          }
          double total = 0.0;
          for (double v : vals) total += v;
          norm.close(total, 1.0, 1e-4, tag);

          const auto h = hermite_at_nodes(mr, 2, q);
          const std::array<std::pair<int, int>, 3> pairs{
              std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}};
          const double rho_of[3] = {corr.rho12, corr.rho13, corr.rho23};
          for (int pi = 0; pi < 3; ++pi) {
            const auto [ia, ib] = pairs[pi];
            for (int dn = 0; dn <= 2; ++dn) {
              for (int dm = 0; dm <= 2; ++dm) {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                  for (std::size_t j = 0; j < n; ++j) {
                    for (std::size_t k = 0; k < n; ++k) {
                      const std::size_t idx[3] = {i, j, k};
                      s += vals[(i * n + j) * n + k] * h[idx[ia]][dn] *
                           h[idx[ib]][dm];
                    }
                  }
                }
                const double expect =
                    dn == dm ? std::pow(rho_of[pi], dn) * q_factorial(dn, q)
                             : 0.0;
                mom.close(s, expect, 1e-4, [&] {
                  return tag() + " pair=(" + std::to_string(ia + 1) + "," +
                         std::to_string(ib + 1) + ") n=" + std::to_string(dn) +
                         " m=" + std::to_string(dm);
                });
              }
            }
          }
        } catch (const std::exception& e) {
          norm.error(e, tag());
        }
      }
    }
    out.push_back(norm.finish());
    out.push_back(mom.finish());
  }

  {
    Tally t("f3d.pair_marginal", CheckMode::Quadrature,
            "int f_3D dx3 = f_CN(x1|x2,rho12) f_N(x2)", kRerun);
    const double frac[] = {-0.9, -0.45, 0.0, 0.45, 0.9};
    for (double q : config.quadrature_qs) {
      for (const CorrelationTriple& corr : kDensitySets) {
        try {
          const QContext c(q);
          const MappedRule mr = mapped_rule(rule, c);
          const double a = 0.9 * support_half_width(c);
          for (double f1 : frac) {
            for (double f2 : frac) {
              const double x1 = f1 * a, x2 = f2 * a;
              const double s = integrate(
                  [&](double x3) { return f3d(x1, x2, x3, corr, c).value; },
                  mr);
              const double expect =
                  density_fcn(x1, {x2, corr.rho12}, c) * density_fn(x2, c);
              t.close(s, expect, 1e-8, [&] {
                return qtag(q) + " " + corr_tag(corr) + " x1=" + fmt(x1) +
                       " x2=" + fmt(x2);
              });
            }
          }
        } catch (const std::exception& e) {
          t.error(e, qtag(q));
        }
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("f3d.single_marginal", CheckMode::Quadrature,
            "int f_3D dx1 dx2 = f_N(x3)", kRerun);
    const QuadratureRule plane(128);
    for (double q : config.quadrature_qs) {
      for (const CorrelationTriple& corr : kDensitySets) {
        try {
          const QContext c(q);
          const MappedRule mr = mapped_rule(plane, c);
          const double a = 0.9 * support_half_width(c);
          for (double f3 : {-0.9, 0.0, 0.45}) {
            const double x3 = f3 * a;
            double s = 0.0;
            for (std::size_t i = 0; i < mr.x.size(); ++i) {
              for (std::size_t j = 0; j < mr.x.size(); ++j) {
                s += mr.w[i] * mr.w[j] *
                     f3d(mr.x[i], mr.x[j], x3, corr, c).value;
              }
            }
            t.close(s, density_fn(x3, c), 1e-8, [&] {
              return qtag(q) + " " + corr_tag(corr) + " x3=" + fmt(x3);
            });
          }
        } catch (const std::exception& e) {
          t.error(e, qtag(q));
        }
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("f3d.independent_third", CheckMode::SeriesAgreement,
            "rho13 = rho23 = 0: f_3D = f_CN(x1|x2,rho12) f_N(x2) f_N(x3)",
            kRerun);
    for (double q : config.quadrature_qs) {
      try {
        const QContext c(q);
        const double a = 0.9 * 0.9 * support_half_width(c);
        const CorrelationTriple corr{0.2, 0.0, 0.0};
        for (double f1 : {-1.0, 0.0, 1.0}) {
          for (double f2 : {-1.0, 0.0, 1.0}) {
            for (double f3 : {-1.0, 0.0, 1.0}) {
              const double x1 = f1 * a, x2 = f2 * a, x3 = f3 * a;
              const double expect = density_fcn(x1, {x2, 0.2}, c) *
                                    density_fn(x2, c) * density_fn(x3, c);
              for (F3dForm form : {F3dForm::Direct, F3dForm::HC, F3dForm::ASC}) {
                t.close(f3d(x1, x2, x3, corr, c, form).value, expect, 1e-10,
                        [&] {
                          return qtag(q) + " form=" + f3d_form_name(form) +
                                 " x=(" + fmt(x1) + "," + fmt(x2) + "," +
                                 fmt(x3) + ")";
                        });
              }
            }
          }
        }
      } catch (const std::exception& e) {
        t.error(e, qtag(q));
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("hermite.sup_bound", CheckMode::Quadrature,
            "sup_{S(q)} |H_n| <= W_n(1|q) (1-q)^{-n/2} (error: relative excess)",
            kRerun);
    for (double q : config.quadrature_qs) {
      try {
        const QContext c(q);
        const double a = support_half_width(c);
        for (int n = 0; n <= 12; ++n) {
          const double bound = hermite_sup_bound(n, c);
          double worst = 0.0;
          for (int i = 0; i < 1000; ++i) {
            const double x = -a + 2.0 * a * i / 999.0;
            worst = std::max(worst, std::abs(hermite_q(n, x, c)));
          }
          // Attained at the support edge, so only rounding separates the two.
          t.check(worst <= bound * (1.0 + 1e-12),
                  std::max(0.0, worst - bound) / bound,
                  [&] {
                    return qtag(q) + " n=" + std::to_string(n) +
                           " sup=" + fmt(worst) + " bound=" + fmt(bound);
                  });
        }
      } catch (const std::exception& e) {
        t.error(e, qtag(q));
      }
    }
    out.push_back(t.finish());
  }

  {
    Tally t("rogers_szego.generating_functions", CheckMode::SeriesAgreement,
            "sum W_i(1) t^i/(q)_i = 1/(t)_inf^2 and "
            "sum W_i(1)^2 t^i/(q)_i = (t^2)_inf/(t)_inf^4",
            kRerun);
    for (double q : config.quadrature_qs) {
      for (double tv : {0.1, 0.3, 0.5}) {
        try {
          const QContext c(q);
          double s1 = 0.0, s2 = 0.0;
          double wm1 = 0.0, w = 1.0;  // W_{i-1}(1), W_i(1)
          double poch = 1.0, tp = 1.0;
          for (int i = 0; i < 4000; ++i) {
            const double term = w * tp / poch;
            s1 += term;
            s2 += w * term;
            if (std::abs(w * term) < 1e-18 && std::abs(term) < 1e-18) break;
            const double next = 2.0 * w - (1.0 - ipow(q, i)) * wm1;
            wm1 = w;
            w = next;
            poch *= 1.0 - ipow(q, i + 1);
            tp *= tv;
          }
          const double ti = q_pochhammer_inf(tv, c).value;
          const double t2i = q_pochhammer_inf(tv * tv, c).value;
          auto tag = [&] { return qtag(q) + " t=" + fmt(tv); };
          t.close(s1, 1.0 / (ti * ti), 1e-9, tag);
          t.close(s2, t2i / std::pow(ti, 4), 1e-9, tag);
        } catch (const std::exception& e) {
          t.error(e, qtag(q));
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
