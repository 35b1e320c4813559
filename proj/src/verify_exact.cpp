#include <algorithm>
#include <array>
#include <vector>

#include "qks/exactpoly.hpp"
#include "qks/kernels.hpp"
#include "qks/polyfam.hpp"
#include "qks/rational.hpp"
#include "verify_internal.hpp"

namespace qks {

namespace {

using detail::Tally;
using Poly = RationalMvPoly;

struct ExactPoint {
  Rational q;
  Rational rho;
  std::array<Rational, 3> corr;  // (r1, r2, r3) for C_n
};

std::vector<ExactPoint> exact_points() {
  const Rational a = make_rational(1, 3), b = make_rational(1, 5),
                 c = make_rational(1, 7);
  return {{make_rational(1, 2), a, {a, b, c}},
          {make_rational(-1, 3), b, {b, c, a}},
          {make_rational(9, 10), c, {c, a, b}}};
}

std::string where(const ExactPoint& p, const std::string& extra) {
  return "q=" + to_string(p.q) + " rho=" + to_string(p.rho) + " " + extra;
}

std::string diff_text(const PolyComparison& cmp) {
  if (cmp.equal) return "";
  return " first differing monomial " + monomial_to_string(*cmp.witness) +
         ": lhs " + to_string(cmp.lhs_coefficient) + " vs rhs " +
         to_string(cmp.rhs_coefficient);
}

const std::string kRerun = detail::rerun_command("exact");

// Runs body(point, tally) for every exact point, turning errors into failures.
template <class Body>
IdentityReport run(const char* id, const char* anchor, Body body) {
  Tally t(id, CheckMode::Exact, anchor, kRerun);
  for (const ExactPoint& p : exact_points()) {
    try {
      body(p, t);
    } catch (const std::exception& e) {
      t.error(e, where(p, ""));
    }
  }
  return t.finish();
}

void expect_equal(Tally& t, const Poly& lhs, const Poly& rhs,
                  const ExactPoint& p, const std::string& extra) {
  const PolyComparison cmp = poly_equal(lhs, rhs);
  t.exact(cmp.equal, [&] { return where(p, extra) + diff_text(cmp); });
}

std::string nm(int n, int m) {
  return "n=" + std::to_string(n) + " m=" + std::to_string(m);
}

}  // namespace

std::vector<IdentityReport> run_exact_suite(const SuiteConfig& config) {
  const int N = config.exact_degree;
  const Poly x = Poly::variable(0);
  const Poly y = Poly::variable(1);
  std::vector<IdentityReport> out;

  out.push_back(run(
      "hermite.linearization",
      "H_n H_m = sum_j [m j][n j][j]! H_{n+m-2j}",
      [&](const ExactPoint& p, Tally& t) {
        const auto h = rec::hermite_table(2 * N, x, p.q);
        for (int n = 0; n <= N; ++n) {
          for (int m = 0; m <= N; ++m) {
            Poly rhs;
            for (int j = 0; j <= std::min(n, m); ++j) {
              const Rational c = q_binomial(m, j, p.q) * q_binomial(n, j, p.q) *
                                 q_factorial(j, p.q);
              rhs += c * h[n + m - 2 * j];
            }
            expect_equal(t, h[n] * h[m], rhs, p, nm(n, m));
          }
        }
      }));

  out.push_back(run(
      "hermite.inverse_linearization",
      "H_{n+m} = sum_j (-1)^j q^C(j,2) [m j][n j][j]! H_{n-j} H_{m-j}",
      [&](const ExactPoint& p, Tally& t) {
        const auto h = rec::hermite_table(2 * N, x, p.q);
        for (int n = 0; n <= N; ++n) {
          for (int m = 0; m <= N; ++m) {
            Poly rhs;
            for (int j = 0; j <= std::min(n, m); ++j) {
              Rational c = q_triangular_power(j, p.q) * q_binomial(m, j, p.q) *
                           q_binomial(n, j, p.q) * q_factorial(j, p.q);
              if (j % 2 == 1) c = -c;
              rhs += c * (h[n - j] * h[m - j]);
            }
            expect_equal(t, h[n + m], rhs, p, nm(n, m));
          }
        }
      }));

  out.push_back(run(
      "hermite.asc_connection",
      "H_n(x) = sum_k [n k] rho^{n-k} H_{n-k}(y) P_k(x|y,rho)",
      [&](const ExactPoint& p, Tally& t) {
        const auto hx = rec::hermite_table(N, x, p.q);
        const auto hy = rec::hermite_table(N, y, p.q);
        const auto pk = rec::asc_table(N, x, y, p.rho, p.q);
        for (int n = 0; n <= N; ++n) {
          Poly rhs;
          for (int k = 0; k <= n; ++k) {
            const Rational c = q_binomial(n, k, p.q) * ipow(p.rho, n - k);
            rhs += c * (hy[n - k] * pk[k]);
          }
          expect_equal(t, hx[n], rhs, p, "n=" + std::to_string(n));
        }
      }));

  out.push_back(run(
      "asc.hermite_connection",
      "P_n(x|y,rho) = sum_k [n k] rho^{n-k} B_{n-k}(y) H_k(x)",
      [&](const ExactPoint& p, Tally& t) {
        const auto hx = rec::hermite_table(N, x, p.q);
        const auto by = rec::b_table(N, y, p.q);
        const auto pk = rec::asc_table(N, x, y, p.rho, p.q);
        for (int n = 0; n <= N; ++n) {
          Poly rhs;
          for (int k = 0; k <= n; ++k) {
            const Rational c = q_binomial(n, k, p.q) * ipow(p.rho, n - k);
            rhs += c * (by[n - k] * hx[k]);
          }
          expect_equal(t, pk[n], rhs, p, "n=" + std::to_string(n));
        }
      }));

  out.push_back(run("b_poly.hermite_zero_sum",
                    "sum_j [n j] B_{n-j}(x) H_j(x) = 0 for n >= 1",
                    [&](const ExactPoint& p, Tally& t) {
                      const auto hx = rec::hermite_table(N, x, p.q);
                      const auto bx = rec::b_table(N, x, p.q);
                      for (int n = 1; n <= N; ++n) {
                        Poly lhs;
                        for (int j = 0; j <= n; ++j) {
                          lhs += q_binomial(n, j, p.q) * (bx[n - j] * hx[j]);
                        }
                        expect_equal(t, lhs, Poly(), p,
                                     "n=" + std::to_string(n));
                      }
                    }));

  out.push_back(run(
      "asc.inversion",
      "P_n(x|y,rho) = (rho^2)_n sum_i [n i] (-1)^i q^C(i,2) rho^i H_{n-i}(x) "
      "P_i(y|x,rho) / (rho^2)_i",
      [&](const ExactPoint& p, Tally& t) {
        const Rational r2 = p.rho * p.rho;
        const auto hx = rec::hermite_table(N, x, p.q);
        const auto pxy = rec::asc_table(N, x, y, p.rho, p.q);
        const auto pyx = rec::asc_table(N, y, x, p.rho, p.q);
        for (int n = 0; n <= N; ++n) {
          Poly rhs;
          for (int i = 0; i <= n; ++i) {
            Rational c = q_binomial(n, i, p.q) * q_triangular_power(i, p.q) *
                         ipow(p.rho, i) / q_pochhammer(r2, i, p.q);
            if (i % 2 == 1) c = -c;
            rhs += c * (hx[n - i] * pyx[i]);
          }
          rhs *= q_pochhammer(r2, n, p.q);
          expect_equal(t, pxy[n], rhs, p, "n=" + std::to_string(n));
        }
      }));

  out.push_back(run(
      "cn.form_equivalence",
      "C_n by the ASC connection equals C_n in q-Hermite polynomials",
      [&](const ExactPoint& p, Tally& t) {
        const auto& [r1, r2, r3] = p.corr;
        for (int n = 0; n <= N; ++n) {
          expect_equal(t, rec::c_n_connection(n, x, y, r1, r2, r3, p.q),
                       rec::c_n_hermite(n, x, y, r1, r2, r3, p.q), p,
                       "n=" + std::to_string(n) + " r=(" + to_string(r1) +
                           "," + to_string(r2) + "," + to_string(r3) + ")");
        }
      }));

  out.push_back(run(
      "cn.special_parameters",
      "C_n(x,y|r2 r3,r2,r3) = r2^n H_n(x); C_n(x,y|r1,r1 r3,r3) = r1^n H_n(y); "
      "C_n(x,y|r1,r2,0) = sum_s [n s] r1^{n-s} r2^s H_{n-s}(y) H_s(x); "
      "C_n(x,y|0,r2,r3) = r2^n P_n(x|y,r3)/(r3^2)_n; "
      "C_n(x,y|r1,0,r3) = r1^n P_n(y|x,r3)/(r3^2)_n",
      [&](const ExactPoint& p, Tally& t) {
        const auto& [r1, r2, r3] = p.corr;
        const Rational zero(0);
        const auto hx = rec::hermite_table(N, x, p.q);
        const auto hy = rec::hermite_table(N, y, p.q);
        const auto pxy = rec::asc_table(N, x, y, r3, p.q);
        const auto pyx = rec::asc_table(N, y, x, r3, p.q);
        for (int n = 0; n <= N; ++n) {
          const std::string tag = "n=" + std::to_string(n);
          const Rational r23 = r2 * r3, r13 = r1 * r3;
          const Rational poch = q_pochhammer(Rational(r3 * r3), n, p.q);
          for (auto form : {0, 1}) {
            auto cn = [&](const Rational& a, const Rational& b,
                          const Rational& c) {
              return form == 0 ? rec::c_n_connection(n, x, y, a, b, c, p.q)
                               : rec::c_n_hermite(n, x, y, a, b, c, p.q);
            };
            const std::string f = form == 0 ? " connection" : " hermite";
            expect_equal(t, cn(r23, r2, r3), ipow(r2, n) * hx[n], p,
                         tag + f + " first");
            expect_equal(t, cn(r1, r13, r3), ipow(r1, n) * hy[n], p,
                         tag + f + " second");
            Poly sum;
            for (int s = 0; s <= n; ++s) {
              const Rational c =
                  q_binomial(n, s, p.q) * ipow(r1, n - s) * ipow(r2, s);
              sum += c * (hy[n - s] * hx[s]);
            }
            expect_equal(t, cn(r1, r2, zero), sum, p, tag + f + " third");
            expect_equal(t, cn(zero, r2, r3),
                         Rational(ipow(r2, n) / poch) * pxy[n], p,
                         tag + f + " fourth");
            expect_equal(t, cn(r1, zero, r3),
                         Rational(ipow(r1, n) / poch) * pyx[n], p,
                         tag + f + " fifth");
          }
        }
      }));

  out.push_back(run("qmk.symmetry", "Q_{m,k}(x,y|rho) = Q_{k,m}(y,x|rho)",
                    [&](const ExactPoint& p, Tally& t) {
                      for (int m = 0; m <= N; ++m) {
                        for (int k = 0; k <= N; ++k) {
                          expect_equal(t, rec::q_mk(m, k, x, y, p.rho, p.q),
                                       rec::q_mk(k, m, y, x, p.rho, p.q), p,
                                       "m=" + std::to_string(m) +
                                           " k=" + std::to_string(k));
                        }
                      }
                    }));

  out.push_back(run(
      "q_pochhammer.finite_expansion",
      "(a)_n = sum_i [n i] (-1)^i q^C(i,2) a^i, a a free variable",
      [&](const ExactPoint& p, Tally& t) {
        for (int n = 0; n <= 2 * N; ++n) {
          Poly lhs(1L);
          Rational qi(1);
          for (int i = 0; i < n; ++i) {
            lhs *= Poly(1L) - qi * x;
            qi *= p.q;
          }
          Poly rhs;
          Poly power(1L);
          for (int i = 0; i <= n; ++i) {
            Rational c = q_binomial(n, i, p.q) * q_triangular_power(i, p.q);
            if (i % 2 == 1) c = -c;
            rhs += c * power;
            power *= x;
          }
          expect_equal(t, lhs, rhs, p, "n=" + std::to_string(n));
        }
      }));

  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.identity_id < b.identity_id;
  });
  return out;
}

}  // namespace qks
