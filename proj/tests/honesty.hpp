#pragma once

// Re-evaluates every series-backed operation with max_terms doubled and checks
// that the value moves by at most twice the reported tail.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "qks/kernels.hpp"

namespace qks::testing {

struct HonestyCase {
  std::string op;
  std::function<TruncationReport(const QContext&)> eval;
};

struct HonestyOutcome {
  int cases = 0;
  int violations = 0;
  std::string first_violation;
};

inline std::vector<HonestyCase> honesty_cases(double q) {
  std::vector<HonestyCase> out;
  const QContext probe(q);
  const double a = 0.9 * 0.9 * support_half_width(probe);
  const double grid[] = {-a, 0.0, a};
  auto pt = [](double x1, double x2, double x3) {
    return "(" + std::to_string(x1) + "," + std::to_string(x2) + "," +
           std::to_string(x3) + ")";
  };
  out.push_back({"q_pochhammer_inf", [](const QContext& c) {
                   return q_pochhammer_inf(0.25, c);
                 }});
  for (double x1 : grid) {
    out.push_back({"density_fn " + std::to_string(x1),
                   [=](const QContext& c) { return density_fn_report(x1, c); }});
    for (double x2 : grid) {
      out.push_back({"density_fcn", [=](const QContext& c) {
                       return density_fcn_report(x1, {x2, 0.5}, c);
                     }});
      out.push_back({"gamma_mk", [=](const QContext& c) {
                       return gamma_mk(1, 2, x1, x2, 0.5, c);
                     }});
      out.push_back({"poisson_mehler", [=](const QContext& c) {
                       return poisson_mehler(x1, x2, -0.6, c);
                     }});
      for (double x3 : grid) {
        const std::string where = " at " + pt(x1, x2, x3);
        out.push_back({"density_faw" + where, [=](const QContext& c) {
                         return density_faw_report(x3, x1, 0.5, x2, 0.4, c);
                       }});
        out.push_back({"aw_expansion" + where, [=](const QContext& c) {
                         return aw_expansion(x3, x1, 0.5, x2, 0.4, c);
                       }});
        for (const CorrelationTriple corr :
             {CorrelationTriple{0.2, 0.5, 0.4}, CorrelationTriple{0.35, 0.5, 0.4}}) {
          for (F3dForm form : {F3dForm::Direct, F3dForm::HC, F3dForm::ASC}) {
            out.push_back({std::string("f3d ") + f3d_form_name(form) + where,
                           [=](const QContext& c) {
                             return f3d(x1, x2, x3, corr, c, form);
                           }});
          }
          out.push_back({"kernel_recentring lhs" + where, [=](const QContext& c) {
                           return kernel_recentring(x1, x2, x3, corr, c).lhs;
                         }});
          out.push_back({"kernel_recentring rhs" + where, [=](const QContext& c) {
                           return kernel_recentring(x1, x2, x3, corr, c).rhs;
                         }});
        }
        for (int k = 0; k <= 2; ++k) {
          out.push_back({"qk_kernel lhs" + where, [=](const QContext& c) {
                           return qk_kernel(k, x1, x2, x3, 0.5, 0.4, c).lhs;
                         }});
          out.push_back({"qk_kernel rhs" + where, [=](const QContext& c) {
                           return qk_kernel(k, x1, x2, x3, 0.5, 0.4, c).rhs;
                         }});
        }
        out.push_back({"kernel_rho12_zero lhs" + where, [=](const QContext& c) {
                         return kernel_rho12_zero(x1, x2, x3, 0.6, 0.5, c).lhs;
                       }});
        out.push_back({"kernel_rho12_zero rhs" + where, [=](const QContext& c) {
                         return kernel_rho12_zero(x1, x2, x3, 0.6, 0.5, c).rhs;
                       }});
      }
    }
  }
  return out;
}

/// For each case and each starting limit m: evaluate with max_terms m and 2m
/// (partial sums allowed, so small m returns its tail instead of raising).
inline HonestyOutcome check_honesty(double q, const std::vector<int>& limits) {
  HonestyOutcome out;
  const QContext base(q);
  for (const HonestyCase& hc : honesty_cases(q)) {
    for (int m : limits) {
      const QContext c1 = base.with_max_terms(m).with_allow_partial(true);
      const QContext c2 = base.with_max_terms(2 * m).with_allow_partial(true);
      const TruncationReport r1 = hc.eval(c1);
      const TruncationReport r2 = hc.eval(c2);
      ++out.cases;
      const double moved = std::abs(r2.value - r1.value);
      if (!(moved <= 2.0 * r1.tail_estimate)) {
        if (out.violations++ == 0) {
          out.first_violation = hc.op + " q=" + std::to_string(q) +
                                " max_terms=" + std::to_string(m) +
                                " moved " + std::to_string(moved) +
                                " tail " + std::to_string(r1.tail_estimate);
        }
      }
    }
  }
  return out;
}

}  // namespace qks::testing
