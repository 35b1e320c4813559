#include "qks/negativity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qks/errors.hpp"

namespace qks {

double sign_factor(double x1, double x2, double x3, double rho13, double rho23,
                   const QContext& ctx) {
  const double num = (1.0 - ctx.q()) * rho13 * rho23 * (x1 - rho13 * x3) *
                     (x2 - rho23 * x3);
  return 1.0 - num / ((1.0 - rho13 * rho13) * (1.0 - rho23 * rho23));
}

std::vector<double> scan_axis(int grid_n, const QContext& ctx) {
  if (grid_n < 1) throw DomainError("grid_n must be positive");
  if (ctx.regime() == Regime::One) {
    throw RegimeError("negativity scans need a bounded support, |q| < 1");
  }
  const double hi = 0.99 * support_half_width(ctx);
  std::vector<double> axis(grid_n);
  if (grid_n == 1) {
    axis[0] = 0.0;
    return axis;
  }
  for (int i = 0; i < grid_n; ++i) {
    axis[i] = -hi + 2.0 * hi * i / (grid_n - 1);
  }
  return axis;
}

namespace {

using Point = std::array<double, 3>;

// Distance from p along +-e_axis to the first zero of the sign factor, capped
// at the support edge.
double distance_to_sign_change(const Point& p, int axis, double dir,
                               double rho13, double rho23, double edge,
                               const QContext& ctx) {
  auto sf = [&](double t) {
    Point x = p;
    x[axis] += dir * t;
    return sign_factor(x[0], x[1], x[2], rho13, rho23, ctx);
  };
  const double tmax = edge - dir * p[axis];
  if (tmax <= 0.0) return 0.0;
  if (sf(tmax) < 0.0) return tmax;
  double lo = 0.0, hi = tmax;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sf(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

bool confirmed_negative(const TruncationReport& r) {
  return r.value < 0.0 && std::abs(r.value) > 3.0 * r.tail_estimate;
}

}  // namespace

std::vector<NegativityCertificate> search_negative(double q, double rho13,
                                                   double rho23, int grid_n,
                                                   const QContext& ctx) {
  if (ctx.q() != q) throw DomainError("q disagrees with the context");
  const double rho12 = ipow(q, 1) * (rho13 * rho23);
  const CorrelationTriple corr{rho12, rho13, rho23};
  require_feasible(corr);
  const std::vector<double> axis = scan_axis(grid_n, ctx);
  const double edge = support_half_width(ctx);

  std::vector<NegativityCertificate> out;
  for (double x1 : axis) {
    for (double x2 : axis) {
      for (double x3 : axis) {
        const double sf = sign_factor(x1, x2, x3, rho13, rho23, ctx);
        if (!(sf < 0.0)) continue;
        const TruncationReport f = f3d_asc_series(x1, x2, x3, corr, ctx);
        if (!confirmed_negative(f)) continue;

        const Point p{x1, x2, x3};
        double dmin = std::numeric_limits<double>::infinity();
        for (int a = 0; a < 3; ++a) {
          for (double dir : {-1.0, 1.0}) {
            dmin = std::min(dmin, distance_to_sign_change(p, a, dir, rho13,
                                                          rho23, edge, ctx));
          }
        }
        double radius = 0.5 * dmin;
        bool ok = false;
        for (int shrink = 0; shrink < 20 && radius > 0.0; ++shrink) {
          ok = true;
          for (int a = 0; a < 3 && ok; ++a) {
            for (double dir : {-1.0, 1.0}) {
              Point y = p;
              y[a] += dir * radius;
              if (!confirmed_negative(
                      f3d_asc_series(y[0], y[1], y[2], corr, ctx))) {
                ok = false;
                break;
              }
            }
          }
          if (ok) break;
          radius *= 0.5;
        }
        if (!ok || !(radius > 0.0)) continue;

        NegativityCertificate c;
        c.q = q;
        c.rho13 = rho13;
        c.rho23 = rho23;
        c.point = p;
        c.sign_factor_value = sf;
        c.f3d_value = f.value;
        c.f3d_tail = f.tail_estimate;
        c.neighborhood_radius = radius;
        out.push_back(c);
      }
    }
  }
  return out;
}

KernelScan scan_rho12_zero(double rho13, double rho23, int grid_n,
                           const QContext& ctx) {
  require_feasible({0.0, rho13, rho23});
  const std::vector<double> axis = scan_axis(grid_n, ctx);
  KernelScan scan;
  scan.min_value = std::numeric_limits<double>::infinity();
  for (double x1 : axis) {
    for (double x2 : axis) {
      for (double x3 : axis) {
        const TruncationReport r =
            kernel_rho12_zero(x1, x2, x3, rho13, rho23, ctx).lhs;
        ++scan.points;
        if (r.value < 0.0) ++scan.negative_points;
        if (r.value < scan.min_value) {
          scan.min_value = r.value;
          scan.min_tail = r.tail_estimate;
          scan.argmin = {x1, x2, x3};
        }
      }
    }
  }
  return scan;
}

}  // namespace qks
