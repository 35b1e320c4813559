#pragma once

// Sign of f_3D on the line rho12 = q rho13 rho23, where the ASC kernel has two
// terms and f_3D is a product of densities times a closed-form factor.

#include <array>
#include <vector>

#include "qks/kernels.hpp"
#include "qks/qcore.hpp"

namespace qks {

/// 1 - (1-q) r13 r23 (x1 - r13 x3)(x2 - r23 x3) / ((1 - r13^2)(1 - r23^2)).
double sign_factor(double x1, double x2, double x3, double rho13, double rho23,
                   const QContext& ctx);

struct NegativityCertificate {
  double q = 0.0;
  double rho13 = 0.0;
  double rho23 = 0.0;
  std::array<double, 3> point{};
  double sign_factor_value = 0.0;
  double f3d_value = 0.0;
  double f3d_tail = 0.0;
  double neighborhood_radius = 0.0;
};

/// Scans a grid_n^3 grid on [-0.99 a, 0.99 a]^3, a the support half-width,
/// with rho12 = q rho13 rho23.  A point is reported when the sign factor is
/// negative and the truncated ASC series is negative by more than three times
/// its tail.  The radius is half the shortest axis distance to a sign change
/// (bisection) or to the edge of S(q), then shrunk until f_3D at the six axis
/// neighbours is also confirmed negative.
std::vector<NegativityCertificate> search_negative(double q, double rho13,
                                                   double rho23, int grid_n,
                                                   const QContext& ctx);

/// Grid minimum of the rho12 = 0 kernel (left side of the two-sided
/// evaluation) over the same kind of grid.
struct KernelScan {
  double min_value = 0.0;
  double min_tail = 0.0;
  std::array<double, 3> argmin{};
  int points = 0;
  int negative_points = 0;
};

KernelScan scan_rho12_zero(double rho13, double rho23, int grid_n,
                           const QContext& ctx);

/// Evenly spaced interior grid used by the scans.
std::vector<double> scan_axis(int grid_n, const QContext& ctx);

}  // namespace qks
