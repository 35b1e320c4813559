#pragma once

// q-Normal, conditional q-Normal and Askey--Wilson densities, plus the
// quadrature used to integrate against them over S(q).

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <vector>

#include "qks/qcore.hpp"

namespace qks {

/// Conditioning point and correlation of f_CN.
struct DensityParams {
  double y = 0.0;
  double rho = 0.0;
};

/// r_k(y|q) = (1+q^k)^2 - (1-q) y q^k.  Called with y = x^2 by the densities.
double aux_r(int k, double y, const QContext& ctx);

/// v_k(x,y|rho,q) = v_0(x,y|rho q^k, q), where
/// v_0 = (1-rho^2)^2 - (1-q) rho (1+rho^2) x y + (1-q) rho^2 (x^2+y^2).
double aux_v(int k, double x, double y, double rho, const QContext& ctx);

/// f_N(x|q).  Zero outside S(q); standard Gaussian at q = 1.
double density_fn(double x, const QContext& ctx);
TruncationReport density_fn_report(double x, const QContext& ctx);

/// f_CN(x|y,rho,q).  DomainError for |rho| >= 1 or y outside S(q).
double density_fcn(double x, const DensityParams& p, const QContext& ctx);
TruncationReport density_fcn_report(double x, const DensityParams& p,
                                    const QContext& ctx);

/// f_AW(x3|x1,rho13,x2,rho23,q)
///   = f_CN(x1|x3,rho13) f_CN(x3|x2,rho23) / f_CN(x1|x2,rho13 rho23).
/// DivisionByNearZero when the denominator drops below 1e-300.
double density_faw(double x3, double x1, double rho13, double x2, double rho23,
                   const QContext& ctx);
TruncationReport density_faw_report(double x3, double x1, double rho13,
                                    double x2, double rho23,
                                    const QContext& ctx);

/// Gauss--Legendre nodes and weights on [-1, 1] (Newton on P_n).
struct GaussLegendre {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
GaussLegendre gauss_legendre(int n);

/// Gauss--Legendre rule in theta on [0, pi]; integrals over S(q) use
/// x = (2/sqrt(1-q)) cos(theta), which turns the sqrt(r_0) endpoint factor of
/// the densities into a smooth sin(theta).
class QuadratureRule {
 public:
  explicit QuadratureRule(int node_count = 256);

  int node_count() const noexcept { return static_cast<int>(theta_.size()); }
  const Eigen::VectorXd& theta() const noexcept { return theta_; }
  const Eigen::VectorXd& weights() const noexcept { return weights_; }

 private:
  Eigen::VectorXd theta_;
  Eigen::VectorXd weights_;
};

/// Abscissae in x and weights (Jacobian included) for integrating over S(q).
/// At q = 1 the rule is independent of `rule`: 10 Gauss--Legendre panels of
/// 20 nodes on [-10, 10].
struct MappedRule {
  std::vector<double> x;
  std::vector<double> w;
};
MappedRule mapped_rule(const QuadratureRule& rule, const QContext& ctx);

template <class F>
double integrate(F&& f, const MappedRule& mapped) {
  double sum = 0.0;
  for (std::size_t i = 0; i < mapped.x.size(); ++i) {
    sum += mapped.w[i] * f(mapped.x[i]);
  }
  return sum;
}

/// Integral of f over S(q) (over R at q = 1).
template <class F>
double integrate(F&& f, const QuadratureRule& rule, const QContext& ctx) {
  return integrate(std::forward<F>(f), mapped_rule(rule, ctx));
}

}  // namespace qks
