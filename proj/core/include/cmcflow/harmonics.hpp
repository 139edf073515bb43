#pragma once

#include <Eigen/Dense>
#include <memory>

#include "cmcflow/quadrature.hpp"

namespace cmcflow {

/// Real spherical harmonics Y_lm and their first and second angular
/// derivatives, tabulated on a quadrature grid. Coefficient vectors are
/// indexed row-major in (l, m): index = l^2 + l + m.
class SphereBasis {
 public:
  SphereBasis(int l_max, const QuadratureGrid& grid);

  int l_max() const { return l_max_; }
  int size() const { return (l_max_ + 1) * (l_max_ + 1); }
  const QuadratureGrid& grid() const { return grid_; }

  static int index(int l, int m) { return l * l + l + m; }
  static int degree_of(int index);

  /// Node-sample synthesis matrices (node_count x size).
  const Eigen::MatrixXd& values() const { return y_; }
  const Eigen::MatrixXd& d_theta() const { return yt_; }
  const Eigen::MatrixXd& d_phi() const { return yp_; }
  const Eigen::MatrixXd& d_theta_theta() const { return ytt_; }
  const Eigen::MatrixXd& d_theta_phi() const { return ytp_; }
  const Eigen::MatrixXd& d_phi_phi() const { return ypp_; }

  Eigen::VectorXd synthesize(const Eigen::VectorXd& coeffs) const { return y_ * coeffs; }

  /// L^2(S^2) projection of node samples onto the basis (exact for
  /// bandlimited samples thanks to quadrature exactness).
  Eigen::VectorXd analyze(const Eigen::VectorXd& node_samples) const;

  /// Shared, cached basis per (l_max, n_theta, n_phi).
  static std::shared_ptr<const SphereBasis> get(int l_max, int n_theta, int n_phi);

  /// Pointwise evaluation of a coefficient vector at an arbitrary
  /// direction (used for re-centering and co-graphing, where the target
  /// directions are not grid nodes).
  static double evaluate(const Eigen::VectorXd& coeffs, int l_max,
                         double theta, double phi);

 private:
  int l_max_;
  QuadratureGrid grid_;
  Eigen::MatrixXd y_, yt_, yp_, ytt_, ytp_, ypp_;
};

}  // namespace cmcflow
