#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "cmcflow/errors.hpp"
#include "cmcflow/harmonics.hpp"

namespace cmcflow {

/// Closed genus-0 surface given as a radial graph over the unit sphere:
/// X(u) = center + r(u) u with r expanded in real spherical harmonics.
struct GraphSurface {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  int l_max = 16;
  Eigen::VectorXd coeffs;  // row-major (l, m), size (l_max + 1)^2
  int n_theta = 0;         // 0 -> default l_max + 2
  int n_phi = 0;           // 0 -> default 2 * l_max + 2

  static GraphSurface sphere(const Eigen::Vector3d& center, double radius,
                             int l_max = 16);

  /// Adds amp * Y_lm to the radial function.
  GraphSurface& perturb(int l, int m, double amp);

  int grid_n_theta() const { return n_theta > 0 ? n_theta : l_max + 2; }
  int grid_n_phi() const { return n_phi > 0 ? n_phi : 2 * l_max + 2; }
  std::shared_ptr<const SphereBasis> basis() const;
};

/// Radial function and its angular derivatives at the quadrature nodes.
struct NodeGeometry {
  Eigen::VectorXd r, r_t, r_p, r_tt, r_tp, r_pp;
};

/// Spectral synthesis of r and its derivatives; throws NonPositiveRadius
/// if the radial function dips below zero anywhere on the grid.
NodeGeometry synthesize(const GraphSurface& surface);

/// Distance from `from` to the surface along direction u (fixed-point ray
/// intersection); throws CommonGraphFailure when the iteration does not
/// contract (surface not a graph about `from`).
double ray_radius(const GraphSurface& surface, const Eigen::Vector3d& from,
                  const Eigen::Vector3d& u);

/// The same surface re-expanded as a radial graph about a new center.
GraphSurface re_expand(const GraphSurface& surface,
                       const Eigen::Vector3d& new_center);

}  // namespace cmcflow
