#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "cmcflow/metric.hpp"
#include "cmcflow/surface.hpp"

namespace cmcflow {

/// Extrinsic geometry of a GraphSurface in both the physical and the
/// Euclidean metric, evaluated at every quadrature node. Immutable once
/// constructed; safe to share across threads.
struct SurfaceFields {
  GraphSurface surface;
  MetricModel model;
  std::shared_ptr<const SphereBasis> basis;
  NodeGeometry geo;

  std::vector<Vec3> position;    // X = center + r u
  std::vector<Vec3> x_theta, x_phi;
  std::vector<Vec3> normal;      // outward unit normal in the physical metric
  std::vector<Vec3> normal_cov;  // covariant components g_ab nu^b
  std::vector<Vec3> normal_e;    // Euclidean outward unit normal

  // Induced metric and second fundamental form components in the
  // (theta, phi) coordinate basis; suffix e = Euclidean counterpart.
  Eigen::ArrayXd g11, g12, g22, ge11, ge12, ge22;
  Eigen::ArrayXd ginv11, ginv12, ginv22;
  Eigen::ArrayXd h11, h12, h22, he11, he12, he22;

  Eigen::ArrayXd H, He;          // mean curvatures
  Eigen::ArrayXd A2;             // |A|^2
  Eigen::ArrayXd Ao2, Ao2e;      // |A - (H/2)g|^2
  Eigen::ArrayXd kappa1, kappa2; // principal curvatures, kappa1 <= kappa2
  Eigen::ArrayXd nu_dot_u;       // graph-condition quantity g(nu, u)
  Eigen::ArrayXd wdmu, wdmu_e;   // per-node measure weights (sum = area)
  Eigen::ArrayXd xnorm;          // Euclidean |X|

  // Ambient curvature at the nodes; filled only when with_curvature.
  bool has_curvature = false;
  Eigen::ArrayXd ric_nu_nu;      // Ric(nu, nu)
  Eigen::ArrayXd ambient_scalar;

  double area = 0.0;
  double area_e = 0.0;

  double integrate(const Eigen::ArrayXd& f) const { return (wdmu * f).sum(); }
};

struct Radii {
  double r_min = 0.0;     // min |X| over nodes
  double r_max = 0.0;     // max |X| over nodes
  double sigma_area = 0.0;
  double area = 0.0;
};

SurfaceFields fundamental_forms(const MetricModel& model,
                                const GraphSurface& surface,
                                bool with_curvature = true);

Radii measures_and_radii(const SurfaceFields& fields);

Vec3 barycenter(const SurfaceFields& fields);

double hawking_mass(const SurfaceFields& fields);

/// Area average of the mean curvature in the physical measure.
double h_average(const SurfaceFields& fields);

/// Volume between the surface and the coordinate sphere of radius
/// inner_radius about the surface center, by radial Gauss-Legendre along
/// the graph rays.
double enclosed_volume(const MetricModel& model, const GraphSurface& surface,
                       double inner_radius, int radial_order = 16);

}  // namespace cmcflow
