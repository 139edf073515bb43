#include "cmcflow/surface.hpp"

#include <algorithm>
#include <cmath>

namespace cmcflow {

GraphSurface GraphSurface::sphere(const Eigen::Vector3d& center, double radius,
                                  int l_max) {
  GraphSurface s;
  s.center = center;
  s.l_max = l_max;
  s.coeffs = Eigen::VectorXd::Zero((l_max + 1) * (l_max + 1));
  s.coeffs[0] = radius * 2.0 * std::sqrt(M_PI);  // Y_00 = 1 / (2 sqrt(pi))
  return s;
}

GraphSurface& GraphSurface::perturb(int l, int m, double amp) {
  if (l > l_max || l < 0 || std::abs(m) > l)
    throw ConfigError("perturbation mode (l, m) outside the basis");
  coeffs[SphereBasis::index(l, m)] += amp;
  return *this;
}

std::shared_ptr<const SphereBasis> GraphSurface::basis() const {
  return SphereBasis::get(l_max, grid_n_theta(), grid_n_phi());
}

NodeGeometry synthesize(const GraphSurface& surface) {
  if (surface.coeffs.size() != (surface.l_max + 1) * (surface.l_max + 1))
    throw ConfigError("coefficient vector size does not match l_max");
  const auto basis = surface.basis();
  NodeGeometry geo;
  geo.r = basis->values() * surface.coeffs;
  geo.r_t = basis->d_theta() * surface.coeffs;
  geo.r_p = basis->d_phi() * surface.coeffs;
  geo.r_tt = basis->d_theta_theta() * surface.coeffs;
  geo.r_tp = basis->d_theta_phi() * surface.coeffs;
  geo.r_pp = basis->d_phi_phi() * surface.coeffs;
  if (geo.r.minCoeff() <= 0.0)
    throw NonPositiveRadius("radial graph function is not positive");
  return geo;
}

double ray_radius(const GraphSurface& surface, const Eigen::Vector3d& from,
                  const Eigen::Vector3d& u) {
  // Fixed point: the surface point in old-graph direction v lies on the
  // ray from `from` along u iff v solves v = dir(from - center + s(v) u).
  Eigen::Vector3d v = u;
  double s = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double theta = std::acos(std::clamp(v.z(), -1.0, 1.0));
    const double phi = std::atan2(v.y(), v.x());
    const double r = SphereBasis::evaluate(surface.coeffs, surface.l_max,
                                           theta, phi);
    if (r <= 0.0) throw CommonGraphFailure("ray hit nonpositive radius");
    const Eigen::Vector3d point = surface.center + r * v;
    s = (point - from).dot(u);
    if (s <= 0.0)
      throw CommonGraphFailure("surface not star-shaped about the ray origin");
    const Eigen::Vector3d next = (from - surface.center + s * u).normalized();
    const double change = (next - v).norm();
    v = next;
    if (change < 1e-14) return s;
  }
  throw CommonGraphFailure("ray intersection iteration did not converge");
}

GraphSurface re_expand(const GraphSurface& surface,
                       const Eigen::Vector3d& new_center) {
  const auto basis = surface.basis();
  const QuadratureGrid& grid = basis->grid();
  Eigen::VectorXd samples(grid.node_count());
  for (int n = 0; n < grid.node_count(); ++n)
    samples[n] = ray_radius(surface, new_center, grid.direction[n]);
  GraphSurface out = surface;
  out.center = new_center;
  out.coeffs = basis->analyze(samples);
  return out;
}

}  // namespace cmcflow
