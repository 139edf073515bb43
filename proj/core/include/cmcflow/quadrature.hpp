#pragma once

#include <Eigen/Dense>
#include <vector>

namespace cmcflow {

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Product quadrature on the unit sphere: Gauss-Legendre in cos(theta),
/// uniform in phi. Exact for spherical polynomials of degree
/// <= min(2*n_theta - 1, n_phi - 1); weights sum to 4*pi.
struct QuadratureGrid {
  int n_theta = 0;
  int n_phi = 0;
  std::vector<double> theta;      // per theta ring
  std::vector<double> cos_theta;  // per theta ring
  std::vector<double> sin_theta;  // per theta ring
  std::vector<double> phi;        // per phi column
  std::vector<double> weight;     // per node, solid-angle weight
  std::vector<Eigen::Vector3d> direction;  // per node, unit vector

  QuadratureGrid() = default;
  QuadratureGrid(int n_theta, int n_phi);

  int node_count() const { return n_theta * n_phi; }
  int node(int i_theta, int j_phi) const { return i_theta * n_phi + j_phi; }
  int theta_index(int node) const { return node / n_phi; }
};

}  // namespace cmcflow
