#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cmcflow/fields.hpp"

namespace cmcflow {

/// Rank-r covariant tensor field on the surface, components in the
/// (theta, phi) coordinate basis. Component order is binary: index bits
/// (i1 i2 ... ir) with 0 = theta, 1 = phi, so comps.size() == 2^r.
struct TensorField {
  int rank = 0;
  std::vector<Eigen::ArrayXd> comps;
};

/// Spectral differential operators on a fixed surface: partial and
/// covariant derivatives, intrinsic curvature. Construction precomputes
/// the Christoffel symbols of the induced metric.
class SurfaceCalculus {
 public:
  explicit SurfaceCalculus(const SurfaceFields& fields);

  const SurfaceFields& fields() const { return *fields_; }

  /// Spectral partial derivative d_theta (axis 0) or d_phi (axis 1).
  Eigen::ArrayXd partial(const Eigen::ArrayXd& samples, int axis) const;

  TensorField gradient(const Eigen::ArrayXd& samples) const;

  /// Covariant derivative; result rank = input rank + 1, new index first.
  /// Supports input rank <= 2.
  TensorField covariant_derivative(const TensorField& t) const;

  /// Pointwise norm |T|_g with all slots raised by g^{-1}.
  Eigen::ArrayXd pointwise_norm(const TensorField& t) const;

  /// g^{ij} d_i f d_j g pointwise.
  Eigen::ArrayXd gradient_inner(const Eigen::ArrayXd& f,
                                const Eigen::ArrayXd& g) const;

  /// Intrinsic scalar curvature of the induced metric (spectral).
  Eigen::ArrayXd intrinsic_scalar() const;

 private:
  const SurfaceFields* fields_;
  // gam_[k][i][j] = Gamma^k_ij of the induced metric, per node.
  Eigen::ArrayXd gam_[2][2][2];
};

/// L^p norm of scalar samples in the physical measure; p >= 1, p = inf
/// as max over nodes.
double lp_norm(const SurfaceFields& fields, const Eigen::ArrayXd& samples,
               double p);

double lp_norm(const SurfaceCalculus& calc, const TensorField& t, double p);

/// Radius-weighted Sobolev norm
///   ||f||_{W^{k+1,p}} = ||f||_{L^p} + sigma * ||grad f||_{W^{k,p}},
/// with covariant derivatives computed spectrally; k in {0, 1, 2}.
double sobolev_norm(const SurfaceCalculus& calc, const Eigen::ArrayXd& samples,
                    int k, double p, double sigma);

}  // namespace cmcflow
