#pragma once

#include <optional>

#include "cmcflow/fields.hpp"
#include "cmcflow/norms.hpp"

namespace cmcflow {

struct RoundnessParams {
  double sigma = 1.0;  // approximate radius, must be > 1
  double eta = 1.0;
  double B1 = 10.0;
  double B2 = 10.0;
  double Bcen = 10.0;
  double delta = 0.5;  // decay exponent of the ambient model

  void validate() const;
};

/// Margins are normalized: positive iff the inequality is satisfied,
/// (bound - attained)/bound for upper bounds and (attained - bound)/bound
/// for lower bounds; windows report the worse of their two sides.
struct RoundnessReport {
  double margin_shape = 0.0;       // |A| < sqrt(5/2)/sigma
  double margin_principal = 0.0;   // kappa_i > 1/(2 sigma)
  double margin_area = 0.0;        // (7/2) pi sigma^2 < area <= 5 pi sigma^2
  double margin_radii = 0.0;       // 3/4 < r/sigma, R/sigma <= 5/4
  double margin_traceless = 0.0;   // ||Ao||_4 < B1 sigma^{-1-delta}
  double margin_oscillation = 0.0; // a_eta < B2 sigma^{-8-4delta}
  double margin_barycenter = 0.0;  // |z| < Bcen sigma^{1-delta}
  double a_eta = 0.0;
  double ao_l4 = 0.0;
  bool round = false;
  bool well_centered = false;
};

RoundnessReport roundness_classify(const SurfaceFields& fields,
                                   const Radii& radii,
                                   const RoundnessParams& params,
                                   double grad_H_l4, const Vec3& z);

/// Sup-node decay-weighted gaps between physical and Euclidean extrinsic
/// geometry. The mean-curvature rows require the a-priori bound
/// |A| <= 10 / r_min; when it fails they are omitted and the flag is set.
struct ComparisonReport {
  double metric_row = 0.0;    // |g - g^e|_g |x|^{1/2+delta}
  double normal_row = 0.0;    // |nu - nu^e|_g |x|^{1/2+delta}
  double measure_row = 0.0;   // |dmu/dmu^e - 1| |x|^{1/2+delta}
  std::optional<double> mean_curvature_row;  // |H - H^e| |x|^{3/2+delta}
  std::optional<double> traceless_row;       // |Ao - Ao^e|_g |x|^{3/2+delta}
  bool curvature_hypothesis_ok = true;
};

ComparisonReport euclidean_comparison(const SurfaceFields& fields);

}  // namespace cmcflow
