#pragma once

#include <utility>
#include <vector>

#include "cmcflow/metric.hpp"

namespace cmcflow {

struct MassEstimate {
  double value = 0.0;     // extrapolated mass
  double rate = 0.0;      // fitted convergence exponent s in I(R) = m + a R^{-s}
  double residual = 0.0;  // magnitude of the last correction
  std::vector<std::pair<double, double>> samples;  // (R, flux integral)
};

/// Flux integral (1/16 pi) oint (d_a g_ab - d_b g_aa) nu^b dmu over
/// coordinate spheres, Richardson-extrapolated in R. Quadrature order is
/// doubled until the integral is stable to 1e-8; a residual refinement
/// disagreement beyond 1e-6 raises QuadratureUnderResolved.
MassEstimate adm_mass(const MetricModel& model, std::vector<double> radii);

}  // namespace cmcflow
