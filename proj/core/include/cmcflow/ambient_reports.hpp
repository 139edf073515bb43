#pragma once

#include <cstdint>
#include <vector>

#include "cmcflow/metric.hpp"

namespace cmcflow {

/// Seed used for direction sampling: explicit argument if nonzero,
/// otherwise the CMCFLOW_SEED environment variable, otherwise a fixed
/// default. Sampling is deterministic for a fixed seed.
std::uint64_t sampling_seed(std::uint64_t requested = 0);

struct DecayReport {
  std::vector<double> radii;
  // Per radius: max over sampled directions of
  // (|g - e| + |x||dg| + |x|^2|ddg|) * |x|^{1/2+delta} and |S| * |x|^{3+delta}.
  std::vector<double> metric_ratio;
  std::vector<double> scalar_ratio;
  double cbar = 0.0;         // smallest constant bounding metric_ratio
  double cbar_scalar = 0.0;
  bool decay_violated = false;  // ratios grow across the radius ladder
};

DecayReport decay_check(const MetricModel& model,
                        std::vector<double> sample_radii,
                        int samples_per_radius, std::uint64_t seed = 0);

struct RTReport {
  std::vector<double> radii;
  std::vector<double> metric_ratio;       // |g(x) - g(-x)| |x|^{1+delta}
  std::vector<double> christoffel_ratio;  // |G(x) + G(-x)| |x|^{2+delta}
  double sup_metric = 0.0;
  double sup_christoffel = 0.0;
  double threshold = 1.0;
  bool pass = false;
};

/// Antipodal-symmetry (Regge-Teitelboim) sampling check.
RTReport regge_teitelboim_check(const MetricModel& model,
                                std::vector<double> sample_radii,
                                int samples_per_radius, double threshold = 1.0,
                                std::uint64_t seed = 0);

}  // namespace cmcflow
