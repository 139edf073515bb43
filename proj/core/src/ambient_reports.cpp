#include "cmcflow/ambient_reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

namespace cmcflow {

std::uint64_t sampling_seed(std::uint64_t requested) {
  if (requested != 0) return requested;
  if (const char* env = std::getenv("CMCFLOW_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 20240817ull;
}

namespace {

std::vector<Vec3> random_directions(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Vec3> dirs;
  dirs.reserve(count);
  while (int(dirs.size()) < count) {
    Vec3 v(gauss(rng), gauss(rng), gauss(rng));
    const double len = v.norm();
    if (len > 1e-8) dirs.push_back(v / len);
  }
  return dirs;
}

double frob(const Mat3& m) { return m.norm(); }

double frob3(const Tensor3& t) {
  return std::sqrt(t[0].squaredNorm() + t[1].squaredNorm() +
                   t[2].squaredNorm());
}

double frob4(const Tensor4& t) {
  double s = 0.0;
  for (const auto& row : t)
    for (const auto& m : row) s += m.squaredNorm();
  return std::sqrt(s);
}

void check_radii(const std::vector<double>& radii) {
  if (radii.empty()) throw ConfigError("need at least one sample radius");
  for (size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] <= 1.0) throw ConfigError("sample radii must exceed 1");
    if (i > 0 && radii[i] <= radii[i - 1])
      throw ConfigError("sample radii must be strictly increasing");
  }
}

}  // namespace

DecayReport decay_check(const MetricModel& model,
                        std::vector<double> sample_radii,
                        int samples_per_radius, std::uint64_t seed) {
  check_radii(sample_radii);
  const auto dirs = random_directions(samples_per_radius, sampling_seed(seed));
  const double delta = model.delta;

  DecayReport rep;
  rep.radii = sample_radii;
  for (double R : sample_radii) {
    double worst_metric = 0.0, worst_scalar = 0.0;
    for (const Vec3& u : dirs) {
      const Vec3 x = R * u;
      const MetricJet jet = metric_jet(model, x);
      const double raw = frob(jet.g - Mat3::Identity()) + R * frob3(jet.dg) +
                         R * R * frob4(jet.ddg);
      worst_metric = std::max(worst_metric, raw * std::pow(R, 0.5 + delta));
      const double s = curvature_from_jet(jet).scalar;
      worst_scalar =
          std::max(worst_scalar, std::abs(s) * std::pow(R, 3.0 + delta));
    }
    rep.metric_ratio.push_back(worst_metric);
    rep.scalar_ratio.push_back(worst_scalar);
  }
  rep.cbar = *std::max_element(rep.metric_ratio.begin(), rep.metric_ratio.end());
  rep.cbar_scalar =
      *std::max_element(rep.scalar_ratio.begin(), rep.scalar_ratio.end());
  // Declared decay fails when the weighted ratio keeps growing outward.
  if (rep.metric_ratio.size() >= 2) {
    const double first = std::max(rep.metric_ratio.front(), 1e-14);
    const double prev = rep.metric_ratio[rep.metric_ratio.size() - 2];
    rep.decay_violated =
        rep.metric_ratio.back() > 2.0 * first && rep.metric_ratio.back() > prev;
  }
  return rep;
}

RTReport regge_teitelboim_check(const MetricModel& model,
                                std::vector<double> sample_radii,
                                int samples_per_radius, double threshold,
                                std::uint64_t seed) {
  check_radii(sample_radii);
  const auto dirs = random_directions(samples_per_radius, sampling_seed(seed));
  const double delta = model.delta;

  RTReport rep;
  rep.radii = sample_radii;
  rep.threshold = threshold;
  for (double R : sample_radii) {
    double worst_g = 0.0, worst_gamma = 0.0;
    for (const Vec3& u : dirs) {
      const MetricJet jp = metric_jet(model, R * u);
      const MetricJet jm = metric_jet(model, -R * u);
      worst_g = std::max(worst_g,
                         frob(jp.g - jm.g) * std::pow(R, 1.0 + delta));
      const auto gp = christoffels(jp);
      const auto gm = christoffels(jm);
      double s = 0.0;
      for (int a = 0; a < 3; ++a) s += (gp[a] + gm[a]).squaredNorm();
      worst_gamma =
          std::max(worst_gamma, std::sqrt(s) * std::pow(R, 2.0 + delta));
    }
    rep.metric_ratio.push_back(worst_g);
    rep.christoffel_ratio.push_back(worst_gamma);
  }
  rep.sup_metric =
      *std::max_element(rep.metric_ratio.begin(), rep.metric_ratio.end());
  rep.sup_christoffel = *std::max_element(rep.christoffel_ratio.begin(),
                                          rep.christoffel_ratio.end());
  rep.pass = rep.sup_metric <= threshold && rep.sup_christoffel <= threshold;
  return rep;
}

}  // namespace cmcflow
