#include "cmcflow/foliation.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <thread>

namespace cmcflow {

void FoliationSpec::validate() const {
  if (radii.empty()) throw ConfigError("foliation needs at least one radius");
  for (size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] <= 4.0)
      throw ConfigError("foliation radii must exceed 4");
    if (i > 0 && radii[i] <= radii[i - 1])
      throw ConfigError("foliation radii must be strictly increasing");
  }
  config.validate();
  model.validate();
}

namespace {

Leaf flow_leaf(const FoliationSpec& spec, double radius) {
  Leaf leaf;
  leaf.initial_radius = radius;
  const GraphSurface initial =
      GraphSurface::sphere(Vec3::Zero(), radius, spec.l_max);
  const FlowResult result = run(initial, spec.model, spec.config);
  leaf.status = result.status;
  leaf.surface = result.final_surface;
  if (result.status == FlowStatus::GraphFailure) return leaf;

  const SurfaceFields fields =
      fundamental_forms(spec.model, result.final_surface, true);
  leaf.h_value = h_average(fields);
  leaf.sigma = std::sqrt(fields.area / (4.0 * M_PI));
  leaf.m_H = hawking_mass(fields);
  leaf.linf = (fields.H - leaf.h_value).abs().maxCoeff();
  leaf.stability_eig = stability_spectrum_zero_mean(
      assemble_operators(fields, result.final_surface.l_max));
  return leaf;
}

}  // namespace

std::vector<Leaf> construct_foliation(const FoliationSpec& spec, int jobs) {
  spec.validate();
  if (jobs <= 0) jobs = int(std::thread::hardware_concurrency());
  if (jobs <= 0) jobs = 2;

  std::vector<Leaf> leaves(spec.radii.size());
  std::vector<std::future<Leaf>> pending;
  size_t next = 0, done = 0;
  while (done < spec.radii.size()) {
    while (next < spec.radii.size() && int(pending.size()) < jobs) {
      const double r = spec.radii[next++];
      pending.push_back(std::async(std::launch::async,
                                   [&spec, r] { return flow_leaf(spec, r); }));
    }
    Leaf leaf = pending.front().get();
    pending.erase(pending.begin());
    for (size_t i = 0; i < spec.radii.size(); ++i)
      if (spec.radii[i] == leaf.initial_radius) leaves[i] = std::move(leaf);
    ++done;
  }
  return leaves;
}

NestingReport nesting_check(const std::vector<Leaf>& leaves,
                            int samples_l_max) {
  if (leaves.size() < 2)
    throw ConfigError("nesting check needs at least 2 leaves");

  const QuadratureGrid grid(samples_l_max + 2, 2 * samples_l_max + 2);
  NestingReport rep;
  rep.nested = true;
  for (size_t i = 0; i + 1 < leaves.size(); ++i) {
    const GraphSurface& inner = leaves[i].surface;
    const GraphSurface& outer = leaves[i + 1].surface;
    const Vec3 center = 0.5 * (inner.center + outer.center);
    double min_gap = std::numeric_limits<double>::infinity();
    bool ok = true;
    try {
      for (int n = 0; n < grid.node_count(); ++n) {
        const Vec3& u = grid.direction[n];
        const double gap =
            ray_radius(outer, center, u) - ray_radius(inner, center, u);
        min_gap = std::min(min_gap, gap);
      }
    } catch (const CommonGraphFailure&) {
      ok = false;
      min_gap = std::numeric_limits<double>::quiet_NaN();
    }
    rep.min_gaps.push_back(min_gap);
    rep.cograph_ok.push_back(ok);
    rep.nested = rep.nested && ok && min_gap > 0.0;
  }
  return rep;
}

LeafAsymptoticsReport leaf_asymptotics(const std::vector<Leaf>& leaves,
                                       double m_adm, double delta) {
  if (leaves.size() < 3)
    throw DegenerateFit("leaf asymptotics needs at least 3 leaves");

  LeafAsymptoticsReport rep;
  std::vector<double> log_sigma, log_gap;
  for (const auto& leaf : leaves) {
    LeafAsymptoticsRow row;
    row.sigma = leaf.sigma;
    row.h = leaf.h_value;
    row.h_gap_scaled = std::abs(leaf.h_value - 2.0 / leaf.sigma) *
                       std::pow(leaf.sigma, 1.5 + delta);
    row.m_H = leaf.m_H;
    rep.rows.push_back(row);

    const double gap = std::abs(leaf.m_H - m_adm);
    if (gap > 1e-8) {
      log_sigma.push_back(std::log(leaf.sigma));
      log_gap.push_back(std::log(gap));
    }
  }

  if (log_sigma.size() < 3) {
    rep.floor_hit = true;
    rep.mass_slope = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < log_sigma.size(); ++i) {
    mx += log_sigma[i];
    my += log_gap[i];
  }
  mx /= log_sigma.size();
  my /= log_sigma.size();
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < log_sigma.size(); ++i) {
    num += (log_sigma[i] - mx) * (log_gap[i] - my);
    den += (log_sigma[i] - mx) * (log_sigma[i] - mx);
  }
  if (den <= 0.0) throw DegenerateFit("leaf sigmas do not separate");
  rep.mass_slope = num / den;
  return rep;
}

}  // namespace cmcflow
