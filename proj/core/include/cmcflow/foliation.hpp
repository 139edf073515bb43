#pragma once

#include <vector>

#include "cmcflow/flow.hpp"

namespace cmcflow {

struct FoliationSpec {
  std::vector<double> radii;  // strictly increasing, min > 4
  FlowConfig config;
  MetricModel model;
  int l_max = 16;

  void validate() const;
};

struct Leaf {
  double initial_radius = 0.0;
  FlowStatus status = FlowStatus::GraphFailure;
  GraphSurface surface;
  double h_value = 0.0;
  double sigma = 0.0;
  double m_H = 0.0;
  double stability_eig = 0.0;
  double linf = 0.0;  // terminal ||H - h||_inf
};

/// Flows one coordinate sphere per radius to its CMC leaf; leaves run
/// concurrently (up to `jobs` at a time) and fail independently.
std::vector<Leaf> construct_foliation(const FoliationSpec& spec, int jobs = 0);

struct NestingReport {
  std::vector<double> min_gaps;  // per consecutive pair, co-graphed
  std::vector<bool> cograph_ok;  // false where co-graphing failed
  bool nested = false;
};

NestingReport nesting_check(const std::vector<Leaf>& leaves,
                            int samples_l_max = 24);

struct LeafAsymptoticsRow {
  double sigma = 0.0;
  double h = 0.0;
  double h_gap_scaled = 0.0;  // |h - 2/sigma| sigma^{3/2+delta}
  double m_H = 0.0;
};

struct LeafAsymptoticsReport {
  std::vector<LeafAsymptoticsRow> rows;
  // Log-log slope of |m_H - m_adm| vs sigma; NaN when every gap sits at
  // the quadrature floor (floor_hit = true).
  double mass_slope = 0.0;
  bool floor_hit = false;
};

LeafAsymptoticsReport leaf_asymptotics(const std::vector<Leaf>& leaves,
                                       double m_adm, double delta);

}  // namespace cmcflow
