#pragma once

#include <string>

#include <json.hpp>

#include "cmcflow/flow.hpp"
#include "cmcflow/foliation.hpp"

namespace cmcflow {

using nlohmann::json;

/// Double formatting used for every CSV/JSON number: 17 significant
/// digits, round-trip exact.
std::string format_double(double value);

json to_json(const MetricModel& model);
MetricModel model_from_json(const json& j);

/// Accepts either explicit {"center", "L_max", "coeffs"} form or the
/// sphere shorthand {"sphere": {"center", "radius", "perturb"}}.
json to_json(const GraphSurface& surface);
GraphSurface surface_from_json(const json& j);

FlowConfig flow_config_from_json(const json& j);
RoundnessParams roundness_params_from_json(const json& j);

struct RunConfig {
  MetricModel model;
  GraphSurface surface;
  FlowConfig flow;
  std::string history_csv;
  std::string summary_json;
  std::string checkpoint_dir;
};

RunConfig run_config_from_json(const json& j);

struct SpectrumConfig {
  MetricModel model;
  GraphSurface surface;
  int k = 9;
};

SpectrumConfig spectrum_config_from_json(const json& j);

struct AmbientConfig {
  MetricModel model;
  std::vector<double> radii = {10.0, 100.0, 1000.0};
  std::vector<double> adm_radii = {100.0, 200.0, 400.0};
  int samples_per_radius = 64;
  double rt_threshold = 1.0;
};

AmbientConfig ambient_config_from_json(const json& j);

FoliationSpec foliation_spec_from_json(const json& j);

/// Fixed column order, one row per recorded step; floats per
/// format_double, booleans as 0/1.
void write_history_csv(const std::string& path, const FlowHistory& history);

json run_summary(const FlowResult& result);
json to_json(const Leaf& leaf);
json to_json(const NestingReport& report);
json to_json(const LeafAsymptoticsReport& report);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace cmcflow
