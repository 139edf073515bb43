#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "cmcflow/ambient_reports.hpp"
#include "cmcflow/io.hpp"
#include "cmcflow/mass.hpp"

namespace {

using namespace cmcflow;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitFailed = 2;  // horizon reached / check failed
constexpr int kExitClassExit = 3;
constexpr int kExitGraphFailure = 4;

int status_code(FlowStatus status) {
  switch (status) {
    case FlowStatus::Converged: return kExitOk;
    case FlowStatus::HorizonReached: return kExitFailed;
    case FlowStatus::ClassExit: return kExitClassExit;
    case FlowStatus::GraphFailure: return kExitGraphFailure;
  }
  return kExitFailed;
}

int cmd_flow(const std::string& config_path) {
  const RunConfig config = run_config_from_json(load_json_file(config_path));
  const FlowResult result = run(config.surface, config.model, config.flow);

  if (!config.history_csv.empty())
    write_history_csv(config.history_csv, result.history);
  json summary = run_summary(result);
  if (!config.checkpoint_dir.empty()) {
    std::filesystem::create_directories(config.checkpoint_dir);
    const std::string path = config.checkpoint_dir + "/final_surface.json";
    save_json_file(path, to_json(result.final_surface));
    summary["final_surface"] = path;
  }
  if (!config.summary_json.empty()) save_json_file(config.summary_json, summary);
  std::cout << summary.dump(2) << '\n';
  return status_code(result.status);
}

int cmd_ambient(const std::string& config_path, const std::string& check) {
  const AmbientConfig config =
      ambient_config_from_json(load_json_file(config_path));
  json out;
  bool pass = true;
  if (check == "adm") {
    const MassEstimate est = adm_mass(config.model, config.adm_radii);
    out["value"] = est.value;
    out["rate"] = est.rate;
    out["residual"] = est.residual;
    json samples = json::array();
    for (const auto& [r, v] : est.samples)
      samples.push_back(json::array({r, v}));
    out["samples"] = samples;
  } else if (check == "decay") {
    const DecayReport rep =
        decay_check(config.model, config.radii, config.samples_per_radius);
    out["radii"] = rep.radii;
    out["metric_ratio"] = rep.metric_ratio;
    out["scalar_ratio"] = rep.scalar_ratio;
    out["cbar"] = rep.cbar;
    out["cbar_scalar"] = rep.cbar_scalar;
    out["decay_violated"] = rep.decay_violated;
    pass = !rep.decay_violated;
  } else if (check == "rt") {
    const RTReport rep = regge_teitelboim_check(
        config.model, config.radii, config.samples_per_radius,
        config.rt_threshold);
    out["radii"] = rep.radii;
    out["metric_ratio"] = rep.metric_ratio;
    out["christoffel_ratio"] = rep.christoffel_ratio;
    out["sup_metric"] = rep.sup_metric;
    out["sup_christoffel"] = rep.sup_christoffel;
    out["threshold"] = rep.threshold;
    out["pass"] = rep.pass;
    pass = rep.pass;
  } else {
    throw ConfigError("unknown ambient check \"" + check + "\"");
  }
  std::cout << out.dump(2) << '\n';
  return pass ? kExitOk : kExitFailed;
}

int cmd_spectrum(const std::string& config_path) {
  const SpectrumConfig config =
      spectrum_config_from_json(load_json_file(config_path));
  try {
    const SurfaceFields fields =
        fundamental_forms(config.model, config.surface, true);
    const OperatorMatrices matrices =
        assemble_operators(fields, config.surface.l_max);
    const EigenSystem eig = laplace_eigensystem(matrices, fields, config.k);
    const EigenEstimateReport est =
        eigen_estimate_report(eig, fields, hawking_mass(fields));

    json out;
    out["eigenvalues"] = std::vector<double>(
        eig.eigenvalues.data(), eig.eigenvalues.data() + eig.eigenvalues.size());
    out["min_eig_zero_mean"] = stability_spectrum_zero_mean(matrices);
    out["residual_scaled"] = {est.residual_scaled[0], est.residual_scaled[1],
                              est.residual_scaled[2]};
    out["cross_scaled"] = {est.cross_scaled[0], est.cross_scaled[1],
                           est.cross_scaled[2]};
    out["Pi"] = pi_functional(fields, std::sqrt(fields.area / (4.0 * M_PI)));
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  } catch (const ChartViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGraphFailure;
  } catch (const GraphConditionViolated& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGraphFailure;
  } catch (const NonPositiveRadius& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGraphFailure;
  }
}

int cmd_foliate(const std::string& config_path, int jobs) {
  const FoliationSpec spec =
      foliation_spec_from_json(load_json_file(config_path));
  const std::vector<Leaf> leaves = construct_foliation(spec, jobs);

  json out;
  json leaf_array = json::array();
  int worst = kExitOk;
  for (const auto& leaf : leaves) {
    leaf_array.push_back(to_json(leaf));
    worst = std::max(worst, status_code(leaf.status));
  }
  out["leaves"] = leaf_array;
  if (leaves.size() >= 2) {
    const NestingReport nesting = nesting_check(leaves);
    out["nesting"] = to_json(nesting);
    if (!nesting.nested) worst = std::max(worst, kExitFailed);
  }
  std::cout << out.dump(2) << '\n';
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Volume-preserving mean curvature flow toolkit"};
  app.require_subcommand(1);

  std::string flow_config, ambient_config, spectrum_config, foliate_config;
  std::string ambient_check = "decay";
  int jobs = 0;

  auto* flow_cmd = app.add_subcommand("flow", "Run a flow from a JSON config");
  flow_cmd->add_option("config", flow_config, "config file")->required();

  auto* ambient_cmd =
      app.add_subcommand("ambient", "Ambient metric checks and mass");
  ambient_cmd->add_option("config", ambient_config, "config file")->required();
  ambient_cmd->add_option("--check", ambient_check, "decay|rt|adm");

  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "Spectral analysis of one surface");
  spectrum_cmd->add_option("config", spectrum_config, "config file")
      ->required();

  auto* foliate_cmd = app.add_subcommand("foliate", "Construct CMC leaves");
  foliate_cmd->add_option("config", foliate_config, "config file")->required();
  foliate_cmd->add_option("--jobs", jobs, "max concurrent leaves");

  CLI11_PARSE(app, argc, argv);

  try {
    if (flow_cmd->parsed()) return cmd_flow(flow_config);
    if (ambient_cmd->parsed()) return cmd_ambient(ambient_config, ambient_check);
    if (spectrum_cmd->parsed()) return cmd_spectrum(spectrum_config);
    if (foliate_cmd->parsed()) return cmd_foliate(foliate_config, jobs);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGraphFailure;
  }
  return kExitConfig;
}
