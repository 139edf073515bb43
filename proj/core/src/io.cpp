#include "cmcflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace cmcflow {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

Vec3 vec3_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3)
    throw ConfigError(std::string(what) + " must be an array of 3 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for \"") + key + "\"");
  }
}

}  // namespace

json to_json(const MetricModel& model) {
  json j;
  switch (model.kind) {
    case MetricKind::Euclidean: j["kind"] = "euclidean"; break;
    case MetricKind::Schwarzschild: j["kind"] = "schwarzschild"; break;
    case MetricKind::PerturbedSchwarzschild:
      j["kind"] = "perturbed_schwarzschild";
      break;
  }
  j["m"] = model.m;
  j["delta"] = model.delta;
  j["cbar"] = model.cbar;
  if (model.perturbation) {
    const auto& p = *model.perturbation;
    json modes = json::array();
    for (const auto& mode : p.modes)
      modes.push_back(json::array({mode.l, mode.m, mode.component}));
    j["perturbation"] = {{"amplitude", p.amplitude},
                         {"decay", p.decay},
                         {"modes", modes},
                         {"parity", p.parity == Parity::Even ? "even" : "odd"}};
  }
  return j;
}

MetricModel model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("model must be an object with a \"kind\" field");
  MetricModel model;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "euclidean")
    model.kind = MetricKind::Euclidean;
  else if (kind == "schwarzschild")
    model.kind = MetricKind::Schwarzschild;
  else if (kind == "perturbed_schwarzschild")
    model.kind = MetricKind::PerturbedSchwarzschild;
  else
    throw ConfigError("unknown metric kind \"" + kind + "\"");

  model.m = get_or(j, "m", 0.0);
  model.delta = get_or(j, "delta", 0.5);
  model.cbar = get_or(j, "cbar", 1.0);
  if (j.contains("perturbation")) {
    const json& p = j.at("perturbation");
    PerturbationSpec spec;
    spec.amplitude = get_or(p, "amplitude", 0.0);
    spec.decay = get_or(p, "decay", 1.0);
    const std::string parity = get_or<std::string>(p, "parity", "even");
    if (parity == "even")
      spec.parity = Parity::Even;
    else if (parity == "odd")
      spec.parity = Parity::Odd;
    else
      throw ConfigError("perturbation parity must be \"even\" or \"odd\"");
    if (p.contains("modes"))
      for (const auto& mode : p.at("modes")) {
        if (!mode.is_array() || mode.size() != 3)
          throw ConfigError("perturbation modes must be [l, m, component]");
        spec.modes.push_back(
            {mode[0].get<int>(), mode[1].get<int>(), mode[2].get<int>()});
      }
    model.perturbation = spec;
  }
  model.validate();
  return model;
}

json to_json(const GraphSurface& surface) {
  json j;
  j["center"] = vec3_to_json(surface.center);
  j["L_max"] = surface.l_max;
  j["coeffs"] = std::vector<double>(
      surface.coeffs.data(), surface.coeffs.data() + surface.coeffs.size());
  return j;
}

GraphSurface surface_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("surface must be a JSON object");
  if (j.contains("sphere")) {
    const json& s = j.at("sphere");
    const double radius = get_or(s, "radius", 0.0);
    if (radius <= 1.0) throw ConfigError("sphere radius must exceed 1");
    GraphSurface surface = GraphSurface::sphere(
        s.contains("center") ? vec3_from_json(s.at("center"), "sphere center")
                             : Vec3::Zero(),
        radius, get_or(s, "L_max", 16));
    if (s.contains("perturb"))
      for (const auto& p : s.at("perturb")) {
        if (!p.is_array() || p.size() != 3)
          throw ConfigError("sphere perturb entries must be [l, m, amp]");
        surface.perturb(p[0].get<int>(), p[1].get<int>(), p[2].get<double>());
      }
    return surface;
  }

  GraphSurface surface;
  if (j.contains("center"))
    surface.center = vec3_from_json(j.at("center"), "surface center");
  surface.l_max = get_or(j, "L_max", 16);
  if (!j.contains("coeffs"))
    throw ConfigError("surface needs \"coeffs\" or a \"sphere\" shorthand");
  const auto coeffs = j.at("coeffs").get<std::vector<double>>();
  const int expected = (surface.l_max + 1) * (surface.l_max + 1);
  if (int(coeffs.size()) != expected)
    throw ConfigError("surface coeffs must have (L_max+1)^2 entries");
  surface.coeffs =
      Eigen::Map<const Eigen::VectorXd>(coeffs.data(), coeffs.size());
  return surface;
}

RoundnessParams roundness_params_from_json(const json& j) {
  RoundnessParams params;
  params.sigma = get_or(j, "sigma", params.sigma);
  params.eta = get_or(j, "eta", params.eta);
  params.B1 = get_or(j, "B1", params.B1);
  params.B2 = get_or(j, "B2", params.B2);
  params.Bcen = get_or(j, "Bcen", params.Bcen);
  params.delta = get_or(j, "delta", params.delta);
  return params;
}

FlowConfig flow_config_from_json(const json& j) {
  FlowConfig config;
  config.cfl = get_or(j, "cfl", config.cfl);
  const std::string integrator = get_or<std::string>(j, "integrator", "rk2");
  if (integrator == "euler")
    config.integrator = Integrator::Euler;
  else if (integrator == "rk2")
    config.integrator = Integrator::Rk2;
  else
    throw ConfigError("integrator must be \"euler\" or \"rk2\"");
  config.volume_correction =
      get_or(j, "volume_correction", config.volume_correction);
  config.t_max = get_or(j, "t_max", config.t_max);
  config.tol_linf = get_or(j, "tol_linf", config.tol_linf);
  config.recenter = get_or(j, "recenter", config.recenter);
  config.diag_every = get_or(j, "diag_every", config.diag_every);
  config.inner_radius = get_or(j, "inner_radius", config.inner_radius);
  config.spectral_k = get_or(j, "spectral_k", config.spectral_k);
  if (j.contains("class_params"))
    config.class_params = roundness_params_from_json(j.at("class_params"));
  config.validate();
  return config;
}

RunConfig run_config_from_json(const json& j) {
  RunConfig config;
  if (!j.contains("model") || !j.contains("surface"))
    throw ConfigError("run config needs \"model\" and \"surface\"");
  config.model = model_from_json(j.at("model"));
  config.surface = surface_from_json(j.at("surface"));
  config.flow = j.contains("flow") ? flow_config_from_json(j.at("flow"))
                                   : FlowConfig{};
  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    config.history_csv = get_or<std::string>(o, "history_csv", "");
    config.summary_json = get_or<std::string>(o, "summary_json", "");
    config.checkpoint_dir = get_or<std::string>(o, "checkpoint_dir", "");
  }
  return config;
}

SpectrumConfig spectrum_config_from_json(const json& j) {
  SpectrumConfig config;
  if (!j.contains("model") || !j.contains("surface"))
    throw ConfigError("spectrum config needs \"model\" and \"surface\"");
  config.model = model_from_json(j.at("model"));
  config.surface = surface_from_json(j.at("surface"));
  config.k = get_or(j, "k", config.k);
  if (config.k < 5) throw ConfigError("spectrum k must be >= 5");
  return config;
}

AmbientConfig ambient_config_from_json(const json& j) {
  AmbientConfig config;
  if (!j.contains("model"))
    throw ConfigError("ambient config needs \"model\"");
  config.model = model_from_json(j.at("model"));
  config.radii = get_or(j, "radii", config.radii);
  config.adm_radii = get_or(j, "adm_radii", config.adm_radii);
  config.samples_per_radius =
      get_or(j, "samples_per_radius", config.samples_per_radius);
  config.rt_threshold = get_or(j, "rt_threshold", config.rt_threshold);
  return config;
}

FoliationSpec foliation_spec_from_json(const json& j) {
  FoliationSpec spec;
  if (!j.contains("model") || !j.contains("radii"))
    throw ConfigError("foliation config needs \"model\" and \"radii\"");
  spec.model = model_from_json(j.at("model"));
  spec.radii = j.at("radii").get<std::vector<double>>();
  if (j.contains("flow")) spec.config = flow_config_from_json(j.at("flow"));
  spec.l_max = get_or(j, "L_max", spec.l_max);
  spec.validate();
  return spec;
}

void write_history_csv(const std::string& path, const FlowHistory& history) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open history CSV \"" + path + "\"");
  out << "t,step,area,sigma,volume,h,l2_Hh,linf_Hh,l4_Ao,l4_gradH,a_eta,Pi,"
         "l2_t,l2_d,bary_x,bary_y,bary_z,m_H,lambda1,lambda2,lambda3,lambda4,"
         "min_eig,round,well_centered,spectral_fresh,lform,cubic,offset\n";
  for (const auto& r : history) {
    out << format_double(r.t) << ',' << r.step << ','
        << format_double(r.area) << ',' << format_double(r.sigma) << ','
        << format_double(r.volume) << ',' << format_double(r.h) << ','
        << format_double(r.l2) << ',' << format_double(r.linf) << ','
        << format_double(r.ao_l4) << ',' << format_double(r.grad_H_l4) << ','
        << format_double(r.a_eta) << ',' << format_double(r.Pi) << ','
        << format_double(r.l2_t) << ',' << format_double(r.l2_d) << ','
        << format_double(r.bary.x()) << ',' << format_double(r.bary.y()) << ','
        << format_double(r.bary.z()) << ',' << format_double(r.m_H) << ','
        << format_double(r.lambda[0]) << ',' << format_double(r.lambda[1])
        << ',' << format_double(r.lambda[2]) << ','
        << format_double(r.lambda[3]) << ',' << format_double(r.min_eig) << ','
        << (r.round ? 1 : 0) << ',' << (r.well_centered ? 1 : 0) << ','
        << (r.spectral_fresh ? 1 : 0) << ',' << format_double(r.lform) << ','
        << format_double(r.cubic) << ',' << format_double(r.offset) << '\n';
  }
}

namespace {

const char* status_name(FlowStatus status) {
  switch (status) {
    case FlowStatus::Converged: return "converged";
    case FlowStatus::HorizonReached: return "horizon_reached";
    case FlowStatus::ClassExit: return "class_exit";
    case FlowStatus::GraphFailure: return "graph_failure";
  }
  return "unknown";
}

json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

json run_summary(const FlowResult& result) {
  json j;
  j["status"] = status_name(result.status);
  j["steps"] = result.history.empty() ? 0 : result.history.back().step;
  if (!result.history.empty()) {
    const auto& last = result.history.back();
    j["final_sigma"] = last.sigma;
    j["final_h"] = last.h;
    j["final_linf"] = last.linf;
    j["final_m_H"] = last.m_H;
  }
  j["class_exit_seen"] = result.class_exit_seen;
  j["fitted_rates"] = {{"l2sq", finite_or_null(result.rate_l2sq)},
                       {"translational",
                        finite_or_null(result.rate_translational)},
                       {"difference", finite_or_null(result.rate_difference)}};
  return j;
}

json to_json(const Leaf& leaf) {
  json j;
  j["initial_radius"] = leaf.initial_radius;
  j["status"] = status_name(leaf.status);
  j["h"] = leaf.h_value;
  j["sigma"] = leaf.sigma;
  j["m_H"] = leaf.m_H;
  j["stability_eig"] = leaf.stability_eig;
  j["linf_Hh"] = leaf.linf;
  return j;
}

json to_json(const NestingReport& report) {
  json j;
  j["nested"] = report.nested;
  json gaps = json::array();
  for (size_t i = 0; i < report.min_gaps.size(); ++i)
    gaps.push_back({{"min_gap", finite_or_null(report.min_gaps[i])},
                    {"cograph_ok", report.cograph_ok[i]}});
  j["pairs"] = gaps;
  return j;
}

json to_json(const LeafAsymptoticsReport& report) {
  json j;
  json rows = json::array();
  for (const auto& row : report.rows)
    rows.push_back({{"sigma", row.sigma},
                    {"h", row.h},
                    {"h_gap_scaled", row.h_gap_scaled},
                    {"m_H", row.m_H}});
  j["rows"] = rows;
  j["mass_slope"] = finite_or_null(report.mass_slope);
  j["floor_hit"] = report.floor_hit;
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file \"" + path + "\"");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("JSON parse error: ") + e.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file \"" + path + "\"");
  out << j.dump(2) << '\n';
}

}  // namespace cmcflow
