#include "cmcflow/flow.hpp"

#include <cmath>

namespace cmcflow {

void FlowConfig::validate() const {
  if (cfl <= 0.0 || cfl > 1.0) throw ConfigError("cfl must lie in (0, 1]");
  if (tol_linf <= 0.0) throw ConfigError("tol_linf must be positive");
  if (t_max <= 0.0) throw ConfigError("t_max must be positive");
  if (diag_every < 1) throw ConfigError("diag_every must be >= 1");
  if (inner_radius <= 1.0)
    throw ConfigError("inner_radius must exceed the chart radius 1");
}

Eigen::ArrayXd radial_velocity(const SurfaceFields& fields, double h) {
  return -(fields.H - h) / fields.nu_dot_u;
}

namespace {

double time_step(const FlowConfig& config, double sigma, int l_max) {
  return config.cfl * sigma * sigma / double(l_max * (l_max + 1));
}

Eigen::VectorXd coefficient_rates(const SurfaceFields& fields) {
  const double h = h_average(fields);
  return fields.basis->analyze(radial_velocity(fields, h).matrix());
}

// Derivative of the enclosed volume w.r.t. a uniform radial offset.
double volume_slope(const MetricModel& model, const GraphSurface& surface) {
  const NodeGeometry geo = synthesize(surface);
  const auto basis = surface.basis();
  const QuadratureGrid& grid = basis->grid();
  double slope = 0.0;
  for (int n = 0; n < grid.node_count(); ++n) {
    const double r = geo.r[n];
    const MetricJet jet =
        metric_jet(model, surface.center + r * grid.direction[n]);
    slope += grid.weight[n] * std::sqrt(jet.g.determinant()) * r * r;
  }
  return slope;
}

// Restores the target volume by a uniform radial offset (scalar Newton).
double restore_volume(GraphSurface& surface, const MetricModel& model,
                      double target, double inner_radius) {
  const double y00 = 2.0 * std::sqrt(M_PI);  // radius unit in coeff space
  double offset = 0.0;
  for (int it = 0; it < 30; ++it) {
    const double v = enclosed_volume(model, surface, inner_radius);
    const double err = v - target;
    if (std::abs(err) <= 1e-10 * std::max(std::abs(target), 1.0)) return offset;
    const double dc = -err / volume_slope(model, surface);
    surface.coeffs[0] += dc * y00;
    offset += dc;
  }
  throw VolumeSolveFailure("volume-restoring Newton solve did not converge");
}

}  // namespace

FlowState init_state(const GraphSurface& initial, const MetricModel& model,
                     const FlowConfig& config) {
  config.validate();
  FlowState state;
  state.surface = initial;
  state.volume_target =
      enclosed_volume(model, initial, config.inner_radius);
  state.last_volume = state.volume_target;
  return state;
}

void step(FlowState& state, const FlowConfig& config, const MetricModel& model,
          const SurfaceFields* stage_fields) {
  SurfaceFields local;
  if (!stage_fields) {
    local = fundamental_forms(model, state.surface, false);
    stage_fields = &local;
  }
  const double sigma = std::sqrt(stage_fields->area / (4.0 * M_PI));
  const double dt = time_step(config, sigma, state.surface.l_max);

  const Eigen::VectorXd k1 = coefficient_rates(*stage_fields);
  GraphSurface next = state.surface;
  if (config.integrator == Integrator::Euler) {
    next.coeffs += dt * k1;
  } else {
    GraphSurface predictor = state.surface;
    predictor.coeffs += dt * k1;
    const Eigen::VectorXd k2 =
        coefficient_rates(fundamental_forms(model, predictor, false));
    next.coeffs += 0.5 * dt * (k1 + k2);
  }

  state.last_offset = 0.0;
  if (config.volume_correction) {
    state.last_offset =
        restore_volume(next, model, state.volume_target, config.inner_radius);
    state.last_volume = state.volume_target;
  } else {
    state.last_volume = enclosed_volume(model, next, config.inner_radius);
  }

  if (config.recenter) {
    const SurfaceFields check = fundamental_forms(model, next, false);
    const Vec3 z = barycenter(check);
    if ((z - next.center).norm() > 0.1 * sigma) {
      next = re_expand(next, z);
      // The reference region moved with the center; re-baseline so the
      // correction keeps conserving the re-expressed volume.
      state.volume_target =
          enclosed_volume(model, next, config.inner_radius);
      state.last_volume = state.volume_target;
    }
  }

  state.surface = next;
  state.t += dt;
  ++state.step_count;
}

DiagnosticsRow diagnostics(const FlowState& state, const MetricModel& model,
                           const FlowConfig& config, bool with_spectral,
                           const DiagnosticsRow* carry) {
  const SurfaceFields fields =
      fundamental_forms(model, state.surface, with_spectral);
  const Radii radii = measures_and_radii(fields);
  const double h = h_average(fields);
  const Eigen::ArrayXd dev = fields.H - h;

  DiagnosticsRow row;
  row.t = state.t;
  row.step = state.step_count;
  row.area = radii.area;
  row.sigma = radii.sigma_area;
  row.volume = state.last_volume;
  row.h = h;
  row.l2 = std::sqrt(fields.integrate(dev.square()));
  row.linf = dev.abs().maxCoeff();
  row.bary = barycenter(fields);
  row.m_H = hawking_mass(fields);
  row.offset = state.last_offset;

  if (!with_spectral) {
    if (carry) {
      row.ao_l4 = carry->ao_l4;
      row.grad_H_l4 = carry->grad_H_l4;
      row.a_eta = carry->a_eta;
      row.Pi = carry->Pi;
      row.l2_t = carry->l2_t;
      row.l2_d = carry->l2_d;
      row.lambda = carry->lambda;
      row.min_eig = carry->min_eig;
      row.round = carry->round;
      row.well_centered = carry->well_centered;
      row.lform = carry->lform;
      row.cubic = carry->cubic;
    }
    row.spectral_fresh = false;
    return row;
  }

  const SurfaceCalculus calc(fields);
  row.grad_H_l4 = lp_norm(calc, calc.gradient(fields.H), 4.0);

  RoundnessParams params = config.class_params;
  params.sigma = std::max(row.sigma, 1.0 + 1e-6);
  const RoundnessReport round_rep =
      roundness_classify(fields, radii, params, row.grad_H_l4, row.bary);
  row.ao_l4 = round_rep.ao_l4;
  row.a_eta = round_rep.a_eta;
  row.round = round_rep.round;
  row.well_centered = round_rep.well_centered;

  const OperatorMatrices matrices =
      assemble_operators(fields, state.surface.l_max);
  const int k = std::max(config.spectral_k, 5);
  const EigenSystem eig = laplace_eigensystem(matrices, fields, k);
  for (int i = 0; i < 4; ++i) row.lambda[i] = eig.eigenvalues[i + 1];
  row.min_eig = stability_spectrum_zero_mean(matrices);

  const SpectralSplit split = translational_split(dev, eig, fields);
  row.l2_t = std::sqrt(fields.integrate(split.w_t.square()));
  row.l2_d = std::sqrt(fields.integrate(split.w_d.square()));
  row.Pi = pi_functional(fields, row.sigma);
  row.lform = stability_form(dev, calc);
  row.cubic = fields.integrate(fields.H * dev.cube());
  row.spectral_fresh = true;
  return row;
}

FlowResult run(const GraphSurface& initial, const MetricModel& model,
               const FlowConfig& config) {
  FlowResult result;
  FlowState state;
  try {
    state = init_state(initial, model, config);
    const DiagnosticsRow* carry = nullptr;
    for (;;) {
      const bool spectral = state.step_count % config.diag_every == 0;
      DiagnosticsRow row = diagnostics(state, model, config, spectral, carry);
      result.history.push_back(row);
      carry = &result.history.back();
      if (row.spectral_fresh && !row.round) result.class_exit_seen = true;

      if (row.linf <= config.tol_linf) {
        result.status = FlowStatus::Converged;
        break;
      }
      if (state.t >= config.t_max) {
        result.status = result.class_exit_seen ? FlowStatus::ClassExit
                                               : FlowStatus::HorizonReached;
        break;
      }
      step(state, config, model);
    }
    // Make sure the terminal row carries fresh spectral columns.
    if (!result.history.empty() && !result.history.back().spectral_fresh) {
      result.history.back() =
          diagnostics(state, model, config, true, nullptr);
      if (!result.history.back().round) result.class_exit_seen = true;
    }
  } catch (const Error&) {
    result.status = FlowStatus::GraphFailure;
  }
  result.final_surface = state.surface;

  if (result.history.size() >= 8) {
    const double t1 = result.history.back().t;
    try {
      const DecayRates rates = decay_fit(result.history, 0.5 * t1, t1);
      result.rate_l2sq = rates.l2sq;
      result.rate_translational = rates.translational;
      result.rate_difference = rates.difference;
    } catch (const Error&) {
      // Fit unavailable (flat or short history); rates stay NaN.
    }
  }
  return result;
}

namespace {

std::vector<const DiagnosticsRow*> fresh_rows(const FlowHistory& history) {
  std::vector<const DiagnosticsRow*> rows;
  for (const auto& r : history)
    if (r.spectral_fresh) rows.push_back(&r);
  return rows;
}

}  // namespace

MonitorReport identity_monitor(const FlowHistory& history,
                               const MonitorOptions& options) {
  const auto rows = fresh_rows(history);
  if (rows.size() < 3)
    throw InsufficientHistory("identity monitor needs >= 3 diagnosed rows");

  MonitorReport rep;
  const double t_start = rows.front()->t;
  const double t_span = rows.back()->t - t_start;
  int decay_count = 0, decay_hold = 0;

  double l2sq_peak = 0.0;
  for (const auto* row : rows) l2sq_peak = std::max(l2sq_peak, row->l2 * row->l2);
  const double eps = std::numeric_limits<double>::epsilon();

  for (size_t i = 1; i + 1 < rows.size(); ++i) {
    const auto& prev = *rows[i - 1];
    const auto& cur = *rows[i];
    const auto& next = *rows[i + 1];
    const double dt = next.t - prev.t;
    if (dt <= 0.0) continue;

    const double l2sq = cur.l2 * cur.l2;
    // Below these scales the central differences are dominated by the
    // roundoff of the differenced quantity itself.
    const double area_floor = std::max(1e-14, 1e4 * eps * cur.area / dt);
    const double l2_floor = std::max(1e-14, 100.0 * eps * l2sq_peak / dt);

    const double d_area = (next.area - prev.area) / dt;
    if (l2sq > area_floor) {
      const double mismatch = std::abs(d_area + l2sq) / l2sq;
      rep.max_area_mismatch = std::max(rep.max_area_mismatch, mismatch);
    }

    const double d_l2sq =
        (next.l2 * next.l2 - prev.l2 * prev.l2) / dt;
    const double rhs = -2.0 * cur.lform - cur.cubic;
    if (std::abs(rhs) > l2_floor) {
      const double mismatch = std::abs(d_l2sq - rhs) / std::abs(rhs);
      rep.max_l2_mismatch = std::max(rep.max_l2_mismatch, mismatch);
    }

    const double d_h = (next.h - prev.h) / dt;
    rep.hdot_scale_max =
        std::max(rep.hdot_scale_max,
                 std::abs(d_h) * std::pow(cur.sigma, 4.0 + 2.0 * options.delta));

    if (cur.t - t_start >= options.transient_fraction * t_span &&
        l2sq > l2_floor) {
      const double s = cur.sigma;
      const double bound = -(4.0 * options.m_bar / (s * s * s)) * cur.l2_t *
                               cur.l2_t -
                           (2.0 / (s * s)) * cur.l2_d * cur.l2_d;
      const double slack = 0.05 * std::abs(bound) + 1e-15;
      ++decay_count;
      if (d_l2sq <= bound + slack) ++decay_hold;
    }
  }

  rep.area_ok = rep.max_area_mismatch <= options.rtol_area;
  rep.l2_ok = rep.max_l2_mismatch <= options.rtol_l2;
  rep.decay_fraction =
      decay_count > 0 ? double(decay_hold) / decay_count : 1.0;
  rep.decay_ok = rep.decay_fraction >= 0.95;
  return rep;
}

namespace {

// Least-squares slope of log(y) vs t; NaN when unusable.
double log_slope(const std::vector<double>& t, const std::vector<double>& y) {
  std::vector<double> tt, ly;
  for (size_t i = 0; i < y.size(); ++i)
    if (y[i] > 0.0) {
      tt.push_back(t[i]);
      ly.push_back(std::log(y[i]));
    }
  if (tt.size() < 5) return std::numeric_limits<double>::quiet_NaN();
  double mt = 0.0, my = 0.0;
  for (size_t i = 0; i < tt.size(); ++i) {
    mt += tt[i];
    my += ly[i];
  }
  mt /= tt.size();
  my /= tt.size();
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < tt.size(); ++i) {
    num += (tt[i] - mt) * (ly[i] - my);
    den += (tt[i] - mt) * (tt[i] - mt);
  }
  if (den <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return num / den;
}

}  // namespace

DecayRates decay_fit(const FlowHistory& history, double t0, double t1) {
  std::vector<double> t, l2sq, tsq, dsq;
  for (const auto& row : history) {
    if (!row.spectral_fresh || row.t < t0 || row.t > t1) continue;
    t.push_back(row.t);
    l2sq.push_back(row.l2 * row.l2);
    tsq.push_back(row.l2_t * row.l2_t);
    dsq.push_back(row.l2_d * row.l2_d);
  }
  if (t.size() < 5)
    throw DegenerateFit("decay fit needs >= 5 diagnosed rows in the window");

  DecayRates rates;
  const double s = log_slope(t, l2sq);
  if (std::isnan(s))
    throw DegenerateFit("||H-h||_2 vanished or was constant on the window");
  rates.l2sq = -s;
  rates.translational = -log_slope(t, tsq);
  rates.difference = -log_slope(t, dsq);
  return rates;
}

ClassInvarianceReport class_invariance_check(const FlowHistory& history,
                                             const RoundnessParams& params) {
  const auto rows = fresh_rows(history);
  if (rows.empty())
    throw InsufficientHistory("class invariance check needs diagnosed rows");
  params.validate();

  const double s = params.sigma;
  const double bound_ao = params.B1 * std::pow(s, -1.0 - params.delta);
  const double bound_a = params.B2 * std::pow(s, -8.0 - 4.0 * params.delta);
  const double bound_z = 3.0 * params.Bcen * std::pow(s, 1.0 - params.delta);

  ClassInvarianceReport rep;
  rep.traceless_ok = true;
  rep.oscillation_ok = true;
  rep.barycenter_ok = true;
  const double sigma0 = rows.front()->sigma;
  for (const auto* row : rows) {
    rep.traceless_ok = rep.traceless_ok && row->ao_l4 < bound_ao;
    rep.oscillation_ok = rep.oscillation_ok && row->a_eta < bound_a;
    rep.barycenter_ok = rep.barycenter_ok && row->bary.norm() < bound_z;
    rep.sigma_drop_scaled =
        std::max(rep.sigma_drop_scaled,
                 (sigma0 - row->sigma) * std::pow(s, params.delta - 0.5));
  }
  return rep;
}

}  // namespace cmcflow
