#pragma once

#include <array>
#include <limits>
#include <vector>

#include "cmcflow/fields.hpp"
#include "cmcflow/roundness.hpp"
#include "cmcflow/spectral.hpp"

namespace cmcflow {

enum class Integrator { Euler, Rk2 };

enum class FlowStatus { Converged, HorizonReached, ClassExit, GraphFailure };

struct FlowConfig {
  double cfl = 0.5;  // in (0, 1]
  Integrator integrator = Integrator::Rk2;
  bool volume_correction = true;
  double t_max = 1.0e4;
  double tol_linf = 1.0e-8;
  bool recenter = true;  // re-expand when barycenter drifts > 10% of sigma
  RoundnessParams class_params;
  int diag_every = 10;        // steps between full spectral diagnostics
  double inner_radius = 2.0;  // reference sphere for enclosed volume
  int spectral_k = 9;         // eigenpairs per spectral diagnostic

  void validate() const;
};

struct DiagnosticsRow {
  // Cheap columns, filled every step.
  double t = 0.0;
  long step = 0;
  double area = 0.0;
  double sigma = 0.0;
  double volume = 0.0;
  double h = 0.0;
  double l2 = 0.0;    // ||H - h||_{L^2}
  double linf = 0.0;  // ||H - h||_{L^inf}
  Vec3 bary = Vec3::Zero();
  double m_H = 0.0;
  double offset = 0.0;  // volume-restoring radial offset applied this step

  // Spectral columns, refreshed every diag_every steps and otherwise
  // carried forward with spectral_fresh = false.
  bool spectral_fresh = false;
  double ao_l4 = 0.0;
  double grad_H_l4 = 0.0;
  double a_eta = 0.0;
  double Pi = 0.0;
  double l2_t = 0.0;  // ||(H-h)^t||_2
  double l2_d = 0.0;  // ||(H-h)^d||_2
  std::array<double, 4> lambda{};  // lambda_1..lambda_4
  double min_eig = 0.0;            // min eig of L on zero-mean functions
  bool round = false;
  bool well_centered = false;
  double lform = 0.0;  // <L(H-h), H-h>
  double cubic = 0.0;  // oint H (H-h)^3 dmu
};

using FlowHistory = std::vector<DiagnosticsRow>;

struct FlowState {
  double t = 0.0;
  long step_count = 0;
  GraphSurface surface;
  double volume_target = 0.0;
  double last_volume = 0.0;
  double last_offset = 0.0;
};

struct FlowResult {
  FlowStatus status = FlowStatus::HorizonReached;
  GraphSurface final_surface;
  FlowHistory history;
  bool class_exit_seen = false;
  // Fitted exponential decay rates over the trailing half of the run;
  // NaN when a fit was not possible.
  double rate_l2sq = std::numeric_limits<double>::quiet_NaN();
  double rate_translational = std::numeric_limits<double>::quiet_NaN();
  double rate_difference = std::numeric_limits<double>::quiet_NaN();
};

/// Graph-form speed: rdot = -(H - h) / g(nu, u).
Eigen::ArrayXd radial_velocity(const SurfaceFields& fields, double h);

FlowState init_state(const GraphSurface& initial, const MetricModel& model,
                     const FlowConfig& config);

/// One explicit time step, including volume restoration and optional
/// re-centering. `stage_fields` may pass precomputed curvature-free
/// fields of the current surface to avoid recomputation.
void step(FlowState& state, const FlowConfig& config, const MetricModel& model,
          const SurfaceFields* stage_fields = nullptr);

DiagnosticsRow diagnostics(const FlowState& state, const MetricModel& model,
                           const FlowConfig& config, bool with_spectral,
                           const DiagnosticsRow* carry = nullptr);

FlowResult run(const GraphSurface& initial, const MetricModel& model,
               const FlowConfig& config);

struct MonitorOptions {
  double rtol_area = 0.02;
  double rtol_l2 = 0.05;
  double m_bar = 0.0;     // ADM mass for the translational decay bound
  double delta = 0.5;
  double transient_fraction = 0.1;  // skipped at the start for inequalities
};

struct MonitorReport {
  double max_area_mismatch = 0.0;  // d/dt area vs -||H-h||_2^2
  bool area_ok = false;
  double max_l2_mismatch = 0.0;  // d/dt ||H-h||_2^2 vs -2<L(H-h),H-h> - cubic
  bool l2_ok = false;
  double hdot_scale_max = 0.0;  // max |dh/dt| sigma^{4+2delta}
  double decay_fraction = 0.0;  // fraction of rows obeying the decay bound
  bool decay_ok = false;        // d/dt||H-h||^2 <= -(4 m/s^3)||t||^2 - (2/s^2)||d||^2
};

MonitorReport identity_monitor(const FlowHistory& history,
                               const MonitorOptions& options = {});

struct DecayRates {
  double l2sq = std::numeric_limits<double>::quiet_NaN();
  double translational = std::numeric_limits<double>::quiet_NaN();
  double difference = std::numeric_limits<double>::quiet_NaN();
};

/// Least-squares exponential rates (positive = decay) of the squared
/// norms over fresh rows with t in [t0, t1].
DecayRates decay_fit(const FlowHistory& history, double t0, double t1);

struct ClassInvarianceReport {
  bool traceless_ok = false;    // ||Ao||_4 < B1 sigma^{-1-delta} throughout
  bool oscillation_ok = false;  // a_eta < B2 sigma^{-8-4delta} throughout
  bool barycenter_ok = false;   // |z| < 3 Bcen sigma^{1-delta} throughout
  double sigma_drop_scaled = 0.0;  // max (sigma_0 - sigma_t) sigma^{delta-1/2}
};

ClassInvarianceReport class_invariance_check(const FlowHistory& history,
                                             const RoundnessParams& params);

}  // namespace cmcflow
