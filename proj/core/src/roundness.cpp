#include "cmcflow/roundness.hpp"

#include <cmath>

namespace cmcflow {

void RoundnessParams::validate() const {
  if (sigma <= 1.0) throw ConfigError("roundness sigma must exceed 1");
  if (eta <= 0.0 || B1 <= 0.0 || B2 <= 0.0 || Bcen <= 0.0)
    throw ConfigError("roundness constants must be positive");
  if (delta <= 0.0 || delta > 0.5)
    throw ConfigError("delta must lie in (0, 1/2]");
}

namespace {

double upper_margin(double attained, double bound) {
  return (bound - attained) / bound;
}

double lower_margin(double attained, double bound) {
  return (attained - bound) / bound;
}

}  // namespace

RoundnessReport roundness_classify(const SurfaceFields& fields,
                                   const Radii& radii,
                                   const RoundnessParams& params,
                                   double grad_H_l4, const Vec3& z) {
  params.validate();
  const double sigma = params.sigma;
  RoundnessReport rep;

  const double a_max = std::sqrt(std::max(fields.A2.maxCoeff(), 0.0));
  rep.margin_shape = upper_margin(a_max, std::sqrt(2.5) / sigma);

  rep.margin_principal =
      lower_margin(fields.kappa1.minCoeff(), 1.0 / (2.0 * sigma));

  const double s2 = sigma * sigma;
  rep.margin_area =
      std::min(upper_margin(radii.area, 5.0 * M_PI * s2),
               lower_margin(radii.area, 3.5 * M_PI * s2));

  rep.margin_radii = std::min(lower_margin(radii.r_min / sigma, 0.75),
                              upper_margin(radii.r_max / sigma, 1.25));

  rep.ao_l4 = std::pow(fields.integrate(fields.Ao2 * fields.Ao2), 0.25);
  rep.margin_traceless =
      upper_margin(rep.ao_l4, params.B1 * std::pow(sigma, -1.0 - params.delta));

  const double h = h_average(fields);
  const Eigen::ArrayXd dev = fields.H - h;
  const double dev_l4_4 = fields.integrate(dev.square().square());
  rep.a_eta = params.eta * std::pow(sigma, -4.0) * dev_l4_4 +
              std::pow(grad_H_l4, 4.0);
  rep.margin_oscillation = upper_margin(
      rep.a_eta, params.B2 * std::pow(sigma, -8.0 - 4.0 * params.delta));

  rep.margin_barycenter = upper_margin(
      z.norm(), params.Bcen * std::pow(sigma, 1.0 - params.delta));

  rep.round = rep.margin_shape > 0.0 && rep.margin_principal > 0.0 &&
              rep.margin_area > 0.0 && rep.margin_radii > 0.0 &&
              rep.margin_traceless > 0.0 && rep.margin_oscillation > 0.0;
  rep.well_centered = rep.round && rep.margin_barycenter > 0.0;
  return rep;
}

ComparisonReport euclidean_comparison(const SurfaceFields& fields) {
  const double delta = fields.model.delta;
  const int nn = int(fields.g11.size());
  ComparisonReport rep;

  const double a_max = std::sqrt(std::max(fields.A2.maxCoeff(), 0.0));
  const double r_min = fields.xnorm.minCoeff();
  rep.curvature_hypothesis_ok = a_max <= 10.0 / r_min;

  double h_row = 0.0, ao_row = 0.0;
  for (int n = 0; n < nn; ++n) {
    const double w_half = std::pow(fields.xnorm[n], 0.5 + delta);
    const double w_three = std::pow(fields.xnorm[n], 1.5 + delta);

    // 2x2 tensor norm in g: |T|^2 = g^{ik} g^{jl} T_ij T_kl.
    auto tensor_norm = [&](double t11, double t12, double t22) {
      const double gi[2][2] = {{fields.ginv11[n], fields.ginv12[n]},
                               {fields.ginv12[n], fields.ginv22[n]}};
      const double t[2][2] = {{t11, t12}, {t12, t22}};
      double n2 = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l)
              n2 += gi[i][k] * gi[j][l] * t[i][j] * t[k][l];
      return std::sqrt(std::max(n2, 0.0));
    };

    rep.metric_row = std::max(
        rep.metric_row,
        tensor_norm(fields.g11[n] - fields.ge11[n],
                    fields.g12[n] - fields.ge12[n],
                    fields.g22[n] - fields.ge22[n]) *
            w_half);

    const Vec3 dn = fields.normal[n] - fields.normal_e[n];
    const MetricJet jet = metric_jet(fields.model, fields.position[n]);
    rep.normal_row = std::max(
        rep.normal_row, std::sqrt(std::max(dn.dot(jet.g * dn), 0.0)) * w_half);

    rep.measure_row = std::max(
        rep.measure_row,
        std::abs(fields.wdmu[n] / fields.wdmu_e[n] - 1.0) * w_half);

    if (rep.curvature_hypothesis_ok) {
      h_row = std::max(h_row, std::abs(fields.H[n] - fields.He[n]) * w_three);
      const double half_h = 0.5 * fields.H[n];
      const double half_he = 0.5 * fields.He[n];
      ao_row = std::max(
          ao_row,
          tensor_norm((fields.h11[n] - half_h * fields.g11[n]) -
                          (fields.he11[n] - half_he * fields.ge11[n]),
                      (fields.h12[n] - half_h * fields.g12[n]) -
                          (fields.he12[n] - half_he * fields.ge12[n]),
                      (fields.h22[n] - half_h * fields.g22[n]) -
                          (fields.he22[n] - half_he * fields.ge22[n])) *
              w_three);
    }
  }
  if (rep.curvature_hypothesis_ok) {
    rep.mean_curvature_row = h_row;
    rep.traceless_row = ao_row;
  }
  return rep;
}

}  // namespace cmcflow
