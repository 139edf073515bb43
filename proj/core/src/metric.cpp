#include "cmcflow/metric.hpp"

#include <cmath>

#include "cmcflow/solid_harmonics.hpp"

namespace cmcflow {

namespace {

void check_chart(const Vec3& x) {
  if (x.norm() <= 1.0)
    throw ChartViolation("point inside the excluded ball |x| <= 1");
}

// Symmetric component basis: 0..5 -> (0,0),(1,1),(2,2),(0,1),(0,2),(1,2).
Mat3 component_basis(int comp) {
  static const int idx[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
  Mat3 e = Mat3::Zero();
  e(idx[comp][0], idx[comp][1]) = 1.0;
  e(idx[comp][1], idx[comp][0]) = 1.0;
  return e;
}

struct ScalarJet {
  double v = 0.0;
  Vec3 d = Vec3::Zero();
  Mat3 dd = Mat3::Zero();
};

// Jet of f(|x|) for a radial profile with given f'(r), f''(r).
ScalarJet radial_jet(const Vec3& x, double f, double fp, double fpp) {
  const double r = x.norm();
  const Vec3 u = x / r;
  ScalarJet out;
  out.v = f;
  out.d = fp * u;
  out.dd = fpp * (u * u.transpose()) +
           (fp / r) * (Mat3::Identity() - u * u.transpose());
  return out;
}

// Jet of |x|^{-s}.
ScalarJet power_jet(const Vec3& x, double s) {
  const double r = x.norm();
  const double f = std::pow(r, -s);
  const double fp = -s * std::pow(r, -s - 1.0);
  const double fpp = s * (s + 1.0) * std::pow(r, -s - 2.0);
  return radial_jet(x, f, fp, fpp);
}

void add_scaled_scalar_jet(MetricJet& jet, const ScalarJet& s, const Mat3& dir) {
  jet.g += s.v * dir;
  for (int c = 0; c < 3; ++c) jet.dg[c] += s.d[c] * dir;
  for (int c = 0; c < 3; ++c)
    for (int e = 0; e < 3; ++e) jet.ddg[c][e] += s.dd(c, e) * dir;
}

}  // namespace

void PerturbationSpec::validate() const {
  if (!std::isfinite(amplitude))
    throw ConfigError("perturbation amplitude must be finite");
  if (!(decay > 0.0)) throw ConfigError("perturbation decay exponent must be > 0");
  for (const auto& mode : modes) {
    if (mode.l < 0 || mode.l > 4 || std::abs(mode.m) > mode.l)
      throw ConfigError("perturbation mode (l, m) out of the supported range l <= 4");
    if (mode.component < 0 || mode.component > 5)
      throw ConfigError("perturbation tensor component must be in 0..5");
    const bool even = (mode.l % 2 == 0);
    if ((parity == Parity::Even) != even)
      throw ConfigError(
          "perturbation parity flag inconsistent with mode degrees "
          "(even parity needs even l, odd parity needs odd l)");
  }
}

void MetricModel::validate() const {
  if (kind != MetricKind::Euclidean && m < 0.0)
    throw ConfigError("Schwarzschild kinds require m >= 0");
  if (!(delta > 0.0 && delta <= 0.5))
    throw ConfigError("decay exponent delta must lie in (0, 1/2]");
  if (perturbation) perturbation->validate();
  if (kind == MetricKind::PerturbedSchwarzschild && !perturbation)
    throw ConfigError("PerturbedSchwarzschild requires a perturbation spec");
}

MetricModel MetricModel::euclidean() {
  MetricModel model;
  model.kind = MetricKind::Euclidean;
  model.cbar = 0.0;
  return model;
}

MetricModel MetricModel::schwarzschild(double mass) {
  MetricModel model;
  model.kind = MetricKind::Schwarzschild;
  model.m = mass;
  model.delta = 0.5;
  model.cbar = 3.0 * std::max(mass, 1.0);
  model.validate();
  return model;
}

MetricModel MetricModel::perturbed_schwarzschild(double mass, PerturbationSpec spec) {
  MetricModel model;
  model.kind = MetricKind::PerturbedSchwarzschild;
  model.m = mass;
  model.delta = 0.5;
  model.cbar = 3.0 * std::max(mass, 1.0) + spec.amplitude;
  model.perturbation = std::move(spec);
  model.validate();
  return model;
}

MetricJet metric_jet(const MetricModel& model, const Vec3& point) {
  check_chart(point);
  MetricJet jet;
  jet.g = Mat3::Identity();
  for (auto& m : jet.dg) m.setZero();
  for (auto& row : jet.ddg)
    for (auto& m : row) m.setZero();

  if (model.kind == MetricKind::Euclidean) return jet;

  // Conformal factor phi^4 with phi = 1 + m/(2r).
  const double r = point.norm();
  const double phi = 1.0 + model.m / (2.0 * r);
  const double phi_r = -model.m / (2.0 * r * r);
  const double phi_rr = model.m / (r * r * r);
  const double f = std::pow(phi, 4);
  const double fp = 4.0 * std::pow(phi, 3) * phi_r;
  const double fpp = 12.0 * phi * phi * phi_r * phi_r + 4.0 * std::pow(phi, 3) * phi_rr;

  jet.g.setZero();
  add_scaled_scalar_jet(jet, radial_jet(point, f, fp, fpp), Mat3::Identity());

  if (model.kind == MetricKind::PerturbedSchwarzschild && model.perturbation) {
    const auto& pert = *model.perturbation;
    for (const auto& mode : pert.modes) {
      // amplitude * |x|^{-(p+l)} * (r^l Y_lm)(x), the latter a polynomial.
      const Poly3& poly = solid_harmonic(mode.l, mode.m);
      const ScalarJet w = power_jet(point, pert.decay + mode.l);
      const double pv = poly.eval(point);
      const Vec3 pd = poly.gradient(point);
      const Mat3 pdd = poly.hessian(point);

      ScalarJet s;
      s.v = pv * w.v;
      s.d = pd * w.v + pv * w.d;
      s.dd = pdd * w.v + pd * w.d.transpose() + w.d * pd.transpose() + pv * w.dd;
      s.v *= pert.amplitude;
      s.d *= pert.amplitude;
      s.dd *= pert.amplitude;
      add_scaled_scalar_jet(jet, s, component_basis(mode.component));
    }
  }
  return jet;
}

std::array<Mat3, 3> christoffels(const MetricJet& jet) {
  const Mat3 ginv = jet.g.inverse();
  std::array<Mat3, 3> gamma;
  for (auto& m : gamma) m.setZero();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = b; c < 3; ++c) {
        double s = 0.0;
        for (int d = 0; d < 3; ++d)
          s += ginv(a, d) *
               (jet.dg[b](d, c) + jet.dg[c](d, b) - jet.dg[d](b, c));
        gamma[a](b, c) = 0.5 * s;
        gamma[a](c, b) = gamma[a](b, c);
      }
  return gamma;
}

CurvatureData curvature_from_jet(const MetricJet& jet) {
  CurvatureData out;
  out.g = jet.g;
  const Mat3 ginv = jet.g.inverse();
  out.gamma = christoffels(jet);

  // d_e g^{ad} = -g^{am} (d_e g_mn) g^{nd}
  std::array<Mat3, 3> dginv;
  for (int e = 0; e < 3; ++e) dginv[e] = -ginv * jet.dg[e] * ginv;

  // dgamma[e][a](b,c) = d_e Gamma^a_bc
  std::array<std::array<Mat3, 3>, 3> dgamma;
  for (int e = 0; e < 3; ++e)
    for (int a = 0; a < 3; ++a) {
      dgamma[e][a].setZero();
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          double s = 0.0;
          for (int d = 0; d < 3; ++d) {
            s += dginv[e](a, d) *
                 (jet.dg[b](d, c) + jet.dg[c](d, b) - jet.dg[d](b, c));
            s += ginv(a, d) *
                 (jet.ddg[e][b](d, c) + jet.ddg[e][c](d, b) - jet.ddg[e][d](b, c));
          }
          dgamma[e][a](b, c) = 0.5 * s;
        }
    }

  // R^a_{bcd} = d_c Gamma^a_db - d_d Gamma^a_cb
  //           + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb
  double up[3][3][3][3];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          double s = dgamma[c][a](d, b) - dgamma[d][a](c, b);
          for (int e = 0; e < 3; ++e)
            s += out.gamma[a](c, e) * out.gamma[e](d, b) -
                 out.gamma[a](d, e) * out.gamma[e](c, b);
          up[a][b][c][d] = s;
        }

  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      out.riemann[a][b].setZero();
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          double s = 0.0;
          for (int e = 0; e < 3; ++e) s += jet.g(a, e) * up[e][b][c][d];
          out.riemann[a][b](c, d) = s;
        }
    }

  out.ricci.setZero();
  for (int b = 0; b < 3; ++b)
    for (int d = 0; d < 3; ++d) {
      double s = 0.0;
      for (int a = 0; a < 3; ++a) s += up[a][b][a][d];
      out.ricci(b, d) = s;
    }
  out.scalar = (ginv * out.ricci).trace();
  return out;
}

CurvatureData curvature(const MetricModel& model, const Vec3& point) {
  return curvature_from_jet(metric_jet(model, point));
}

double CurvatureData::riemann_norm() const {
  const Mat3 ginv = g.inverse();
  double s = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          // raise all four indices against the lowered tensor
          double up = 0.0;
          for (int e = 0; e < 3; ++e)
            for (int f = 0; f < 3; ++f)
              for (int gg = 0; gg < 3; ++gg)
                for (int hh = 0; hh < 3; ++hh)
                  up += ginv(a, e) * ginv(b, f) * ginv(c, gg) * ginv(d, hh) *
                        riemann[e][f](gg, hh);
          s += up * riemann[a][b](c, d);
        }
  return std::sqrt(s);
}

}  // namespace cmcflow
