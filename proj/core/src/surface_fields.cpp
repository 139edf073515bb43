#include "cmcflow/fields.hpp"

#include <cmath>
#include <limits>

namespace cmcflow {

namespace {

struct SphereDirs {
  Vec3 u, ut, up, utt, utp, upp;
};

SphereDirs sphere_dirs(double ct, double st, double cp, double sp) {
  SphereDirs d;
  d.u = {st * cp, st * sp, ct};
  d.ut = {ct * cp, ct * sp, -st};
  d.up = {-st * sp, st * cp, 0.0};
  d.utt = -d.u;
  d.utp = {-ct * sp, ct * cp, 0.0};
  d.upp = {-st * cp, -st * sp, 0.0};
  return d;
}

}  // namespace

SurfaceFields fundamental_forms(const MetricModel& model,
                                const GraphSurface& surface,
                                bool with_curvature) {
  SurfaceFields f;
  f.surface = surface;
  f.model = model;
  f.basis = surface.basis();
  f.geo = synthesize(surface);
  f.has_curvature = with_curvature;

  const QuadratureGrid& grid = f.basis->grid();
  const int nn = grid.node_count();
  f.position.resize(nn);
  f.x_theta.resize(nn);
  f.x_phi.resize(nn);
  f.normal.resize(nn);
  f.normal_cov.resize(nn);
  f.normal_e.resize(nn);
  for (auto* a : {&f.g11, &f.g12, &f.g22, &f.ge11, &f.ge12, &f.ge22,
                  &f.ginv11, &f.ginv12, &f.ginv22, &f.h11, &f.h12, &f.h22,
                  &f.he11, &f.he12, &f.he22, &f.H, &f.He, &f.A2, &f.Ao2,
                  &f.Ao2e, &f.kappa1, &f.kappa2, &f.nu_dot_u, &f.wdmu,
                  &f.wdmu_e, &f.xnorm, &f.ric_nu_nu, &f.ambient_scalar})
    a->resize(nn);

  for (int n = 0; n < nn; ++n) {
    const int it = grid.theta_index(n);
    const int jp = n - it * grid.n_phi;
    const auto d = sphere_dirs(grid.cos_theta[it], grid.sin_theta[it],
                               std::cos(grid.phi[jp]), std::sin(grid.phi[jp]));
    const double r = f.geo.r[n];
    const double rt = f.geo.r_t[n], rp = f.geo.r_p[n];
    const Vec3 X = surface.center + r * d.u;
    const Vec3 Xt = rt * d.u + r * d.ut;
    const Vec3 Xp = rp * d.u + r * d.up;
    const Vec3 Xtt = f.geo.r_tt[n] * d.u + 2.0 * rt * d.ut + r * d.utt;
    const Vec3 Xtp = f.geo.r_tp[n] * d.u + rt * d.up + rp * d.ut + r * d.utp;
    const Vec3 Xpp = f.geo.r_pp[n] * d.u + 2.0 * rp * d.up + r * d.upp;

    f.position[n] = X;
    f.x_theta[n] = Xt;
    f.x_phi[n] = Xp;
    f.xnorm[n] = X.norm();

    const MetricJet jet = metric_jet(model, X);
    const Mat3& G = jet.g;
    const auto gamma = christoffels(jet);

    f.g11[n] = Xt.dot(G * Xt);
    f.g12[n] = Xt.dot(G * Xp);
    f.g22[n] = Xp.dot(G * Xp);
    f.ge11[n] = Xt.dot(Xt);
    f.ge12[n] = Xt.dot(Xp);
    f.ge22[n] = Xp.dot(Xp);

    const double det = f.g11[n] * f.g22[n] - f.g12[n] * f.g12[n];
    const double det_e = f.ge11[n] * f.ge22[n] - f.ge12[n] * f.ge12[n];
    if (det <= 0.0)
      throw GraphConditionViolated("induced metric degenerate at a node");
    f.ginv11[n] = f.g22[n] / det;
    f.ginv12[n] = -f.g12[n] / det;
    f.ginv22[n] = f.g11[n] / det;

    // Euclidean cross product annihilates both tangents in any metric
    // once the index is raised with g^{-1}.
    Vec3 cr = Xt.cross(Xp);
    if (cr.dot(d.u) < 0.0) cr = -cr;
    const Vec3 nu_raw = G.inverse() * cr;
    const double nu_len = std::sqrt(nu_raw.dot(G * nu_raw));
    const Vec3 nu = nu_raw / nu_len;
    f.normal[n] = nu;
    f.normal_cov[n] = G * nu;
    f.normal_e[n] = cr.normalized();
    f.nu_dot_u[n] = f.normal_cov[n].dot(d.u);
    if (f.nu_dot_u[n] <= 0.0)
      throw GraphConditionViolated("graph condition g(nu, u) <= 0 at a node");

    // h_ij = -nu_a (d_i d_j X^a + Gamma^a_bc X_i^b X_j^c)
    auto second_form = [&](const Vec3& nu_cov, const Vec3& dd, const Vec3& Ti,
                           const Vec3& Tj, bool physical) {
      double val = nu_cov.dot(dd);
      if (physical)
        for (int a = 0; a < 3; ++a)
          val += nu_cov[a] * Ti.dot(gamma[a] * Tj);
      return -val;
    };
    f.h11[n] = second_form(f.normal_cov[n], Xtt, Xt, Xt, true);
    f.h12[n] = second_form(f.normal_cov[n], Xtp, Xt, Xp, true);
    f.h22[n] = second_form(f.normal_cov[n], Xpp, Xp, Xp, true);
    f.he11[n] = second_form(f.normal_e[n], Xtt, Xt, Xt, false);
    f.he12[n] = second_form(f.normal_e[n], Xtp, Xt, Xp, false);
    f.he22[n] = second_form(f.normal_e[n], Xpp, Xp, Xp, false);

    f.H[n] = f.ginv11[n] * f.h11[n] + 2.0 * f.ginv12[n] * f.h12[n] +
             f.ginv22[n] * f.h22[n];
    f.He[n] = (f.ge22[n] * f.he11[n] - 2.0 * f.ge12[n] * f.he12[n] +
               f.ge11[n] * f.he22[n]) /
              det_e;

    // |A|^2 = g^{ik} g^{jl} h_ij h_kl via the shape operator S = g^{-1} h.
    const double s11 = f.ginv11[n] * f.h11[n] + f.ginv12[n] * f.h12[n];
    const double s12 = f.ginv11[n] * f.h12[n] + f.ginv12[n] * f.h22[n];
    const double s21 = f.ginv12[n] * f.h11[n] + f.ginv22[n] * f.h12[n];
    const double s22 = f.ginv12[n] * f.h12[n] + f.ginv22[n] * f.h22[n];
    f.A2[n] = s11 * s11 + 2.0 * s12 * s21 + s22 * s22;
    f.Ao2[n] = f.A2[n] - 0.5 * f.H[n] * f.H[n];

    const double dets = s11 * s22 - s12 * s21;
    const double disc = std::max(f.H[n] * f.H[n] - 4.0 * dets, 0.0);
    f.kappa1[n] = 0.5 * (f.H[n] - std::sqrt(disc));
    f.kappa2[n] = 0.5 * (f.H[n] + std::sqrt(disc));

    const double e11 = (f.ge22[n] * f.he11[n] - f.ge12[n] * f.he12[n]) / det_e;
    const double e12 = (f.ge22[n] * f.he12[n] - f.ge12[n] * f.he22[n]) / det_e;
    const double e21 = (-f.ge12[n] * f.he11[n] + f.ge11[n] * f.he12[n]) / det_e;
    const double e22 = (-f.ge12[n] * f.he12[n] + f.ge11[n] * f.he22[n]) / det_e;
    f.Ao2e[n] = e11 * e11 + 2.0 * e12 * e21 + e22 * e22 - 0.5 * f.He[n] * f.He[n];

    const int ti = grid.theta_index(n);
    f.wdmu[n] = grid.weight[n] * std::sqrt(det) / grid.sin_theta[ti];
    f.wdmu_e[n] = grid.weight[n] * std::sqrt(det_e) / grid.sin_theta[ti];

    if (with_curvature) {
      const CurvatureData curv = curvature_from_jet(jet);
      f.ric_nu_nu[n] = nu.dot(curv.ricci * nu);
      f.ambient_scalar[n] = curv.scalar;
    } else {
      f.ric_nu_nu[n] = std::numeric_limits<double>::quiet_NaN();
      f.ambient_scalar[n] = std::numeric_limits<double>::quiet_NaN();
    }
  }

  f.area = f.wdmu.sum();
  f.area_e = f.wdmu_e.sum();
  return f;
}

Radii measures_and_radii(const SurfaceFields& fields) {
  Radii r;
  r.r_min = fields.xnorm.minCoeff();
  r.r_max = fields.xnorm.maxCoeff();
  r.area = fields.area;
  r.sigma_area = std::sqrt(fields.area / (4.0 * M_PI));
  return r;
}

Vec3 barycenter(const SurfaceFields& fields) {
  Vec3 z = Vec3::Zero();
  for (size_t n = 0; n < fields.position.size(); ++n)
    z += fields.wdmu[n] * fields.position[n];
  return z / fields.area;
}

double hawking_mass(const SurfaceFields& fields) {
  const double willmore = fields.integrate(fields.H * fields.H);
  return std::sqrt(fields.area / (16.0 * M_PI)) *
         (1.0 - willmore / (16.0 * M_PI));
}

double h_average(const SurfaceFields& fields) {
  return fields.integrate(fields.H) / fields.area;
}

double enclosed_volume(const MetricModel& model, const GraphSurface& surface,
                       double inner_radius, int radial_order) {
  const NodeGeometry geo = synthesize(surface);
  if (inner_radius <= 1.0)
    throw InnerSphereNotEnclosed("inner radius must exceed the chart radius 1");
  if (inner_radius >= geo.r.minCoeff())
    throw InnerSphereNotEnclosed("inner sphere pokes through the surface");

  std::vector<double> gl_x, gl_w;
  gauss_legendre(radial_order, gl_x, gl_w);

  const auto basis = surface.basis();
  const QuadratureGrid& grid = basis->grid();
  double volume = 0.0;
  for (int n = 0; n < grid.node_count(); ++n) {
    const Vec3& u = grid.direction[n];
    const double a = inner_radius, b = geo.r[n];
    double ray = 0.0;
    for (int k = 0; k < radial_order; ++k) {
      const double s = 0.5 * (b - a) * gl_x[k] + 0.5 * (a + b);
      const MetricJet jet = metric_jet(model, surface.center + s * u);
      ray += 0.5 * (b - a) * gl_w[k] * std::sqrt(jet.g.determinant()) * s * s;
    }
    volume += grid.weight[n] * ray;
  }
  return volume;
}

}  // namespace cmcflow
