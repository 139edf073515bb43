#include "cmcflow/norms.hpp"

#include <cmath>

namespace cmcflow {

namespace {

// Symmetric 2x2 component lookup for arrays {a11, a12, a22}.
inline const Eigen::ArrayXd& sym(const Eigen::ArrayXd& a11,
                                 const Eigen::ArrayXd& a12,
                                 const Eigen::ArrayXd& a22, int i, int j) {
  if (i == 0 && j == 0) return a11;
  if (i == 1 && j == 1) return a22;
  return a12;
}

}  // namespace

SurfaceCalculus::SurfaceCalculus(const SurfaceFields& fields)
    : fields_(&fields) {
  const auto& f = *fields_;
  // dg[l][i][j] = d_l g_ij, spectral.
  Eigen::ArrayXd dg[2][2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j) {
      const Eigen::ArrayXd& gij = sym(f.g11, f.g12, f.g22, i, j);
      for (int l = 0; l < 2; ++l) dg[l][i][j] = dg[l][j][i] = partial(gij, l);
    }
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Eigen::ArrayXd s = Eigen::ArrayXd::Zero(f.g11.size());
        for (int l = 0; l < 2; ++l) {
          const Eigen::ArrayXd& ginv_kl =
              sym(f.ginv11, f.ginv12, f.ginv22, k, l);
          s += 0.5 * ginv_kl * (dg[i][l][j] + dg[j][l][i] - dg[l][i][j]);
        }
        gam_[k][i][j] = s;
      }
}

Eigen::ArrayXd SurfaceCalculus::partial(const Eigen::ArrayXd& samples,
                                        int axis) const {
  const auto& b = *fields_->basis;
  const Eigen::VectorXd c = b.analyze(samples.matrix());
  return axis == 0 ? (b.d_theta() * c).array() : (b.d_phi() * c).array();
}

TensorField SurfaceCalculus::gradient(const Eigen::ArrayXd& samples) const {
  TensorField t;
  t.rank = 1;
  t.comps = {partial(samples, 0), partial(samples, 1)};
  return t;
}

TensorField SurfaceCalculus::covariant_derivative(const TensorField& t) const {
  if (t.rank > 2)
    throw UnsupportedOrder("covariant derivative supports rank <= 2");
  const int r = t.rank;
  TensorField out;
  out.rank = r + 1;
  out.comps.resize(size_t(1) << out.rank);
  for (int k = 0; k < 2; ++k)
    for (size_t idx = 0; idx < t.comps.size(); ++idx) {
      Eigen::ArrayXd v = partial(t.comps[idx], k);
      // One Christoffel correction per existing slot.
      for (int s = 0; s < r; ++s) {
        const int shift = r - 1 - s;
        const int is = int(idx >> shift) & 1;
        for (int l = 0; l < 2; ++l) {
          const size_t swapped = (idx & ~(size_t(1) << shift)) |
                                 (size_t(l) << shift);
          v -= gam_[l][k][is] * t.comps[swapped];
        }
      }
      out.comps[(size_t(k) << r) | idx] = v;
    }
  return out;
}

Eigen::ArrayXd SurfaceCalculus::pointwise_norm(const TensorField& t) const {
  const auto& f = *fields_;
  Eigen::ArrayXd n2 = Eigen::ArrayXd::Zero(f.g11.size());
  const int r = t.rank;
  for (size_t a = 0; a < t.comps.size(); ++a)
    for (size_t b = 0; b < t.comps.size(); ++b) {
      Eigen::ArrayXd term = t.comps[a] * t.comps[b];
      for (int s = 0; s < r; ++s) {
        const int shift = r - 1 - s;
        const int ia = int(a >> shift) & 1;
        const int ib = int(b >> shift) & 1;
        term *= sym(f.ginv11, f.ginv12, f.ginv22, ia, ib);
      }
      n2 += term;
    }
  return n2.max(0.0).sqrt();
}

Eigen::ArrayXd SurfaceCalculus::gradient_inner(const Eigen::ArrayXd& a,
                                               const Eigen::ArrayXd& b) const {
  const auto& f = *fields_;
  const Eigen::ArrayXd at = partial(a, 0), ap = partial(a, 1);
  const Eigen::ArrayXd bt = partial(b, 0), bp = partial(b, 1);
  return f.ginv11 * at * bt + f.ginv12 * (at * bp + ap * bt) +
         f.ginv22 * ap * bp;
}

Eigen::ArrayXd SurfaceCalculus::intrinsic_scalar() const {
  // Brioschi formula for the Gaussian curvature from the induced metric
  // (E, F, G) = (g11, g12, g22); R = 2K.  All metric derivatives are
  // computed analytically from the ambient jet and exact angular
  // derivatives of the (bandlimited) radius function, so the result is
  // accurate up to roundoff even at the near-pole nodes, where spectral
  // analysis of chart-dependent quantities would lose accuracy.
  const auto& f = *fields_;
  const auto& b = *f.basis;
  const auto& grid = b.grid();
  const auto& s = f.surface;
  const int nn = int(f.g11.size());

  // Exact phi-differentiation in coefficient space: with the real
  // convention Y_{l,m>0} ~ cos(m phi), Y_{l,-m} ~ sin(m phi),
  // d_phi swaps +-m with factor -+m.
  Eigen::VectorXd cp = Eigen::VectorXd::Zero(s.coeffs.size());
  Eigen::VectorXd cpp = Eigen::VectorXd::Zero(s.coeffs.size());
  for (int l = 0; l <= s.l_max; ++l)
    for (int m = 1; m <= l; ++m) {
      const int ip = SphereBasis::index(l, m);
      const int im = SphereBasis::index(l, -m);
      cp[im] = -m * s.coeffs[ip];
      cp[ip] = m * s.coeffs[im];
      cpp[ip] = -double(m) * m * s.coeffs[ip];
      cpp[im] = -double(m) * m * s.coeffs[im];
    }
  const Eigen::ArrayXd r_ttp = (b.d_theta_theta() * cp).array();
  const Eigen::ArrayXd r_tpp = (b.d_theta() * cpp).array();

  Eigen::ArrayXd scalar(nn);
  for (int n = 0; n < nn; ++n) {
    const int it = grid.theta_index(n);
    const int jp = n - it * grid.n_phi;
    const double ct = grid.cos_theta[it], st = grid.sin_theta[it];
    const double cph = std::cos(grid.phi[jp]), sph = std::sin(grid.phi[jp]);

    const Vec3 u(st * cph, st * sph, ct);
    const Vec3 ut(ct * cph, ct * sph, -st);
    const Vec3 up(-st * sph, st * cph, 0.0);
    const Vec3 utt = -u;
    const Vec3 utp(-ct * sph, ct * cph, 0.0);
    const Vec3 upp(-st * cph, -st * sph, 0.0);
    const Vec3 uttp = -up;
    const Vec3 utpp(-ct * cph, -ct * sph, 0.0);

    const double r = f.geo.r[n];
    const double rt = f.geo.r_t[n], rp = f.geo.r_p[n];
    const double rtt = f.geo.r_tt[n], rtp = f.geo.r_tp[n],
                 rpp = f.geo.r_pp[n];

    const Vec3 Xt = rt * u + r * ut;
    const Vec3 Xp = rp * u + r * up;
    const Vec3 Xtt = rtt * u + 2.0 * rt * ut + r * utt;
    const Vec3 Xtp = rtp * u + rt * up + rp * ut + r * utp;
    const Vec3 Xpp = rpp * u + 2.0 * rp * up + r * upp;
    const Vec3 Xttp = r_ttp[n] * u + rtt * up + 2.0 * rtp * ut +
                      2.0 * rt * utp + rp * utt + r * uttp;
    const Vec3 Xtpp = r_tpp[n] * u + rpp * ut + 2.0 * rtp * up +
                      2.0 * rp * utp + rt * upp + r * utpp;

    const MetricJet jet = metric_jet(f.model, f.position[size_t(n)]);

    const auto pair = [](const Mat3& g, const Vec3& a, const Vec3& c) {
      return a.dot(g * c);
    };
    const auto dG = [&jet](const Vec3& w) -> Mat3 {
      return w[0] * jet.dg[0] + w[1] * jet.dg[1] + w[2] * jet.dg[2];
    };
    const auto ddG = [&jet](const Vec3& w1, const Vec3& w2) -> Mat3 {
      Mat3 m = Mat3::Zero();
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          m += w1[c] * w2[d] * jet.ddg[c][d];
      return m;
    };

    // d_k g_ij for g_ij = gbar(X_i, X_j).
    const auto d1 = [&](const Vec3& Xk, const Vec3& Xi, const Vec3& Xj,
                        const Vec3& Xik, const Vec3& Xjk) {
      return pair(dG(Xk), Xi, Xj) + pair(jet.g, Xik, Xj) +
             pair(jet.g, Xi, Xjk);
    };
    // d_l d_k g_ij; arguments carry all required mixed derivatives.
    const auto d2 = [&](const Vec3& Xl, const Vec3& Xk, const Vec3& Xi,
                        const Vec3& Xj, const Vec3& Xik, const Vec3& Xil,
                        const Vec3& Xjk, const Vec3& Xjl, const Vec3& Xkl,
                        const Vec3& Xikl, const Vec3& Xjkl) {
      return pair(ddG(Xl, Xk), Xi, Xj) + pair(dG(Xkl), Xi, Xj) +
             pair(dG(Xk), Xil, Xj) + pair(dG(Xk), Xi, Xjl) +
             pair(dG(Xl), Xik, Xj) + pair(jet.g, Xikl, Xj) +
             pair(jet.g, Xik, Xjl) + pair(dG(Xl), Xi, Xjk) +
             pair(jet.g, Xil, Xjk) + pair(jet.g, Xi, Xjkl);
    };

    const double E = f.g11[n], F = f.g12[n], G = f.g22[n];
    const double Eu = d1(Xt, Xt, Xt, Xtt, Xtt);
    const double Ev = d1(Xp, Xt, Xt, Xtp, Xtp);
    const double Fu = d1(Xt, Xt, Xp, Xtt, Xtp);
    const double Fv = d1(Xp, Xt, Xp, Xtp, Xpp);
    const double Gu = d1(Xt, Xp, Xp, Xtp, Xtp);
    const double Gv = d1(Xp, Xp, Xp, Xpp, Xpp);
    const double Evv = d2(Xp, Xp, Xt, Xt, Xtp, Xtp, Xtp, Xtp, Xpp, Xtpp, Xtpp);
    const double Fuv = d2(Xp, Xt, Xt, Xp, Xtt, Xtp, Xtp, Xpp, Xtp, Xttp, Xtpp);
    const double Guu = d2(Xt, Xt, Xp, Xp, Xtp, Xtp, Xtp, Xtp, Xtt, Xttp, Xttp);

    const double a11 = -0.5 * Evv + Fuv - 0.5 * Guu;
    const double a12 = 0.5 * Eu;
    const double a13 = Fu - 0.5 * Ev;
    const double a21 = Fv - 0.5 * Gu;
    const double a31 = 0.5 * Gv;
    const double b12 = 0.5 * Ev;
    const double b13 = 0.5 * Gu;

    const double det_g = E * G - F * F;
    const double det1 = a11 * det_g - a12 * (a21 * G - F * a31) +
                        a13 * (a21 * F - E * a31);
    const double det2 =
        -b12 * (b12 * G - F * b13) + b13 * (b12 * F - E * b13);
    scalar[n] = 2.0 * (det1 - det2) / (det_g * det_g);
  }
  return scalar;
}

double lp_norm(const SurfaceFields& fields, const Eigen::ArrayXd& samples,
               double p) {
  if (p < 1.0) throw UnsupportedOrder("Lp norm requires p >= 1");
  if (std::isinf(p)) return samples.abs().maxCoeff();
  const double integral = (fields.wdmu * samples.abs().pow(p)).sum();
  return std::pow(integral, 1.0 / p);
}

double lp_norm(const SurfaceCalculus& calc, const TensorField& t, double p) {
  return lp_norm(calc.fields(), calc.pointwise_norm(t), p);
}

namespace {

double sobolev_tensor(const SurfaceCalculus& calc, const TensorField& t, int k,
                      double p, double sigma) {
  const double base = lp_norm(calc, t, p);
  if (k == 0) return base;
  return base +
         sigma * sobolev_tensor(calc, calc.covariant_derivative(t), k - 1, p,
                                sigma);
}

}  // namespace

double sobolev_norm(const SurfaceCalculus& calc, const Eigen::ArrayXd& samples,
                    int k, double p, double sigma) {
  if (k < 0 || k > 2)
    throw UnsupportedOrder("sobolev_norm supports k in {0, 1, 2}");
  return lp_norm(calc.fields(), samples, p) +
         sigma * sobolev_tensor(calc, calc.gradient(samples), k, p, sigma);
}

}  // namespace cmcflow
