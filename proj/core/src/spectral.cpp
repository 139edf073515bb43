#include "cmcflow/spectral.hpp"

#include <cmath>

namespace cmcflow {

OperatorMatrices assemble_operators(const SurfaceFields& fields, int l_basis) {
  if (l_basis > fields.surface.l_max)
    throw BasisTooLarge("operator basis degree exceeds the surface basis");
  if (!fields.has_curvature)
    throw ConfigError("operator assembly needs ambient curvature data");

  const int nb = (l_basis + 1) * (l_basis + 1);
  const auto& b = *fields.basis;
  const auto Y = b.values().leftCols(nb);
  const auto Yt = b.d_theta().leftCols(nb);
  const auto Yp = b.d_phi().leftCols(nb);

  const Eigen::VectorXd w = fields.wdmu.matrix();
  const Eigen::VectorXd w11 = (fields.wdmu * fields.ginv11).matrix();
  const Eigen::VectorXd w12 = (fields.wdmu * fields.ginv12).matrix();
  const Eigen::VectorXd w22 = (fields.wdmu * fields.ginv22).matrix();
  const Eigen::VectorXd wpot =
      (fields.wdmu * (fields.A2 + fields.ric_nu_nu)).matrix();

  OperatorMatrices m;
  m.l_basis = l_basis;
  m.stiffness = Yt.transpose() * w11.asDiagonal() * Yt +
                Yt.transpose() * w12.asDiagonal() * Yp +
                Yp.transpose() * w12.asDiagonal() * Yt +
                Yp.transpose() * w22.asDiagonal() * Yp;
  m.mass = Y.transpose() * w.asDiagonal() * Y;
  m.potential = Y.transpose() * wpot.asDiagonal() * Y;
  m.stiffness = 0.5 * (m.stiffness + m.stiffness.transpose()).eval();
  m.mass = 0.5 * (m.mass + m.mass.transpose()).eval();
  m.potential = 0.5 * (m.potential + m.potential.transpose()).eval();
  return m;
}

EigenSystem laplace_eigensystem(const OperatorMatrices& matrices,
                                const SurfaceFields& fields, int k) {
  const int nb = int(matrices.mass.rows());
  if (k > nb) throw ConfigError("requested more eigenpairs than basis size");

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      matrices.stiffness, matrices.mass);
  if (solver.info() != Eigen::Success)
    throw EigensolverFailure("generalized eigensolve did not converge");

  EigenSystem eig;
  eig.eigenvalues = solver.eigenvalues().head(k);
  eig.coeffs = solver.eigenvectors().leftCols(k);
  eig.samples = fields.basis->values().leftCols(nb) * eig.coeffs;
  return eig;
}

SpectralSplit translational_split(const Eigen::ArrayXd& w,
                                  const EigenSystem& eig,
                                  const SurfaceFields& fields) {
  if (eig.eigenvalues.size() < 4)
    throw ConfigError("translational split needs eigenpairs 0..3");
  SpectralSplit split;
  split.w_t = Eigen::ArrayXd::Zero(w.size());
  for (int a = 1; a <= 3; ++a) {
    const Eigen::ArrayXd f = eig.samples.col(a).array();
    const double c = fields.integrate(w * f);
    split.coefficients[a - 1] = c;
    split.w_t += c * f;
  }
  split.w_d = w - split.w_t;
  return split;
}

double stability_form(const Eigen::ArrayXd& u, const SurfaceCalculus& calc) {
  const auto& f = calc.fields();
  if (!f.has_curvature)
    throw ConfigError("stability form needs ambient curvature data");
  const Eigen::ArrayXd grad2 = calc.gradient_inner(u, u);
  return f.integrate(grad2 - (f.A2 + f.ric_nu_nu) * u.square());
}

double stability_spectrum_zero_mean(const OperatorMatrices& matrices) {
  const int nb = int(matrices.mass.rows());
  // Constants are exactly the first basis function; the mass-orthogonal
  // complement of span{b_0} is the kernel of v^T where v = mass * e_0.
  const Eigen::VectorXd v = matrices.mass.col(0);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
  const Eigen::MatrixXd Q =
      qr.householderQ() * Eigen::MatrixXd::Identity(nb, nb).rightCols(nb - 1);

  const Eigen::MatrixXd A =
      Q.transpose() * (matrices.stiffness - matrices.potential) * Q;
  const Eigen::MatrixXd B = Q.transpose() * matrices.mass * Q;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      0.5 * (A + A.transpose()), 0.5 * (B + B.transpose()));
  if (solver.info() != Eigen::Success)
    throw EigensolverFailure("constrained stability eigensolve failed");
  return solver.eigenvalues()[0];
}

double pi_functional(const SurfaceFields& fields, double sigma) {
  const double h = h_average(fields);
  const Eigen::ArrayXd dev = fields.H - h;
  double sum = 0.0;
  for (int a = 0; a < 3; ++a) {
    Eigen::ArrayXd nu_a(dev.size());
    for (int n = 0; n < dev.size(); ++n) nu_a[n] = fields.normal_cov[n][a];
    const double inner = fields.integrate(dev * nu_a) / sigma;
    sum += inner * inner;
  }
  return std::sqrt(sum);
}

EigenEstimateReport eigen_estimate_report(const EigenSystem& eig,
                                          const SurfaceFields& fields,
                                          double m_H) {
  if (eig.eigenvalues.size() < 4)
    throw ConfigError("eigen estimate report needs eigenpairs 0..3");
  const double sigma = std::sqrt(fields.area / (4.0 * M_PI));
  const double h = h_average(fields);
  const Eigen::ArrayXd potential =
      fields.ric_nu_nu - 0.25 * (fields.H.square() - h * h);

  EigenEstimateReport rep;
  const double s3 = sigma * sigma * sigma;
  for (int a = 1; a <= 3; ++a) {
    const Eigen::ArrayXd f = eig.samples.col(a).array();
    const double corr = fields.integrate(potential * f.square());
    rep.residual[a - 1] =
        eig.eigenvalues[a] - 0.5 * h * h - 6.0 * m_H / s3 - corr;
    rep.residual_scaled[a - 1] = rep.residual[a - 1] * s3;
  }
  int slot = 0;
  for (int a = 1; a <= 3; ++a)
    for (int b = a + 1; b <= 3; ++b) {
      const Eigen::ArrayXd fa = eig.samples.col(a).array();
      const Eigen::ArrayXd fb = eig.samples.col(b).array();
      rep.cross[slot] = fields.integrate(potential * fa * fb);
      rep.cross_scaled[slot] = rep.cross[slot] * s3;
      ++slot;
    }
  return rep;
}

double odd_power_check(const Eigen::ArrayXd& u_t, const SurfaceFields& fields) {
  return fields.integrate(u_t * u_t * u_t);
}

}  // namespace cmcflow
