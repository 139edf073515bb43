#pragma once

#include <Eigen/Dense>

#include "cmcflow/fields.hpp"
#include "cmcflow/norms.hpp"

namespace cmcflow {

/// Galerkin matrices of the Laplace-Beltrami and stability operators in
/// the spherical-harmonic basis pulled back to the surface.
struct OperatorMatrices {
  int l_basis = 0;
  Eigen::MatrixXd stiffness;  // oint <grad b_p, grad b_q>_g dmu
  Eigen::MatrixXd mass;       // oint b_p b_q dmu
  Eigen::MatrixXd potential;  // oint (|A|^2 + Ric(nu,nu)) b_p b_q dmu
};

struct EigenSystem {
  Eigen::VectorXd eigenvalues;  // ascending
  Eigen::MatrixXd coeffs;       // basis coefficients, one column per pair
  Eigen::MatrixXd samples;      // node samples, L^2(dmu)-orthonormal columns
};

struct SpectralSplit {
  Eigen::ArrayXd w_t;  // projection onto the span of eigenfunctions 1..3
  Eigen::ArrayXd w_d;  // remainder
  Eigen::Vector3d coefficients;
};

OperatorMatrices assemble_operators(const SurfaceFields& fields, int l_basis);

EigenSystem laplace_eigensystem(const OperatorMatrices& matrices,
                                const SurfaceFields& fields, int k);

SpectralSplit translational_split(const Eigen::ArrayXd& w,
                                  const EigenSystem& eig,
                                  const SurfaceFields& fields);

/// Quadratic form of the stability operator,
/// oint |grad u|^2 - (|A|^2 + Ric(nu,nu)) u^2 dmu.
double stability_form(const Eigen::ArrayXd& u, const SurfaceCalculus& calc);

/// Smallest eigenvalue of stiffness - potential restricted to the
/// mass-orthogonal complement of the constants.
double stability_spectrum_zero_mean(const OperatorMatrices& matrices);

/// Pi = sqrt(sum_a <H - h, nu_a / sigma>^2) with nu_a the ambient
/// covariant components of the normal.
double pi_functional(const SurfaceFields& fields, double sigma);

struct EigenEstimateReport {
  // Residual of lambda_a - h^2/2 - 6 m_H / sigma^3
  //   - oint (Ric(nu,nu) - (H^2 - h^2)/4) f_a^2 dmu, a = 1..3.
  Eigen::Vector3d residual;
  Eigen::Vector3d residual_scaled;  // times sigma^3
  Eigen::Vector3d cross;            // off-diagonal potentials (12, 13, 23)
  Eigen::Vector3d cross_scaled;
};

EigenEstimateReport eigen_estimate_report(const EigenSystem& eig,
                                          const SurfaceFields& fields,
                                          double m_H);

/// oint u^3 dmu; callers normalize by ||u||_2^3 for scale-free reporting.
double odd_power_check(const Eigen::ArrayXd& u_t, const SurfaceFields& fields);

}  // namespace cmcflow
