#include <doctest.h>

#include <cmath>
#include <random>

#include "cmcflow/spectral.hpp"

using namespace cmcflow;

namespace {

SurfaceFields leaf_fields(const MetricModel& model, double r, int l_max = 12) {
  return fundamental_forms(model, GraphSurface::sphere({0, 0, 0}, r, l_max),
                           true);
}

// Flat model plus a parity-breaking O(1/r) perturbation; coordinate
// spheres in it are generic (no exact odd symmetry of eigenfunctions).
MetricModel parity_breaking_model() {
  PerturbationSpec spec;
  spec.amplitude = 0.3;
  spec.decay = 1.0;
  spec.modes = {{1, 0, 0}, {1, 1, 1}, {3, 2, 4}};
  spec.parity = Parity::Odd;
  return MetricModel::perturbed_schwarzschild(1.0, spec);
}

// Flat space with a negative 1/r conformal term: an effective negative
// mass without going through the (nonnegative) Schwarzschild parameter.
MetricModel negative_mass_model(double mass) {
  PerturbationSpec spec;
  // g = delta + a Y00 / r * delta with a Y00 = 2 m.
  spec.amplitude = 4.0 * std::sqrt(M_PI) * mass;
  spec.decay = 1.0;
  spec.modes = {{0, 0, 0}, {0, 0, 1}, {0, 0, 2}};
  spec.parity = Parity::Even;
  return MetricModel::perturbed_schwarzschild(0.0, spec);
}

double l2_dmu(const SurfaceFields& f, const Eigen::ArrayXd& u) {
  return std::sqrt(f.integrate(u.square()));
}

}  // namespace

TEST_CASE("operator assembly on round euclidean spheres") {
  SUBCASE("unit sphere, small basis") {
    const SurfaceFields f = leaf_fields(MetricModel::euclidean(), 2.0, 8);
    // Use radius 2 (chart excludes |x| <= 1); eigenvalues scale by 1/4.
    const OperatorMatrices m = assemble_operators(f, 2);
    REQUIRE(m.stiffness.rows() == 9);
    for (int l = 0; l <= 2; ++l)
      for (int mm = -l; mm <= l; ++mm) {
        const int i = SphereBasis::index(l, mm);
        CHECK(m.stiffness(i, i) ==
              doctest::Approx(double(l * (l + 1))).epsilon(1e-11).scale(1.0));
        CHECK(m.mass(i, i) == doctest::Approx(4.0).epsilon(1e-12));
      }
    Eigen::MatrixXd off = m.stiffness;
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() < 1e-11);
  }
  SUBCASE("scaling with the radius") {
    const double sigma = 3.0;
    const SurfaceFields f = leaf_fields(MetricModel::euclidean(), sigma, 8);
    const OperatorMatrices m = assemble_operators(f, 3);
    // Stiffness is scale invariant in 2d; mass carries sigma^2.
    CHECK(m.stiffness(SphereBasis::index(2, 1), SphereBasis::index(2, 1)) ==
          doctest::Approx(6.0).epsilon(1e-11));
    CHECK(m.mass(0, 0) == doctest::Approx(sigma * sigma).epsilon(1e-12));
  }
  SUBCASE("basis larger than the surface resolution is rejected") {
    const SurfaceFields f = leaf_fields(MetricModel::euclidean(), 2.0, 4);
    CHECK_THROWS_AS(assemble_operators(f, 5), BasisTooLarge);
  }
}

TEST_CASE("operator assembly on a schwarzschild sphere") {
  const SurfaceFields f = leaf_fields(MetricModel::schwarzschild(1.0), 20.0);
  const OperatorMatrices m = assemble_operators(f, 8);
  const double scale = m.stiffness.cwiseAbs().maxCoeff();
  CHECK((m.stiffness - m.stiffness.transpose()).cwiseAbs().maxCoeff() <
        1e-12 * scale);
  CHECK((m.mass - m.mass.transpose()).cwiseAbs().maxCoeff() <
        1e-12 * m.mass.cwiseAbs().maxCoeff());
  CHECK((m.potential - m.potential.transpose()).cwiseAbs().maxCoeff() <
        1e-12 * m.potential.cwiseAbs().maxCoeff());
  // The potential |A|^2 + Ric(nu, nu) is constant on a centered sphere,
  // so the potential matrix is that constant times the mass matrix.
  const double c = (f.A2 + f.ric_nu_nu).mean();
  CHECK((m.potential - c * m.mass).cwiseAbs().maxCoeff() <
        1e-10 * m.potential.cwiseAbs().maxCoeff());
  // Mass positive definite; stiffness PSD with a 1-dim kernel.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_m(m.mass);
  CHECK(es_m.eigenvalues().minCoeff() > 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_s(m.stiffness);
  CHECK(es_s.eigenvalues()[0] > -1e-10 * scale);
  CHECK(std::abs(es_s.eigenvalues()[0]) < 1e-10 * scale);
  CHECK(es_s.eigenvalues()[1] > 1e-6 * scale);
}

TEST_CASE("laplace eigensystem on a euclidean sphere") {
  const double sigma = 3.0;
  const SurfaceFields f = leaf_fields(MetricModel::euclidean(), sigma, 10);
  const OperatorMatrices m = assemble_operators(f, 8);
  const EigenSystem eig = laplace_eigensystem(m, f, 9);

  CHECK(std::abs(eig.eigenvalues[0]) < 1e-12);
  for (int a = 1; a <= 3; ++a)
    CHECK(eig.eigenvalues[a] ==
          doctest::Approx(2.0 / (sigma * sigma)).epsilon(1e-10));
  for (int a = 4; a <= 8; ++a)
    CHECK(eig.eigenvalues[a] ==
          doctest::Approx(6.0 / (sigma * sigma)).epsilon(1e-10));

  SUBCASE("orthonormality in L2(dmu)") {
    for (int a = 0; a < 9; ++a)
      for (int b = a; b < 9; ++b) {
        const double ip =
            f.integrate(eig.samples.col(a).array() * eig.samples.col(b).array());
        CHECK(ip == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-10).scale(1.0));
      }
  }
  SUBCASE("generalized eigenpair residuals") {
    for (int a = 0; a < 9; ++a) {
      const Eigen::VectorXd v = eig.coeffs.col(a);
      const double res =
          (m.stiffness * v - eig.eigenvalues[a] * (m.mass * v)).norm();
      CHECK(res <= 1e-8 * (m.mass * v).norm());
    }
  }
  SUBCASE("rayleigh consistency with the stability form") {
    const SurfaceCalculus calc(f);
    for (int a = 1; a <= 4; ++a) {
      const Eigen::ArrayXd u = eig.samples.col(a).array();
      const double expected =
          eig.eigenvalues[a] - f.integrate((f.A2 + f.ric_nu_nu) * u.square());
      CHECK(stability_form(u, calc) ==
            doctest::Approx(expected).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("laplace eigensystem on schwarzschild leaves") {
  const SurfaceFields f = leaf_fields(MetricModel::schwarzschild(1.0), 20.0);
  const Radii radii = measures_and_radii(f);
  const double sigma = radii.sigma_area;
  const OperatorMatrices m = assemble_operators(f, 8);
  const EigenSystem eig = laplace_eigensystem(m, f, 9);

  for (int a = 1; a <= 3; ++a)
    CHECK(std::abs(eig.eigenvalues[a] - 2.0 / (sigma * sigma)) <
          0.01 / (sigma * sigma * sigma));
  CHECK(eig.eigenvalues[4] > 5.0 / (sigma * sigma));

  SUBCASE("translational subspace aligns with degree-1 harmonics") {
    for (int a = 1; a <= 3; ++a) {
      const Eigen::VectorXd& c = eig.coeffs.col(a);
      double l1 = 0.0, total = c.squaredNorm();
      for (int mm = -1; mm <= 1; ++mm) {
        const double ci = c[SphereBasis::index(1, mm)];
        l1 += ci * ci;
      }
      CHECK(l1 / total > 1.0 - 1.0 / sigma);
    }
  }
}

TEST_CASE("translational split") {
  const SurfaceFields f = leaf_fields(MetricModel::schwarzschild(1.0), 15.0);
  const OperatorMatrices m = assemble_operators(f, 8);
  const EigenSystem eig = laplace_eigensystem(m, f, 9);

  SUBCASE("eigenfunction inputs") {
    const Eigen::ArrayXd f2 = eig.samples.col(2).array();
    const SpectralSplit s2 = translational_split(f2, eig, f);
    CHECK(l2_dmu(f, s2.w_t - f2) < 1e-10);
    CHECK(l2_dmu(f, s2.w_d) < 1e-10);

    const Eigen::ArrayXd f5 = eig.samples.col(5).array();
    const SpectralSplit s5 = translational_split(f5, eig, f);
    CHECK(l2_dmu(f, s5.w_t) < 1e-10);
  }
  SUBCASE("split is exact and orthogonal") {
    std::mt19937 rng(11);
    std::normal_distribution<double> gauss;
    Eigen::ArrayXd w(f.g11.size());
    for (auto& v : w) v = gauss(rng);
    const SpectralSplit s = translational_split(w, eig, f);
    CHECK((w - s.w_t - s.w_d).abs().maxCoeff() < 1e-12 * w.abs().maxCoeff());
    CHECK(std::abs(f.integrate(s.w_t * s.w_d)) < 1e-10 * f.area);
    // Idempotence of the projector.
    const SpectralSplit ss = translational_split(s.w_t, eig, f);
    CHECK(l2_dmu(f, ss.w_t - s.w_t) < 1e-10);
    CHECK(l2_dmu(f, ss.w_d) < 1e-10);
  }
  SUBCASE("projector depends only on the subspace") {
    // The triple lambda_1..3 is numerically degenerate, so individual
    // eigenvectors are arbitrary; the rank-3 projector must not be.
    const EigenSystem eig2 = laplace_eigensystem(m, f, 4);
    std::mt19937 rng(13);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 3; ++trial) {
      Eigen::ArrayXd w(f.g11.size());
      for (auto& v : w) v = gauss(rng);
      const SpectralSplit a = translational_split(w, eig, f);
      const SpectralSplit b = translational_split(w, eig2, f);
      CHECK(l2_dmu(f, a.w_t - b.w_t) < 1e-8 * l2_dmu(f, w));
    }
  }
}

TEST_CASE("stability form and zero-mean spectrum") {
  SUBCASE("euclidean neutrality and the l=2 gap") {
    const double sigma = 4.0;
    const SurfaceFields f = leaf_fields(MetricModel::euclidean(), sigma, 10);
    const SurfaceCalculus calc(f);
    const OperatorMatrices m = assemble_operators(f, 8);
    const EigenSystem eig = laplace_eigensystem(m, f, 9);

    const Eigen::ArrayXd u1 = eig.samples.col(1).array();
    CHECK(std::abs(stability_form(u1, calc)) < 1e-10);
    const Eigen::ArrayXd u4 = eig.samples.col(4).array();
    CHECK(stability_form(u4, calc) ==
          doctest::Approx(4.0 / (sigma * sigma)).epsilon(1e-9));

    CHECK(std::abs(stability_spectrum_zero_mean(m)) < 1e-10);
  }
  SUBCASE("schwarzschild leaf is strictly stable") {
    const SurfaceFields f = leaf_fields(MetricModel::schwarzschild(1.0), 20.0);
    const Radii radii = measures_and_radii(f);
    const double sigma = radii.sigma_area;
    const double m_H = hawking_mass(f);
    const OperatorMatrices m = assemble_operators(f, 8);
    const double min_eig = stability_spectrum_zero_mean(m);
    const double target = 6.0 * m_H / (sigma * sigma * sigma);
    CHECK(min_eig > 0.0);
    CHECK(min_eig > 0.5 * target);
    CHECK(min_eig < 2.0 * target);
  }
  SUBCASE("negative mass destabilizes") {
    const SurfaceFields f = leaf_fields(negative_mass_model(-0.5), 20.0);
    const OperatorMatrices m = assemble_operators(f, 8);
    CHECK(stability_spectrum_zero_mean(m) < 0.0);
  }
}

TEST_CASE("pi functional") {
  SUBCASE("exact CMC surfaces give zero") {
    const SurfaceFields f = leaf_fields(MetricModel::schwarzschild(1.0), 15.0);
    const Radii radii = measures_and_radii(f);
    CHECK(std::abs(pi_functional(f, radii.sigma_area)) < 1e-10);
  }
  SUBCASE("l=2 speeds carry no translational weight") {
    GraphSurface s = GraphSurface::sphere({0, 0, 0}, 8.0, 10);
    s.perturb(2, 0, 0.5).perturb(2, -2, 0.3);
    const SurfaceFields f = fundamental_forms(MetricModel::euclidean(), s);
    CHECK(std::abs(pi_functional(f, 8.0)) < 1e-10);
  }
}

TEST_CASE("eigen estimate report") {
  SUBCASE("euclidean sphere: all residuals vanish") {
    const SurfaceFields f = leaf_fields(MetricModel::euclidean(), 5.0, 10);
    const OperatorMatrices m = assemble_operators(f, 8);
    const EigenSystem eig = laplace_eigensystem(m, f, 9);
    const EigenEstimateReport rep = eigen_estimate_report(eig, f, 0.0);
    CHECK(rep.residual.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(rep.cross.cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("schwarzschild leaves: scaled residuals stay bounded") {
    for (double r : {15.0, 20.0, 30.0}) {
      const SurfaceFields f = leaf_fields(MetricModel::schwarzschild(1.0), r);
      const OperatorMatrices m = assemble_operators(f, 8);
      const EigenSystem eig = laplace_eigensystem(m, f, 9);
      const EigenEstimateReport rep =
          eigen_estimate_report(eig, f, hawking_mass(f));
      CHECK(rep.residual_scaled.cwiseAbs().maxCoeff() < 1e-8);
      CHECK(rep.cross_scaled.cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("odd power check") {
  SUBCASE("euclidean eigenfunctions are exactly odd") {
    const SurfaceFields f = leaf_fields(MetricModel::euclidean(), 5.0, 10);
    const OperatorMatrices m = assemble_operators(f, 8);
    const EigenSystem eig = laplace_eigensystem(m, f, 9);
    for (int a = 1; a <= 3; ++a)
      CHECK(std::abs(odd_power_check(eig.samples.col(a).array(), f)) < 1e-12);
  }
  SUBCASE("parity-breaking ambient gives the generic scaling") {
    const MetricModel model = parity_breaking_model();
    std::vector<double> sigma, val;
    for (double r : {10.0, 20.0, 40.0}) {
      const SurfaceFields f = leaf_fields(model, r);
      const OperatorMatrices m = assemble_operators(f, 8);
      const EigenSystem eig = laplace_eigensystem(m, f, 9);
      double best = 0.0;
      for (int a = 1; a <= 3; ++a) {
        const Eigen::ArrayXd u = eig.samples.col(a).array();
        const double n2 = l2_dmu(f, u);
        best = std::max(best,
                        std::abs(odd_power_check(u, f)) / (n2 * n2 * n2));
      }
      const Radii radii = measures_and_radii(f);
      sigma.push_back(radii.sigma_area);
      val.push_back(best);
      // Bound at the -3/2 - delta rate (delta = 1/2).
      CHECK(best < 0.1 / (radii.sigma_area * radii.sigma_area));
    }
    const double slope01 = std::log(val[1] / val[0]) / std::log(sigma[1] / sigma[0]);
    const double slope12 = std::log(val[2] / val[1]) / std::log(sigma[2] / sigma[1]);
    CHECK(slope01 == doctest::Approx(-2.0).epsilon(0.15));
    CHECK(slope12 == doctest::Approx(-2.0).epsilon(0.15));
  }
}

TEST_CASE("translational part of H - h and the Pi bridge") {
  const MetricModel model = parity_breaking_model();
  for (double r : {10.0, 20.0, 40.0}) {
    const SurfaceFields f = leaf_fields(model, r);
    const Radii radii = measures_and_radii(f);
    const double sigma = radii.sigma_area;
    const OperatorMatrices m = assemble_operators(f, 8);
    const EigenSystem eig = laplace_eigensystem(m, f, 9);

    const Eigen::ArrayXd w = f.H - h_average(f);
    const SpectralSplit split = translational_split(w, eig, f);
    const double wt2 = f.integrate(split.w_t.square());
    const double pi = pi_functional(f, sigma);

    // |4pi/3 |w_t|^2 - Pi^2| <= |w_t|^2 + c sigma^{-2-4 delta} at
    // epsilon = 1 and sigma = sigma_area.
    const double lhs = std::abs(4.0 * M_PI / 3.0 * wt2 - pi * pi);
    const double rhs = wt2 + 10.0 / (sigma * sigma * sigma * sigma);
    CHECK(lhs <= rhs);
    // Cubes of the translational part obey the stronger corollary bound.
    const double cube = std::abs(odd_power_check(split.w_t, f));
    CHECK(cube <= 10.0 * wt2 / (sigma * sigma * sigma));
  }
}
