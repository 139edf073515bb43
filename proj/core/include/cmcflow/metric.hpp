#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

#include "cmcflow/errors.hpp"

namespace cmcflow {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Third-order array d[gamma][alpha][beta] = d_gamma g_{alpha beta}.
using Tensor3 = std::array<Mat3, 3>;
/// Fourth-order array dd[gamma][eta][alpha][beta] = d_gamma d_eta g_{alpha beta}.
using Tensor4 = std::array<std::array<Mat3, 3>, 3>;

enum class MetricKind { Euclidean, Schwarzschild, PerturbedSchwarzschild };
enum class Parity { Even, Odd };

/// One real-spherical-harmonic direction of the perturbation tensor:
/// degree l, order m, and the symmetric tensor component it multiplies
/// (0..5 indexing 00, 11, 22, 01, 02, 12).
struct PerturbationMode {
  int l = 0;
  int m = 0;
  int component = 0;
};

/// p_ab(x) = amplitude * |x|^{-decay} * q_ab(x/|x|), with q_ab a combination
/// of real spherical harmonics of degree <= 4. Even parity (q(-u) = q(u))
/// keeps the metric compatible with the Regge-Teitelboim conditions.
struct PerturbationSpec {
  double amplitude = 0.0;
  double decay = 1.0;
  std::vector<PerturbationMode> modes;
  Parity parity = Parity::Even;

  void validate() const;
};

struct MetricModel {
  MetricKind kind = MetricKind::Euclidean;
  double m = 0.0;       // mass parameter, length units
  double delta = 0.5;   // decay exponent, in (0, 1/2]
  double cbar = 1.0;    // nominal decay constant
  std::optional<PerturbationSpec> perturbation;

  void validate() const;

  static MetricModel euclidean();
  static MetricModel schwarzschild(double mass);
  static MetricModel perturbed_schwarzschild(double mass, PerturbationSpec spec);
};

/// Pointwise 2-jet of the ambient metric in the chart coordinates.
struct MetricJet {
  Mat3 g = Mat3::Identity();
  Tensor3 dg{};   // dg[c](a,b) = d_c g_ab
  Tensor4 ddg{};  // ddg[c][e](a,b) = d_c d_e g_ab
};

/// Christoffel symbols and curvature tensors assembled from the jet.
struct CurvatureData {
  std::array<Mat3, 3> gamma{};  // gamma[a](b,c) = Gamma^a_bc
  /// riemann[a][b](c,d) = R_abcd (fully lowered)
  std::array<std::array<Mat3, 3>, 3> riemann{};
  Mat3 ricci = Mat3::Zero();
  double scalar = 0.0;

  double riemann_norm() const;  // frame norm sqrt(R_abcd R^abcd), raised with g
  Mat3 g = Mat3::Identity();    // metric at the point, kept for raising indices
};

/// Exact analytic jet of the chosen model; throws ChartViolation for |x| <= 1.
MetricJet metric_jet(const MetricModel& model, const Vec3& point);

CurvatureData curvature(const MetricModel& model, const Vec3& point);
CurvatureData curvature_from_jet(const MetricJet& jet);

/// Christoffel symbols only (cheaper than the full curvature assembly).
std::array<Mat3, 3> christoffels(const MetricJet& jet);

}  // namespace cmcflow
