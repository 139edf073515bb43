#pragma once

#include "cmcflow/poly3.hpp"

namespace cmcflow {

/// Cartesian solid harmonic r^l Y_lm(x/|x|) as an exact polynomial,
/// with Y_lm the real (tesseral) spherical harmonics, orthonormal on S^2.
/// Supported for 0 <= l <= 4, -l <= m <= l.
const Poly3& solid_harmonic(int l, int m);

/// Y_lm(u) for a unit vector u, evaluated through the polynomial form.
double real_sph_harmonic_cartesian(int l, int m, const Eigen::Vector3d& u);

}  // namespace cmcflow
