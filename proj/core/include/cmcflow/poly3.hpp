#pragma once

#include <Eigen/Dense>
#include <vector>

namespace cmcflow {

/// Trivariate polynomial in (x, y, z), stored as a monomial list.
/// Used to build the Cartesian solid harmonics that drive the metric
/// perturbation models; exact gradients and Hessians come for free.
class Poly3 {
 public:
  struct Monomial {
    int px = 0, py = 0, pz = 0;
    double coeff = 0.0;
  };

  Poly3() = default;
  static Poly3 constant(double c);
  static Poly3 variable(int axis);  // 0 -> x, 1 -> y, 2 -> z

  Poly3 operator+(const Poly3& other) const;
  Poly3 operator-(const Poly3& other) const;
  Poly3 operator*(const Poly3& other) const;
  Poly3 operator*(double s) const;
  friend Poly3 operator*(double s, const Poly3& p) { return p * s; }

  Poly3 derivative(int axis) const;

  double eval(const Eigen::Vector3d& x) const;
  Eigen::Vector3d gradient(const Eigen::Vector3d& x) const;
  Eigen::Matrix3d hessian(const Eigen::Vector3d& x) const;

  const std::vector<Monomial>& monomials() const { return terms_; }

 private:
  void add_term(int px, int py, int pz, double c);
  std::vector<Monomial> terms_;
};

}  // namespace cmcflow
