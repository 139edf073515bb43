#include "cmcflow/solid_harmonics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace cmcflow {

Poly3 Poly3::constant(double c) {
  Poly3 p;
  p.add_term(0, 0, 0, c);
  return p;
}

Poly3 Poly3::variable(int axis) {
  Poly3 p;
  p.add_term(axis == 0 ? 1 : 0, axis == 1 ? 1 : 0, axis == 2 ? 1 : 0, 1.0);
  return p;
}

void Poly3::add_term(int px, int py, int pz, double c) {
  for (auto& t : terms_) {
    if (t.px == px && t.py == py && t.pz == pz) {
      t.coeff += c;
      return;
    }
  }
  terms_.push_back({px, py, pz, c});
}

Poly3 Poly3::operator+(const Poly3& other) const {
  Poly3 out = *this;
  for (const auto& t : other.terms_) out.add_term(t.px, t.py, t.pz, t.coeff);
  return out;
}

Poly3 Poly3::operator-(const Poly3& other) const {
  return *this + other * -1.0;
}

Poly3 Poly3::operator*(const Poly3& other) const {
  Poly3 out;
  for (const auto& a : terms_)
    for (const auto& b : other.terms_)
      out.add_term(a.px + b.px, a.py + b.py, a.pz + b.pz, a.coeff * b.coeff);
  return out;
}

Poly3 Poly3::operator*(double s) const {
  Poly3 out = *this;
  for (auto& t : out.terms_) t.coeff *= s;
  return out;
}

Poly3 Poly3::derivative(int axis) const {
  Poly3 out;
  for (const auto& t : terms_) {
    int p[3] = {t.px, t.py, t.pz};
    if (p[axis] == 0) continue;
    double c = t.coeff * p[axis];
    p[axis] -= 1;
    out.add_term(p[0], p[1], p[2], c);
  }
  return out;
}

double Poly3::eval(const Eigen::Vector3d& x) const {
  double s = 0.0;
  for (const auto& t : terms_)
    s += t.coeff * std::pow(x.x(), t.px) * std::pow(x.y(), t.py) *
         std::pow(x.z(), t.pz);
  return s;
}

Eigen::Vector3d Poly3::gradient(const Eigen::Vector3d& x) const {
  Eigen::Vector3d g;
  for (int a = 0; a < 3; ++a) g[a] = derivative(a).eval(x);
  return g;
}

Eigen::Matrix3d Poly3::hessian(const Eigen::Vector3d& x) const {
  Eigen::Matrix3d h;
  for (int a = 0; a < 3; ++a) {
    Poly3 da = derivative(a);
    for (int b = a; b < 3; ++b) {
      h(a, b) = da.derivative(b).eval(x);
      h(b, a) = h(a, b);
    }
  }
  return h;
}

namespace {

// Tesseral harmonics up to degree 4, written out in Cartesian form with
// the standard orthonormal normalization on the unit sphere.
std::map<std::pair<int, int>, Poly3> build_solid_harmonics() {
  const double pi = M_PI;
  const Poly3 x = Poly3::variable(0);
  const Poly3 y = Poly3::variable(1);
  const Poly3 z = Poly3::variable(2);
  const Poly3 r2 = x * x + y * y + z * z;

  std::map<std::pair<int, int>, Poly3> t;

  t[{0, 0}] = Poly3::constant(0.5 / std::sqrt(pi));

  const double c1 = std::sqrt(3.0 / (4.0 * pi));
  t[{1, -1}] = c1 * y;
  t[{1, 0}] = c1 * z;
  t[{1, 1}] = c1 * x;

  const double c2a = 0.5 * std::sqrt(15.0 / pi);
  t[{2, -2}] = c2a * (x * y);
  t[{2, -1}] = c2a * (y * z);
  t[{2, 0}] = 0.25 * std::sqrt(5.0 / pi) * (z * z * 3.0 - r2);
  t[{2, 1}] = c2a * (x * z);
  t[{2, 2}] = 0.25 * std::sqrt(15.0 / pi) * (x * x - y * y);

  t[{3, -3}] = 0.25 * std::sqrt(35.0 / (2.0 * pi)) * (y * (x * x * 3.0 - y * y));
  t[{3, -2}] = 0.5 * std::sqrt(105.0 / pi) * (x * y * z);
  t[{3, -1}] = 0.25 * std::sqrt(21.0 / (2.0 * pi)) * (y * (z * z * 5.0 - r2));
  t[{3, 0}] = 0.25 * std::sqrt(7.0 / pi) * (z * (z * z * 5.0 - r2 * 3.0));
  t[{3, 1}] = 0.25 * std::sqrt(21.0 / (2.0 * pi)) * (x * (z * z * 5.0 - r2));
  t[{3, 2}] = 0.25 * std::sqrt(105.0 / pi) * (z * (x * x - y * y));
  t[{3, 3}] = 0.25 * std::sqrt(35.0 / (2.0 * pi)) * (x * (x * x - y * y * 3.0));

  t[{4, -4}] = 0.75 * std::sqrt(35.0 / pi) * (x * y * (x * x - y * y));
  t[{4, -3}] = 0.75 * std::sqrt(35.0 / (2.0 * pi)) * (y * z * (x * x * 3.0 - y * y));
  t[{4, -2}] = 0.75 * std::sqrt(5.0 / pi) * (x * y * (z * z * 7.0 - r2));
  t[{4, -1}] = 0.75 * std::sqrt(5.0 / (2.0 * pi)) * (y * z * (z * z * 7.0 - r2 * 3.0));
  t[{4, 0}] = (3.0 / 16.0) * std::sqrt(1.0 / pi) *
              (z * z * z * z * 35.0 - (z * z * r2) * 30.0 + r2 * r2 * 3.0);
  t[{4, 1}] = 0.75 * std::sqrt(5.0 / (2.0 * pi)) * (x * z * (z * z * 7.0 - r2 * 3.0));
  t[{4, 2}] = (3.0 / 8.0) * std::sqrt(5.0 / pi) * ((x * x - y * y) * (z * z * 7.0 - r2));
  t[{4, 3}] = 0.75 * std::sqrt(35.0 / (2.0 * pi)) * (x * z * (x * x - y * y * 3.0));
  t[{4, 4}] = (3.0 / 16.0) * std::sqrt(35.0 / pi) *
              (x * x * x * x - (x * x) * (y * y) * 6.0 + y * y * y * y);

  return t;
}

}  // namespace

const Poly3& solid_harmonic(int l, int m) {
  static const std::map<std::pair<int, int>, Poly3> table = build_solid_harmonics();
  auto it = table.find({l, m});
  if (it == table.end())
    throw std::out_of_range("solid_harmonic: only degrees 0..4 are tabulated");
  return it->second;
}

double real_sph_harmonic_cartesian(int l, int m, const Eigen::Vector3d& u) {
  return solid_harmonic(l, m).eval(u);
}

}  // namespace cmcflow
