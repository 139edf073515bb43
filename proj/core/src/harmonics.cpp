#include "cmcflow/harmonics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace cmcflow {

namespace {

// Value and first two theta-derivatives, propagated through the
// normalized associated-Legendre recurrences. Pole-free because the
// recurrences are smooth in theta and the grid has no polar nodes.
struct Jet2 {
  double v = 0.0, d = 0.0, dd = 0.0;

  Jet2 operator+(const Jet2& o) const { return {v + o.v, d + o.d, dd + o.dd}; }
  Jet2 operator-(const Jet2& o) const { return {v - o.v, d - o.d, dd - o.dd}; }
  Jet2 operator*(const Jet2& o) const {
    return {v * o.v, d * o.v + v * o.d, dd * o.v + 2.0 * d * o.d + v * o.dd};
  }
  Jet2 operator*(double s) const { return {v * s, d * s, dd * s}; }
};

}  // namespace

int SphereBasis::degree_of(int index) {
  int l = 0;
  while ((l + 1) * (l + 1) <= index) ++l;
  return l;
}

SphereBasis::SphereBasis(int l_max, const QuadratureGrid& grid)
    : l_max_(l_max), grid_(grid) {
  const int nb = size();
  const int nn = grid_.node_count();
  y_.resize(nn, nb);
  yt_.resize(nn, nb);
  yp_.resize(nn, nb);
  ytt_.resize(nn, nb);
  ytp_.resize(nn, nb);
  ypp_.resize(nn, nb);

  // Normalized Legendre jets per theta ring: plm[m][l - m].
  const int nt = grid_.n_theta;
  std::vector<std::vector<std::vector<Jet2>>> plm(
      nt, std::vector<std::vector<Jet2>>(l_max + 1));
  for (int i = 0; i < nt; ++i) {
    const double ct = grid_.cos_theta[i];
    const double st = grid_.sin_theta[i];
    const Jet2 x{ct, -st, -ct};  // cos(theta) and theta-derivatives
    const Jet2 s{st, ct, -st};   // sin(theta)

    for (int m = 0; m <= l_max; ++m) {
      auto& col = plm[i][m];
      col.resize(l_max - m + 1);
      if (m == 0) {
        col[0] = Jet2{1.0 / std::sqrt(4.0 * M_PI), 0.0, 0.0};
      } else {
        const double c = std::sqrt((2.0 * m + 1.0) / (2.0 * m));
        col[0] = plm[i][m - 1][0] * s * c;
      }
      if (m < l_max) col[1] = x * col[0] * std::sqrt(2.0 * m + 3.0);
      for (int l = m + 2; l <= l_max; ++l) {
        const double a = std::sqrt((4.0 * l * l - 1.0) / double(l * l - m * m));
        const double b =
            std::sqrt(((l - 1.0) * (l - 1.0) - m * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
        col[l - m] = (x * col[l - m - 1] - col[l - m - 2] * b) * a;
      }
    }
  }

  const double sqrt2 = std::sqrt(2.0);
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < grid_.n_phi; ++j) {
      const int n = grid_.node(i, j);
      const double ph = grid_.phi[j];
      for (int l = 0; l <= l_max; ++l)
        for (int m = -l; m <= l; ++m) {
          const int b = index(l, m);
          const int ma = std::abs(m);
          const Jet2& p = plm[i][ma][l - ma];
          double f, fp, fpp;  // azimuthal factor and phi-derivatives
          if (m == 0) {
            f = 1.0;
            fp = 0.0;
            fpp = 0.0;
          } else if (m > 0) {
            f = sqrt2 * std::cos(m * ph);
            fp = -sqrt2 * m * std::sin(m * ph);
            fpp = -double(m) * m * f;
          } else {
            f = sqrt2 * std::sin(ma * ph);
            fp = sqrt2 * ma * std::cos(ma * ph);
            fpp = -double(ma) * ma * f;
          }
          y_(n, b) = p.v * f;
          yt_(n, b) = p.d * f;
          ytt_(n, b) = p.dd * f;
          yp_(n, b) = p.v * fp;
          ytp_(n, b) = p.d * fp;
          ypp_(n, b) = p.v * fpp;
        }
    }
}

Eigen::VectorXd SphereBasis::analyze(const Eigen::VectorXd& node_samples) const {
  Eigen::VectorXd weighted = node_samples;
  for (int n = 0; n < weighted.size(); ++n) weighted[n] *= grid_.weight[n];
  return y_.transpose() * weighted;
}

double SphereBasis::evaluate(const Eigen::VectorXd& coeffs, int l_max,
                             double theta, double phi) {
  const double x = std::cos(theta);
  const double s = std::sin(theta);
  // plm[m][l - m], values only.
  std::vector<std::vector<double>> plm(l_max + 1);
  for (int m = 0; m <= l_max; ++m) {
    auto& col = plm[m];
    col.resize(l_max - m + 1);
    if (m == 0)
      col[0] = 1.0 / std::sqrt(4.0 * M_PI);
    else
      col[0] = plm[m - 1][0] * s * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    if (m < l_max) col[1] = x * col[0] * std::sqrt(2.0 * m + 3.0);
    for (int l = m + 2; l <= l_max; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / double(l * l - m * m));
      const double b = std::sqrt(((l - 1.0) * (l - 1.0) - m * m) /
                                 (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      col[l - m] = a * (x * col[l - m - 1] - b * col[l - m - 2]);
    }
  }
  const double sqrt2 = std::sqrt(2.0);
  double total = 0.0;
  for (int l = 0; l <= l_max; ++l)
    for (int m = -l; m <= l; ++m) {
      const int ma = std::abs(m);
      double f = 1.0;
      if (m > 0) f = sqrt2 * std::cos(m * phi);
      if (m < 0) f = sqrt2 * std::sin(ma * phi);
      total += coeffs[index(l, m)] * plm[ma][l - ma] * f;
    }
  return total;
}

std::shared_ptr<const SphereBasis> SphereBasis::get(int l_max, int n_theta, int n_phi) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const SphereBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(l_max, n_theta, n_phi);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto basis = std::make_shared<const SphereBasis>(l_max, QuadratureGrid(n_theta, n_phi));
  cache[key] = basis;
  return basis;
}

}  // namespace cmcflow
