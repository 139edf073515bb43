#include "cmcflow/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace cmcflow {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
  nodes.resize(n);
  weights.resize(n);
  // Newton iteration from the Chebyshev initial guess.
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[n - 1 - i] = x;  // ascending order
    weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

QuadratureGrid::QuadratureGrid(int nt, int np) : n_theta(nt), n_phi(np) {
  std::vector<double> x, w;
  gauss_legendre(nt, x, w);
  theta.resize(nt);
  cos_theta.resize(nt);
  sin_theta.resize(nt);
  for (int i = 0; i < nt; ++i) {
    cos_theta[i] = x[i];
    sin_theta[i] = std::sqrt(1.0 - x[i] * x[i]);
    theta[i] = std::acos(x[i]);
  }
  phi.resize(np);
  for (int j = 0; j < np; ++j) phi[j] = 2.0 * M_PI * j / np;

  weight.resize(nt * np);
  direction.resize(nt * np);
  const double wphi = 2.0 * M_PI / np;
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < np; ++j) {
      const int n = node(i, j);
      weight[n] = w[i] * wphi;
      direction[n] = {sin_theta[i] * std::cos(phi[j]),
                      sin_theta[i] * std::sin(phi[j]), cos_theta[i]};
    }
}

}  // namespace cmcflow
