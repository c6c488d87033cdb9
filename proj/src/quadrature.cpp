#include "sgpc/quadrature.hpp"

#include <cmath>

#include "sgpc/errors.hpp"

namespace sgpc {

namespace {

// Returns P_n(x) and P_n'(x) by the three-term recurrence.
void legendre_pair(std::size_t n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (std::size_t k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  p = p1;
  dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

// Nodes are the roots of the Legendre polynomial P_n, found by Newton
// iteration from the Chebyshev-based initial guess; weights follow from the
// derivative values. Only the lower half is computed, the rest by symmetry.
GaussLegendre gauss_legendre(std::size_t n) {
  if (n == 0) throw ConfigError("gauss_legendre needs at least one node");
  GaussLegendre rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double p = 0.0, dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      legendre_pair(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_pair(n, x, p, dp);
    if (n % 2 == 1 && i == half - 1) x = 0.0;
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace sgpc
