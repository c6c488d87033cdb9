#include "sgpc/series.hpp"

#include <algorithm>
#include <cmath>

#include "sgpc/quadrature.hpp"

namespace sgpc {

std::vector<double> legendre_values(double t, std::uint32_t degmax) {
  std::vector<double> vals(degmax + 1);
  double p0 = 1.0, p1 = t;
  vals[0] = 1.0;
  if (degmax >= 1) vals[1] = std::sqrt(3.0) * t;
  for (std::uint32_t k = 2; k <= degmax; ++k) {
    const double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
    vals[k] = std::sqrt(2.0 * k + 1.0) * pk;
  }
  return vals;
}

std::vector<std::vector<double>> monomial_to_legendre_table(
    std::uint32_t degmax) {
  // Orthonormality gives table[n][k] = int t^n L_k(t) dt/2; the rule below is
  // exact for every integrand degree that occurs.
  const GaussLegendre rule = gauss_legendre(degmax + 2);
  std::vector<std::vector<double>> leg_at_node(rule.nodes.size());
  for (std::size_t q = 0; q < rule.nodes.size(); ++q)
    leg_at_node[q] = legendre_values(rule.nodes[q], degmax);

  std::vector<std::vector<double>> table(degmax + 1);
  for (std::uint32_t n = 0; n <= degmax; ++n) {
    table[n].assign(n + 1, 0.0);
    for (std::uint32_t k = n % 2; k <= n; k += 2) {
      double acc = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        acc += 0.5 * rule.weights[q] * std::pow(rule.nodes[q], n) *
               leg_at_node[q][k];
      table[n][k] = acc;
    }
  }
  return table;
}

std::vector<std::vector<double>> legendre_to_monomial_table(
    std::uint32_t degmax) {
  // Monomial coefficients of the unnormalized polynomials by the three-term
  // recurrence, then scaled to unit weighted L2 norm.
  std::vector<std::vector<double>> p(degmax + 1);
  p[0] = {1.0};
  if (degmax >= 1) p[1] = {0.0, 1.0};
  for (std::uint32_t k = 2; k <= degmax; ++k) {
    p[k].assign(k + 1, 0.0);
    for (std::uint32_t n = 0; n < k; ++n)
      p[k][n + 1] += (2.0 * k - 1.0) / k * p[k - 1][n];
    for (std::uint32_t n = 0; n < p[k - 2].size(); ++n)
      p[k][n] -= (k - 1.0) / k * p[k - 2][n];
  }
  for (std::uint32_t k = 0; k <= degmax; ++k) {
    const double scale = std::sqrt(2.0 * k + 1.0);
    for (double& v : p[k]) v *= scale;
  }
  return p;
}

double fit_decay_rate(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    throw NumericError("fit_decay_rate needs at least three points");
  double sx = 0.0, sy = 0.0;
  for (const auto& [n, e] : points) {
    if (!(n > 0.0) || !(e > 0.0))
      throw NumericError("fit_decay_rate needs positive sizes and errors");
    sx += std::log(n);
    sy += std::log(e);
  }
  const double mx = sx / points.size();
  const double my = sy / points.size();
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [n, e] : points) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(e) - my);
  }
  if (sxx == 0.0) throw NumericError("fit_decay_rate needs distinct sizes");
  return sxy / sxx;
}

}  // namespace sgpc
