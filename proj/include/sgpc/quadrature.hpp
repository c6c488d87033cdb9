#pragma once

#include <cstddef>
#include <vector>

namespace sgpc {

/// Gauss-Legendre rule on [-1, 1] with weight dx (weights sum to 2).
/// Exact for polynomials of degree <= 2n - 1.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(std::size_t n);

}  // namespace sgpc
