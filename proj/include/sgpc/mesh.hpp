#pragma once

#include <cstddef>
#include <vector>

#include "sgpc/errors.hpp"

namespace sgpc {

/// Uniform mesh of the unit interval: n_elems elements, n_elems+1 nodes.
class Mesh1D {
 public:
  explicit Mesh1D(std::size_t n_elems) : n_elems_(n_elems) {
    if (n_elems < 2) throw ConfigError("Mesh1D needs at least 2 elements");
    nodes_.resize(n_elems + 1);
    for (std::size_t i = 0; i <= n_elems; ++i)
      nodes_[i] = static_cast<double>(i) / static_cast<double>(n_elems);
    nodes_.front() = 0.0;
    nodes_.back() = 1.0;
  }

  std::size_t n_elems() const noexcept { return n_elems_; }
  std::size_t n_nodes() const noexcept { return n_elems_ + 1; }
  /// Interior (Dirichlet-free) nodes, the FEM unknowns.
  std::size_t n_interior() const noexcept { return n_elems_ - 1; }
  double h() const noexcept { return 1.0 / static_cast<double>(n_elems_); }
  double node(std::size_t i) const { return nodes_[i]; }
  double midpoint(std::size_t e) const {
    return 0.5 * (nodes_[e] + nodes_[e + 1]);
  }
  const std::vector<double>& nodes() const noexcept { return nodes_; }

 private:
  std::size_t n_elems_;
  std::vector<double> nodes_;
};

}  // namespace sgpc
