#pragma once

#include "sgpc/bench_config.hpp"
#include "sgpc/fem.hpp"

namespace sgpc {

/// A fully assembled benchmark instance: prior, operators and synthesized
/// observations, all derived deterministically from the configuration.
struct BenchProblem {
  Mesh1D mesh;
  PriorModel model;
  AffineOperatorFamily fam;
  ObservationSetup setup;
};

/// Disjoint equispaced observation windows centered at k/(K+1).
std::vector<ObservationWindow> default_windows(std::size_t n_obs);

BenchProblem make_bench_problem(const BenchConfig& cfg);

}  // namespace sgpc
