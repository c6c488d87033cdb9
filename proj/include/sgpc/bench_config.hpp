#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgpc/errors.hpp"

namespace sgpc {

/// Benchmark problem configuration, read from a flat key=value file with
/// '#' comments; command-line flags override individual entries.
struct BenchConfig {
  std::size_t n_dims = 4;          // J
  double decay_b = 2.0;            // decay_b
  double kappa = 0.5;              // kappa
  double abar = 1.0;               // abar
  std::size_t mesh_elems = 64;     // mesh_elems
  std::size_t n_obs = 2;           // K_obs
  double gamma = 0.04;             // gamma (uniform across components)
  std::uint64_t y_truth_seed = 1234;
  std::uint64_t noise_seed = 777;
  std::vector<std::size_t> n_list{8, 16, 32, 64, 128};
  std::vector<std::size_t> m_list{100, 400, 1600, 6400};
  std::size_t quad_nodes = 12;
  double c_k = 2.0;                // K(N) = max(1, ceil(c_k ln N))
  std::string out_dir = ".";
  std::size_t surrogate_terms = 0; // 0: derived from the largest N
  std::size_t mc_replicates = 8;
  std::uint64_t base_seed = 1;     // --seed

  static BenchConfig from_file(const std::string& path);
  void apply(const std::string& key, const std::string& value);
  void validate() const;

  /// Sorted key=value serialization; the hash of this string stamps every
  /// CSV row for provenance.
  std::string canonical_string() const;
  std::string hash() const;
};

}  // namespace sgpc
