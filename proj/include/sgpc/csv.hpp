#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "sgpc/errors.hpp"
#include "sgpc/expectation.hpp"
#include "sgpc/mesh.hpp"
#include "sgpc/series.hpp"

namespace sgpc {

/// Fixed-format numeric rendering so identical values always produce
/// identical bytes.
std::string fmt(double v);
std::string fmt(std::size_t v);

/// Minimal CSV writer: one header, comma-joined rows, '\n' line ends.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& fields);

 private:
  std::ofstream out_;
  std::size_t n_cols_;
};

/// FNV-1a hash of a canonical string, rendered as 16 hex digits.
std::string hash_hex(const std::string& canonical);

/// Decay dump: (index, coefficient_norm) sorted by descending norm with
/// canonical tie-breaks.
template <typename C>
void write_decay_csv(const std::string& path, const SparseSeries<C>& s,
                     const std::string& config_hash) {
  std::vector<std::pair<const MultiIndex*, double>> ranked;
  for (const auto& [nu, c] : s.terms) ranked.push_back({&nu, coeff_norm(c)});
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return *a.first < *b.first;
  });
  CsvWriter csv(path, {"index", "coeff_norm", "config_hash"});
  for (const auto& [nu, norm] : ranked)
    csv.row({nu->to_string(), fmt(norm), config_hash});
}

/// Posterior summary dump: estimator tag, normalization and the node-wise
/// mean/variance fields.
void write_summary_csv(const std::string& path, const PosteriorSummary& summary,
                       const Mesh1D& mesh, const std::string& config_hash);

}  // namespace sgpc
