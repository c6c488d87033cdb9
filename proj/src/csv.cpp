#include "sgpc/csv.hpp"

#include <cstdio>

namespace sgpc {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt(std::size_t v) { return std::to_string(v); }

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : out_(path, std::ios::binary), n_cols_(header.size()) {
  if (!out_) throw ConfigError("cannot open '" + path + "' for writing");
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != n_cols_)
    throw Error("csv row width differs from header");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << fields[i];
  }
  out_ << '\n';
  if (!out_) throw Error("csv write failed");
}

std::string hash_hex(const std::string& canonical) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

void write_summary_csv(const std::string& path,
                       const PosteriorSummary& summary, const Mesh1D& mesh,
                       const std::string& config_hash) {
  CsvWriter csv(path, {"estimator_tag", "z", "x", "mean", "variance",
                       "config_hash"});
  const Vec cov = summary.covariance_diag();
  const std::string tag = to_string(summary.estimator_tag);
  const std::string z = fmt(summary.z);
  for (std::size_t i = 0; i < summary.mean_field.size(); ++i) {
    csv.row({tag, z, fmt(mesh.node(i + 1)), fmt(summary.mean_field[i]),
             fmt(cov[i]), config_hash});
  }
}

}  // namespace sgpc
