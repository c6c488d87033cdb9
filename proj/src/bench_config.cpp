#include "sgpc/bench_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "sgpc/csv.hpp"

namespace sgpc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse real '" + v + "'");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError("config key '" + key + "': cannot parse integer '" + v +
                      "'");
  return x;
}

std::vector<std::size_t> parse_list(const std::string& key,
                                    const std::string& v) {
  std::vector<std::size_t> out;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    out.push_back(static_cast<std::size_t>(parse_uint(key, tok)));
  }
  return out;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

BenchConfig BenchConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  BenchConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key=value, got '" + line + "'");
    cfg.apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void BenchConfig::apply(const std::string& key, const std::string& value) {
  if (key == "J")
    n_dims = static_cast<std::size_t>(parse_uint(key, value));
  else if (key == "decay_b")
    decay_b = parse_real(key, value);
  else if (key == "kappa")
    kappa = parse_real(key, value);
  else if (key == "abar")
    abar = parse_real(key, value);
  else if (key == "mesh_elems")
    mesh_elems = static_cast<std::size_t>(parse_uint(key, value));
  else if (key == "K_obs")
    n_obs = static_cast<std::size_t>(parse_uint(key, value));
  else if (key == "gamma")
    gamma = parse_real(key, value);
  else if (key == "y_truth_seed")
    y_truth_seed = parse_uint(key, value);
  else if (key == "noise_seed")
    noise_seed = parse_uint(key, value);
  else if (key == "N_list")
    n_list = parse_list(key, value);
  else if (key == "M_list")
    m_list = parse_list(key, value);
  else if (key == "quad_nodes")
    quad_nodes = static_cast<std::size_t>(parse_uint(key, value));
  else if (key == "c_k")
    c_k = parse_real(key, value);
  else if (key == "out_dir")
    out_dir = value;
  else if (key == "surrogate_terms")
    surrogate_terms = static_cast<std::size_t>(parse_uint(key, value));
  else if (key == "mc_replicates")
    mc_replicates = static_cast<std::size_t>(parse_uint(key, value));
  else if (key == "seed")
    base_seed = parse_uint(key, value);
  else
    throw ConfigError("unknown config key '" + key + "'");
}

void BenchConfig::validate() const {
  if (n_dims == 0) throw ConfigError("J must be positive");
  if (!(decay_b > 0.0)) throw ConfigError("decay_b must be positive");
  if (!(kappa > 0.0 && kappa < 1.0))
    throw ConfigError("kappa must lie in (0, 1)");
  if (!(abar > 0.0)) throw ConfigError("abar must be positive");
  if (mesh_elems < 2) throw ConfigError("mesh_elems must be at least 2");
  if (n_obs == 0) throw ConfigError("K_obs must be positive");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (n_list.empty()) throw ConfigError("N_list must not be empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] == 0) throw ConfigError("N_list entries must be positive");
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw ConfigError("N_list must be strictly increasing");
  }
  for (std::size_t m : m_list)
    if (m == 0) throw ConfigError("M_list entries must be positive");
  if (quad_nodes < 2) throw ConfigError("quad_nodes must be at least 2");
  if (!(c_k > 0.0)) throw ConfigError("c_k must be positive");
  if (mc_replicates == 0) throw ConfigError("mc_replicates must be positive");
}

std::string BenchConfig::canonical_string() const {
  std::ostringstream os;
  os << "J=" << n_dims << ";K_obs=" << n_obs << ";M_list=" << join(m_list)
     << ";N_list=" << join(n_list) << ";abar=" << fmt(abar)
     << ";c_k=" << fmt(c_k) << ";decay_b=" << fmt(decay_b)
     << ";gamma=" << fmt(gamma) << ";kappa=" << fmt(kappa)
     << ";mc_replicates=" << mc_replicates << ";mesh_elems=" << mesh_elems
     << ";noise_seed=" << noise_seed << ";quad_nodes=" << quad_nodes
     << ";seed=" << base_seed << ";surrogate_terms=" << surrogate_terms
     << ";y_truth_seed=" << y_truth_seed;
  return os.str();
}

std::string BenchConfig::hash() const { return hash_hex(canonical_string()); }

}  // namespace sgpc
