#include "sgpc/prior.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace sgpc {

ParamVector::ParamVector(std::vector<double> values) : y_(std::move(values)) {
  for (std::size_t j = 0; j < y_.size(); ++j) {
    if (!(y_[j] >= -1.0 - 1e-12) || !(y_[j] <= 1.0 + 1e-12))
      throw ConfigError("parameter y_" + std::to_string(j + 1) +
                        " outside [-1, 1]");
  }
}

ParamVector ParamVector::unchecked(std::vector<double> values) {
  ParamVector y;
  y.y_ = std::move(values);
  return y;
}

double PriorModel::abar_min() const {
  return *std::min_element(abar.begin(), abar.end());
}

double PriorModel::psi_linf_sum() const {
  double s = 0.0;
  for (double v : psi_linf) s += v;
  return s;
}

PriorModel build_prior(std::size_t n_dims, double decay_b, double kappa,
                       const Mesh1D& mesh, double abar_value) {
  if (n_dims == 0) throw ConfigError("build_prior needs at least one dimension");
  if (!(decay_b > 0.0)) throw ConfigError("build_prior needs decay_b > 0");
  if (!(kappa > 0.0 && kappa < 1.0))
    throw ConfigError("build_prior needs kappa in (0, 1)");
  if (!(abar_value > 0.0)) throw ConfigError("build_prior needs abar > 0");

  PriorModel model;
  model.decay_b = decay_b;
  model.kappa = kappa;
  model.abar.assign(mesh.n_elems(), abar_value);

  // sum_{j<=J} c * j^-(1+b) = kappa/(1+kappa) * abar fixes the amplitude c.
  double decay_sum = 0.0;
  for (std::size_t j = 1; j <= n_dims; ++j)
    decay_sum += std::pow(static_cast<double>(j), -(1.0 + decay_b));
  model.scale_c = kappa / (1.0 + kappa) * abar_value / decay_sum;

  model.psis.resize(n_dims);
  model.psi_linf.resize(n_dims);
  for (std::size_t j = 1; j <= n_dims; ++j) {
    const double amp =
        model.scale_c * std::pow(static_cast<double>(j), -(1.0 + decay_b));
    model.psi_linf[j - 1] = amp;
    std::vector<double>& psi = model.psis[j - 1];
    psi.resize(mesh.n_elems());
    for (std::size_t e = 0; e < mesh.n_elems(); ++e)
      psi[e] = amp * std::sin(static_cast<double>(j) * M_PI * mesh.midpoint(e));
  }
  validate_uea(model);
  return model;
}

UeaCertificate validate_uea(const PriorModel& model) {
  if (model.abar.empty()) throw ConfigError("prior model has no mean field");
  for (const auto& psi : model.psis)
    if (psi.size() != model.abar.size())
      throw DimensionMismatch("fluctuation field size differs from mean field");

  const double abar_min = model.abar_min();
  if (!(abar_min > 0.0))
    throw UeaViolation("mean field not positive",
                       static_cast<std::size_t>(
                           std::min_element(model.abar.begin(), model.abar.end()) -
                           model.abar.begin()));

  const double a_min = abar_min / (1.0 + model.kappa);

  double a_max = 0.0;
  for (std::size_t e = 0; e < model.abar.size(); ++e) {
    double fluct = 0.0;
    for (const auto& psi : model.psis) fluct += std::abs(psi[e]);
    const double lo = model.abar[e] - fluct;
    if (lo < a_min - 1e-12)
      throw UeaViolation("ellipticity lower bound violated at element " +
                             std::to_string(e),
                         e);
    a_max = std::max(a_max, model.abar[e] + fluct);
  }

  const double budget = model.kappa / (1.0 + model.kappa) * abar_min;
  // Fall back to sampled sup norms when the analytic ones were not recorded.
  double linf_sum = 0.0;
  for (std::size_t j = 0; j < model.psis.size(); ++j) {
    if (j < model.psi_linf.size()) {
      linf_sum += model.psi_linf[j];
    } else {
      double m = 0.0;
      for (double v : model.psis[j]) m = std::max(m, std::abs(v));
      linf_sum += m;
    }
  }
  if (linf_sum > budget * (1.0 + 1e-12))
    throw UeaViolation("fluctuation sup norms exceed the ellipticity budget", 0);
  // Report the sup-norm upper bound, which majorizes every sampled field.
  double linf_abar = *std::max_element(model.abar.begin(), model.abar.end());
  a_max = std::max(a_max, linf_abar + linf_sum);
  return {a_min, a_max};
}

std::vector<double> coefficient_at(const PriorModel& model,
                                   const ParamVector& y) {
  if (y.size() != model.n_dims())
    throw DimensionMismatch("parameter vector has " + std::to_string(y.size()) +
                            " entries, model has " +
                            std::to_string(model.n_dims()) + " dimensions");
  std::vector<double> field = model.abar;
  for (std::size_t j = 0; j < model.n_dims(); ++j) {
    const double yj = y[j];
    const auto& psi = model.psis[j];
    for (std::size_t e = 0; e < field.size(); ++e) field[e] += yj * psi[e];
  }
  return field;
}

ParamVector sample_prior(const PriorModel& model, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> y(model.n_dims());
  for (double& v : y) v = unif(rng);
  return ParamVector(std::move(y));
}

}  // namespace sgpc
