#include "sgpc/expectation.hpp"

#include <cmath>
#include <random>

#include "sgpc/quadrature.hpp"

namespace sgpc {

double moment_weight(const MultiIndex& nu) {
  double w = 1.0;
  for (const auto& e : nu.entries()) {
    if (e.exp % 2 == 1) return 0.0;
    w /= static_cast<double>(e.exp + 1);
  }
  return w;
}

std::string to_string(EstimatorTag tag) {
  switch (tag) {
    case EstimatorTag::semianalytic:
      return "semianalytic";
    case EstimatorTag::mc:
      return "mc";
    case EstimatorTag::quadrature:
      return "quadrature";
  }
  return "unknown";
}

Vec PosteriorSummary::covariance_diag() const {
  Vec cov(second_moment_diag.size(), 0.0);
  for (std::size_t i = 0; i < cov.size(); ++i)
    cov[i] = second_moment_diag[i] - mean_field[i] * mean_field[i];
  return cov;
}

PosteriorSummary posterior_summary_semianalytic(
    const PosteriorApprox& pa, const SparseSeries<Vec>& p_series,
    std::size_t budget) {
  PosteriorSummary out;
  out.estimator_tag = EstimatorTag::semianalytic;
  out.z = integrate_series(pa.theta_series);
  if (!(out.z > 0.0))
    throw NumericError(
        "semianalytic normalization is not positive; the density truncation "
        "was too aggressive (Z = " +
        std::to_string(out.z) + ")");

  const ProductResult<Vec> mean_prod =
      truncated_product(pa.theta_series, p_series, budget);
  Vec zprime = integrate_series(mean_prod.series);

  const ProductResult<Vec> p_squared =
      hadamard_truncated_product(p_series, p_series, budget);
  const ProductResult<Vec> second_prod =
      truncated_product(pa.theta_series, p_squared.series, budget);
  Vec zsecond = integrate_series(second_prod.series);

  const std::size_t n = p_series.empty() ? 0 : p_series.terms.begin()->second.size();
  zprime.resize(n, 0.0);
  zsecond.resize(n, 0.0);
  for (double& v : zprime) v /= out.z;
  for (double& v : zsecond) v /= out.z;
  out.mean_field = std::move(zprime);
  out.second_moment_diag = std::move(zsecond);
  return out;
}

PosteriorSummary mc_posterior(const ObservationSetup& setup,
                              const AffineOperatorFamily& fam,
                              const PriorModel& model, std::size_t n_samples,
                              std::uint64_t seed) {
  if (n_samples == 0) throw ConfigError("mc_posterior needs n_samples >= 1");
  const std::size_t n = fam.n_unknowns();
  const std::vector<Vec> rs = observation_functionals(setup, fam.mesh);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  double sum_theta = 0.0, sum_theta_sq = 0.0;
  Vec sum_tp(n, 0.0), sum_tp_sq(n, 0.0), sum_t2p(n, 0.0), sum_tp2(n, 0.0);

  std::vector<double> y(model.n_dims());
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (double& v : y) v = unif(rng);
    const ParamVector yv(y);
    const Vec p = solve_at(fam, yv);
    double phi = 0.0;
    for (std::size_t k = 0; k < rs.size(); ++k) {
      double g = 0.0;
      for (std::size_t i = 0; i < n; ++i) g += rs[k][i] * p[i];
      const double r = setup.delta[k] - g;
      phi += 0.5 * r * r / setup.gamma[k];
    }
    const double theta = std::exp(-phi);
    sum_theta += theta;
    sum_theta_sq += theta * theta;
    for (std::size_t i = 0; i < n; ++i) {
      const double tp = theta * p[i];
      sum_tp[i] += tp;
      sum_tp_sq[i] += tp * tp;
      sum_t2p[i] += theta * tp;
      sum_tp2[i] += tp * p[i];
    }
  }

  const double m = static_cast<double>(n_samples);
  PosteriorSummary out;
  out.estimator_tag = EstimatorTag::mc;
  out.work_units = n_samples;
  out.z = sum_theta / m;
  out.mean_field.assign(n, 0.0);
  out.second_moment_diag.assign(n, 0.0);
  out.mean_se.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.mean_field[i] = (sum_tp[i] / m) / out.z;
    out.second_moment_diag[i] = (sum_tp2[i] / m) / out.z;
  }
  if (n_samples > 1) {
    const double var_theta =
        std::max(0.0, (sum_theta_sq - m * out.z * out.z) / (m - 1.0));
    out.z_se = std::sqrt(var_theta / m);
    // Delta-method standard error of the ratio estimator: the variance of
    // e_i = theta * (p_i - mean_i) scaled by 1/(Z sqrt(M)).
    for (std::size_t i = 0; i < n; ++i) {
      const double mi = out.mean_field[i];
      const double sum_e_sq =
          sum_tp_sq[i] - 2.0 * mi * sum_t2p[i] + mi * mi * sum_theta_sq;
      const double var_e = std::max(0.0, sum_e_sq / (m - 1.0));
      out.mean_se[i] = std::sqrt(var_e / m) / out.z;
    }
  }
  return out;
}

PosteriorSummary quadrature_oracle(const ObservationSetup& setup,
                                   const AffineOperatorFamily& fam,
                                   const PriorModel& model,
                                   std::size_t nodes_per_dim) {
  const std::size_t n_dims = model.n_dims();
  if (n_dims > 6)
    throw CostGuardError("quadrature_oracle is limited to J <= 6 dimensions");
  if (nodes_per_dim < 2)
    throw ConfigError("quadrature_oracle needs at least 2 nodes per dim");

  const GaussLegendre rule = gauss_legendre(nodes_per_dim);
  const std::size_t n = fam.n_unknowns();
  const std::vector<Vec> rs = observation_functionals(setup, fam.mesh);

  PosteriorSummary out;
  out.estimator_tag = EstimatorTag::quadrature;
  double z = 0.0;
  Vec zp(n, 0.0), zp2(n, 0.0);

  std::vector<std::size_t> digit(n_dims, 0);
  std::vector<double> y(n_dims);
  std::size_t count = 0;
  while (true) {
    double w = 1.0;
    for (std::size_t j = 0; j < n_dims; ++j) {
      y[j] = rule.nodes[digit[j]];
      w *= 0.5 * rule.weights[digit[j]];
    }
    const ParamVector yv(y);
    const Vec p = solve_at(fam, yv);
    double phi = 0.0;
    for (std::size_t k = 0; k < rs.size(); ++k) {
      double g = 0.0;
      for (std::size_t i = 0; i < n; ++i) g += rs[k][i] * p[i];
      const double r = setup.delta[k] - g;
      phi += 0.5 * r * r / setup.gamma[k];
    }
    const double theta = std::exp(-phi);
    z += w * theta;
    for (std::size_t i = 0; i < n; ++i) {
      zp[i] += w * theta * p[i];
      zp2[i] += w * theta * p[i] * p[i];
    }
    ++count;

    std::size_t j = n_dims;
    while (j > 0) {
      if (++digit[j - 1] < nodes_per_dim) break;
      digit[j - 1] = 0;
      --j;
    }
    if (j == 0) break;
  }

  out.work_units = count;
  out.z = z;
  out.mean_field.assign(n, 0.0);
  out.second_moment_diag.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.mean_field[i] = zp[i] / z;
    out.second_moment_diag[i] = zp2[i] / z;
  }
  return out;
}

}  // namespace sgpc
