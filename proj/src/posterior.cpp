#include "sgpc/posterior.hpp"

#include <cmath>

namespace sgpc {

double theta_exact(const ObservationSetup& setup,
                   const AffineOperatorFamily& fam, const ParamVector& y) {
  return std::exp(-potential_exact(setup, fam, y));
}

SparseSeries<Vec> observe_series(const ObservationSetup& setup,
                                 const Mesh1D& mesh,
                                 const SparseSeries<Vec>& forward) {
  const std::vector<Vec> rs = observation_functionals(setup, mesh);
  SparseSeries<Vec> g;
  g.basis = forward.basis;
  for (const auto& [nu, t] : forward.terms) {
    Vec obs(rs.size(), 0.0);
    for (std::size_t k = 0; k < rs.size(); ++k) {
      double v = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) v += rs[k][i] * t[i];
      obs[k] = v;
    }
    g.set(nu, std::move(obs));
  }
  return g;
}

SparseSeries<Vec> gpc_observation(const AffineOperatorFamily& fam,
                                  const ObservationSetup& setup,
                                  const MonotoneSet& lam) {
  return observe_series(setup, fam.mesh, taylor_forward(fam, lam));
}

ProductResult<double> truncated_product(const SparseSeries<double>& s1,
                                        const SparseSeries<double>& s2,
                                        std::size_t budget) {
  return detail::truncated_product_impl<double, double, double>(
      s1, s2, budget,
      [](SparseSeries<double>& out, const MultiIndex& idx, double a, double b) {
        out.add(idx, a, b);
      });
}

ProductResult<Vec> truncated_product(const SparseSeries<double>& s1,
                                     const SparseSeries<Vec>& s2,
                                     std::size_t budget) {
  return detail::truncated_product_impl<double, Vec, Vec>(
      s1, s2, budget,
      [](SparseSeries<Vec>& out, const MultiIndex& idx, double a,
         const Vec& b) { out.add(idx, a, b); });
}

ProductResult<Vec> hadamard_truncated_product(const SparseSeries<Vec>& s1,
                                              const SparseSeries<Vec>& s2,
                                              std::size_t budget) {
  return detail::truncated_product_impl<Vec, Vec, Vec>(
      s1, s2, budget,
      [](SparseSeries<Vec>& out, const MultiIndex& idx, const Vec& a,
         const Vec& b) {
        if (a.size() != b.size())
          throw DimensionMismatch("hadamard product length mismatch");
        Vec prod(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) prod[i] = a[i] * b[i];
        out.add(idx, 1.0, prod);
      });
}

PotentialSeries potential_series(const SparseSeries<Vec>& g,
                                 const ObservationSetup& setup,
                                 std::size_t budget) {
  if (setup.delta.size() != setup.n_obs() ||
      setup.gamma.size() != setup.n_obs())
    throw ConfigError("observation setup lacks data or noise variances");
  PotentialSeries out;
  out.series.basis = Basis::taylor;
  const MultiIndex zero;
  for (std::size_t k = 0; k < setup.n_obs(); ++k) {
    // Scalar component series g_k.
    SparseSeries<double> gk;
    gk.basis = Basis::taylor;
    for (const auto& [nu, coeff] : g.terms) gk.add(nu, 1.0, coeff[k]);

    const double inv_gamma = 1.0 / setup.gamma[k];
    const double dk = setup.delta[k];
    out.series.add(zero, 0.5 * inv_gamma * dk * dk, 1.0);
    for (const auto& [nu, c] : gk.terms)
      out.series.add(nu, -inv_gamma * dk, c);
    ProductResult<double> sq = truncated_product(gk, gk, budget);
    for (const auto& [nu, c] : sq.series.terms)
      out.series.add(nu, 0.5 * inv_gamma, c);
    out.dropped_mass += 0.5 * inv_gamma * sq.dropped_mass;
  }
  return out;
}

double PosteriorApprox::total_dropped_mass() const {
  double s = 0.0;
  for (const auto& d : diagnostics) s += d.dropped_mass;
  return s;
}

double PosteriorApprox::sup_error_majorant() const {
  // Error from replacing exp(-phi_trunc) by the truncated power sums: the
  // k-th power accumulates the per-stage drops amplified by l1 norms of the
  // remaining factors, err_k <= err_{k-1} * ||phi||_1 + drop_k.
  double bound = 0.0;
  double power_err = 0.0;
  double factorial = 1.0;
  std::size_t k = 0;
  for (const auto& d : diagnostics) {
    if (d.stage == "potential") {
      // exp is 1-Lipschitz on nonnegative arguments.
      bound += d.dropped_mass;
      continue;
    }
    ++k;
    factorial *= static_cast<double>(k);
    power_err = power_err * potential_l1 + d.dropped_mass;
    bound += power_err / factorial;
  }
  return bound + remainder_bound;
}

PosteriorApprox theta_series(const SparseSeries<Vec>& g,
                             const ObservationSetup& setup, std::size_t budget,
                             double c_k) {
  if (budget == 0) throw ConfigError("theta_series needs budget >= 1");
  if (!(c_k > 0.0)) throw ConfigError("theta_series needs c_k > 0");

  PosteriorApprox pa;
  pa.n_budget = budget;
  const double log_n = std::log(static_cast<double>(budget));
  pa.k_terms = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(c_k * log_n)));

  PotentialSeries phi = potential_series(g, setup, budget);
  pa.diagnostics.push_back(
      {"potential", phi.dropped_mass, phi.series.size()});
  pa.potential_l1 = l_sigma_norm(phi.series, 1.0);

  pa.theta_series.basis = Basis::taylor;
  pa.theta_series.add(MultiIndex{}, 1.0, 1.0);

  SparseSeries<double> power;
  power.basis = Basis::taylor;
  power.add(MultiIndex{}, 1.0, 1.0);

  double factorial = 1.0;
  for (std::size_t k = 1; k <= pa.k_terms; ++k) {
    ProductResult<double> prod = truncated_product(power, phi.series, budget);
    power = std::move(prod.series);
    pa.diagnostics.push_back(
        {"power_" + std::to_string(k), prod.dropped_mass, power.size()});
    factorial *= static_cast<double>(k);
    const double scale = (k % 2 == 0 ? 1.0 : -1.0) / factorial;
    for (const auto& [nu, c] : power.terms) pa.theta_series.add(nu, scale, c);
  }

  // Alternating-series tail of the exponential partial sum, with the l1 norm
  // majorizing |phi| on the box.
  double tail_term = std::pow(pa.potential_l1, pa.k_terms + 1);
  for (std::size_t k = 1; k <= pa.k_terms + 1; ++k)
    tail_term /= static_cast<double>(k);
  pa.remainder_bound = tail_term;
  return pa;
}

}  // namespace sgpc
