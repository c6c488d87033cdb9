#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgpc/posterior.hpp"

namespace sgpc {

/// Prior moment of the monomial y^nu: product over active dimensions of
/// int_{-1}^{1} t^e dt/2, i.e. 1/(e+1) for even exponents and 0 otherwise.
double moment_weight(const MultiIndex& nu);

/// Exact prior integral of a sparse polynomial, linear in the number of
/// terms. Taylor basis: sum of moment-weighted coefficients; Legendre basis:
/// the coefficient of the constant basis function.
template <typename C>
C integrate_series(const SparseSeries<C>& s) {
  C acc{};
  bool first = true;
  for (const auto& [nu, c] : s.terms) {
    double w = 0.0;
    if (s.basis == Basis::taylor)
      w = moment_weight(nu);
    else
      w = nu.is_zero() ? 1.0 : 0.0;
    if (w == 0.0 && !first) continue;
    if (first) {
      acc = coeff_scaled(c, w);
      first = false;
    } else {
      coeff_axpy(acc, w, c);
    }
  }
  return acc;
}

enum class EstimatorTag { semianalytic, mc, quadrature };
std::string to_string(EstimatorTag tag);

/// Normalization, posterior mean field and pointwise second moments of the
/// pressure, with the estimator that produced them.
struct PosteriorSummary {
  double z = 0.0;
  Vec mean_field;          // interior nodal values of E[p | data]
  Vec second_moment_diag;  // interior nodal values of E[p^2 | data]
  EstimatorTag estimator_tag = EstimatorTag::semianalytic;

  // Estimator diagnostics (populated where meaningful).
  double z_se = 0.0;
  Vec mean_se;
  std::size_t work_units = 0;  // forward solves (mc/quadrature)

  Vec covariance_diag() const;
};

/// Semianalytic posterior summary: Z and the reweighted moments are exact
/// prior integrals of truncated products of the density series with the
/// pressure series. Throws NumericError when the integrated density loses
/// positivity.
PosteriorSummary posterior_summary_semianalytic(
    const PosteriorApprox& pa, const SparseSeries<Vec>& p_series,
    std::size_t budget);

/// Plain Monte Carlo ratio estimator over prior samples, with standard
/// errors (delta method for the ratio).
PosteriorSummary mc_posterior(const ObservationSetup& setup,
                              const AffineOperatorFamily& fam,
                              const PriorModel& model, std::size_t n_samples,
                              std::uint64_t seed);

/// Full tensor Gauss-Legendre reference with exact forward solves at every
/// node. Cost grows as nodes^J; guarded to J <= 6.
PosteriorSummary quadrature_oracle(const ObservationSetup& setup,
                                   const AffineOperatorFamily& fam,
                                   const PriorModel& model,
                                   std::size_t nodes_per_dim);

}  // namespace sgpc
