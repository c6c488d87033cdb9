#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sgpc/fem.hpp"
#include "sgpc/series.hpp"
#include "sgpc/taylor.hpp"

namespace sgpc {

/// Posterior density with respect to the prior, theta(y) = exp(-Phi(y)),
/// a value in (0, 1].
double theta_exact(const ObservationSetup& setup,
                   const AffineOperatorFamily& fam, const ParamVector& y);

/// Applies the observation functionals coefficient-wise to a Taylor series of
/// FEM vectors; linearity makes the result the exact Taylor expansion of the
/// surrogate observation map.
SparseSeries<Vec> observe_series(const ObservationSetup& setup,
                                 const Mesh1D& mesh,
                                 const SparseSeries<Vec>& forward);

/// Convenience: taylor_forward on lam followed by observe_series.
SparseSeries<Vec> gpc_observation(const AffineOperatorFamily& fam,
                                  const ObservationSetup& setup,
                                  const MonotoneSet& lam);

/// Budget value meaning "no truncation".
inline constexpr std::size_t kNoTruncation =
    std::numeric_limits<std::size_t>::max();

template <typename C>
struct ProductResult {
  SparseSeries<C> series;
  /// Sum of |g_nu| * |g'_mu| over the discarded pairs; since |y^nu| <= 1 on
  /// the box this majorizes the pointwise truncation error.
  double dropped_mass = 0.0;
};

namespace detail {

/// Shared truncated-product kernel: ranks all coefficient pairs by the
/// product of their norms, keeps the `budget` largest (ties broken by the
/// canonical order of the factor indices), and accumulates them onto the sum
/// indices.
template <typename A, typename B, typename R, typename Combine>
ProductResult<R> truncated_product_impl(const SparseSeries<A>& s1,
                                        const SparseSeries<B>& s2,
                                        std::size_t budget, Combine&& combine) {
  if (s1.basis != Basis::taylor || s2.basis != Basis::taylor)
    throw Error("truncated products require Taylor-basis factors");

  struct Pair {
    const MultiIndex* nu;
    const A* a;
    const MultiIndex* mu;
    const B* b;
    double mag;
  };
  std::vector<Pair> pairs;
  pairs.reserve(s1.size() * s2.size());
  for (const auto& [nu, a] : s1.terms) {
    const double na = coeff_norm(a);
    for (const auto& [mu, b] : s2.terms)
      pairs.push_back({&nu, &a, &mu, &b, na * coeff_norm(b)});
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (x.mag != y.mag) return x.mag > y.mag;
    if (*x.nu != *y.nu) return *x.nu < *y.nu;
    return *x.mu < *y.mu;
  });

  ProductResult<R> out;
  out.series.basis = Basis::taylor;
  const std::size_t keep = std::min(budget, pairs.size());
  for (std::size_t i = 0; i < keep; ++i)
    combine(out.series, pairs[i].nu->plus(*pairs[i].mu), *pairs[i].a,
            *pairs[i].b);
  for (std::size_t i = keep; i < pairs.size(); ++i)
    out.dropped_mass += pairs[i].mag;
  return out;
}

}  // namespace detail

/// Best-budget-term truncated product of two scalar Taylor series.
ProductResult<double> truncated_product(const SparseSeries<double>& s1,
                                        const SparseSeries<double>& s2,
                                        std::size_t budget);

/// Scalar series times vector-valued series.
ProductResult<Vec> truncated_product(const SparseSeries<double>& s1,
                                     const SparseSeries<Vec>& s2,
                                     std::size_t budget);

/// Componentwise (Hadamard) product of two vector-valued series, used for
/// pointwise second moments.
ProductResult<Vec> hadamard_truncated_product(const SparseSeries<Vec>& s1,
                                              const SparseSeries<Vec>& s2,
                                              std::size_t budget);

struct PotentialSeries {
  SparseSeries<double> series;
  double dropped_mass = 0.0;
};

/// Truncated potential series
///   1/2 sum_k (delta_k^2 - 2 delta_k g_k + [g_k g_k]_budget) / gamma_k
/// assembled per observation component, each squared term truncated
/// independently with the same budget.
PotentialSeries potential_series(const SparseSeries<Vec>& g,
                                 const ObservationSetup& setup,
                                 std::size_t budget);

struct StageDiagnostic {
  std::string stage;
  double dropped_mass;
  std::size_t support_size;
};

/// Constructive budget-term posterior density approximation.
struct PosteriorApprox {
  SparseSeries<double> theta_series;  // Taylor basis
  std::size_t n_budget = 0;
  std::size_t k_terms = 0;  // number of exponential-series terms K(N)
  std::vector<StageDiagnostic> diagnostics;
  double potential_l1 = 0.0;     // l1 norm of the truncated potential
  double remainder_bound = 0.0;  // tail of the exponential partial sum

  double total_dropped_mass() const;
  /// Certified sup-norm majorant of |theta - theta_series| on the box,
  /// assuming the truncated potential stays nonnegative there: per-stage
  /// dropped masses amplified through the power recursion plus the
  /// partial-sum remainder. Forward-surrogate error is not included.
  double sup_error_majorant() const;
};

/// theta_N = sum_{k=0}^{K} (-1)^k/k! [phi^k]_budget with K = max(1,
/// ceil(c_k ln N)) and powers built left-to-right by repeated truncated
/// products of the truncated potential.
PosteriorApprox theta_series(const SparseSeries<Vec>& g,
                             const ObservationSetup& setup, std::size_t budget,
                             double c_k = 2.0);

}  // namespace sgpc
