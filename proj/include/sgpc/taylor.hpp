#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "sgpc/fem.hpp"
#include "sgpc/multi_index.hpp"
#include "sgpc/series.hpp"

namespace sgpc {

/// Taylor coefficients of the parametric solution p(y) on the monotone set
/// lam:
///   t_0 = A0^-1 load,   t_nu = -A0^-1 sum_{j active} A_j t_{nu - e_j},
/// computed in order of increasing total degree with A0 factored once.
SparseSeries<Vec> taylor_forward(const AffineOperatorFamily& fam,
                                 const MonotoneSet& lam);

/// l2 norm of A0 t_nu + sum_j A_j t_{nu-e_j} - [nu == 0] load; zero (up to
/// solver roundoff) for coefficients produced by the recursion.
double taylor_residual(const AffineOperatorFamily& fam,
                       const SparseSeries<Vec>& series, const MultiIndex& nu);

/// Greedily grown forward surrogate: starting from the zero index, repeatedly
/// accepts the admissible frontier index with the largest A0-energy
/// coefficient norm (ties broken canonically). Admissible means all parents
/// already accepted, so every prefix of the acceptance order is monotone and
/// prefixes are nested across budgets.
struct ForwardSurrogate {
  std::vector<MultiIndex> order;            // acceptance order; order[0] = 0
  std::map<MultiIndex, Vec> coefficients;   // accepted coefficients
  std::vector<std::size_t> backsolves_after;  // cumulative A0-backsolves when
                                              // the k-th index was accepted
  std::size_t total_backsolves = 0;

  MonotoneSet prefix_set(std::size_t n_terms) const;
  SparseSeries<Vec> prefix_series(std::size_t n_terms) const;
};

ForwardSurrogate build_forward_surrogate(const AffineOperatorFamily& fam,
                                         std::size_t target_terms);

}  // namespace sgpc
