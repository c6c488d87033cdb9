#pragma once

#include <cstdint>
#include <vector>

#include "sgpc/errors.hpp"
#include "sgpc/mesh.hpp"

namespace sgpc {

/// Parameter vector y in the box U = [-1,1]^J.
class ParamVector {
 public:
  ParamVector() = default;

  /// Validating constructor; entries must lie in [-1, 1].
  explicit ParamVector(std::vector<double> values);

  /// Bypasses the box check, for diagnostic evaluation outside U.
  static ParamVector unchecked(std::vector<double> values);

  std::size_t size() const noexcept { return y_.size(); }
  double operator[](std::size_t j) const { return y_[j]; }
  const std::vector<double>& values() const noexcept { return y_; }

 private:
  std::vector<double> y_;
};

/// Affine-parametric diffusion coefficient
///   u(x, y) = abar(x) + sum_j y_j psi_j(x)
/// with fields stored as element-midpoint values and fluctuation amplitudes
/// ||psi_j||_inf = scale_c * j^-(1+decay_b). The construction enforces
///   sum_j ||psi_j||_inf = kappa/(1+kappa) * min abar,
/// which keeps the coefficient uniformly elliptic over the whole box.
struct PriorModel {
  std::vector<double> abar;               // element midpoint values, > 0
  std::vector<std::vector<double>> psis;  // J fluctuation fields
  std::vector<double> psi_linf;           // sup norms of the continuum fields
  double decay_b = 0.0;
  double scale_c = 0.0;
  double kappa = 0.0;

  std::size_t n_dims() const noexcept { return psis.size(); }
  std::size_t n_elems() const noexcept { return abar.size(); }
  double abar_min() const;
  double psi_linf_sum() const;
};

/// Certified uniform ellipticity band [a_min, a_max].
struct UeaCertificate {
  double a_min;
  double a_max;
};

/// Builds the sine-mode prior psi_j(x) = c * j^-(1+b) * sin(j pi x) sampled
/// at element midpoints, with c chosen so the fluctuation budget is met with
/// equality.
PriorModel build_prior(std::size_t n_dims, double decay_b, double kappa,
                       const Mesh1D& mesh, double abar_value);

/// Verifies elementwise that abar - sum_j |psi_j| >= a_min and
/// abar + sum_j |psi_j| <= a_max, with a_min = min(abar)/(1+kappa), and that
/// the fluctuation sum respects its budget. Throws UeaViolation naming the
/// first offending element.
UeaCertificate validate_uea(const PriorModel& model);

/// abar + sum_j y_j psi_j at element midpoints.
std::vector<double> coefficient_at(const PriorModel& model,
                                   const ParamVector& y);

/// One i.i.d. uniform draw from the prior box; identical seeds reproduce
/// identical vectors.
ParamVector sample_prior(const PriorModel& model, std::uint64_t seed);

}  // namespace sgpc
