#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sgpc/errors.hpp"
#include "sgpc/mesh.hpp"
#include "sgpc/prior.hpp"

namespace sgpc {

using Vec = std::vector<double>;

/// Symmetric tridiagonal matrix acting on interior nodal values.
struct TriDiag {
  Vec diag;  // size m
  Vec off;   // size m-1, sub- and super-diagonal

  std::size_t size() const noexcept { return diag.size(); }
  Vec matvec(const Vec& x) const;
  /// this += s * other
  void axpy(double s, const TriDiag& other);
};

/// LDL^T factorization of a symmetric positive definite tridiagonal matrix.
/// Construction throws NumericError when a pivot is not positive, which for
/// assembled operators signals loss of ellipticity.
class TriDiagFactor {
 public:
  explicit TriDiagFactor(const TriDiag& a);

  Vec solve(const Vec& rhs) const;
  void solve_inplace(Vec& rhs) const;
  std::size_t size() const noexcept { return d_.size(); }

 private:
  Vec d_;  // pivots
  Vec l_;  // subdiagonal multipliers
};

/// Stiffness matrices realizing the affine dependence
///   A(y) = a0 + sum_j y_j ajs[j]
/// together with the load vector, all on the interior nodes of `mesh`.
struct AffineOperatorFamily {
  Mesh1D mesh;
  TriDiag a0;
  std::vector<TriDiag> ajs;
  Vec load;

  std::size_t n_dims() const noexcept { return ajs.size(); }
  std::size_t n_unknowns() const noexcept { return a0.size(); }
};

/// Assembles piecewise-linear stiffness matrices from the element-midpoint
/// coefficient fields and the load vector from f by midpoint quadrature.
AffineOperatorFamily assemble(const PriorModel& model, const Mesh1D& mesh,
                              const std::function<double(double)>& f);

/// A(y) = a0 + sum_j y_j ajs[j].
TriDiag operator_at(const AffineOperatorFamily& fam, const ParamVector& y);

/// Direct solve of A(y) p = load; returns interior nodal values.
Vec solve_at(const AffineOperatorFamily& fam, const ParamVector& y);

/// Interior nodal vector extended by the homogeneous boundary values.
Vec with_boundary(const Vec& interior);

/// Window-average observation o(p) = (1/|I|) int_I p dx over I = (lo, hi).
struct ObservationWindow {
  double lo;
  double hi;
};

/// K observation windows with data vector delta and diagonal noise
/// covariance gamma.
struct ObservationSetup {
  std::vector<ObservationWindow> windows;
  Vec delta;
  Vec gamma;
  std::optional<ParamVector> y_truth;  // recorded by synthesize_data

  std::size_t n_obs() const noexcept { return windows.size(); }
  void validate() const;
};

/// Dual vector r of one window functional: o(p) = r . p for interior p.
/// Exact for piecewise-linear functions.
Vec observation_functional(const ObservationWindow& window, const Mesh1D& mesh);

/// All K functionals, one dual vector per window.
std::vector<Vec> observation_functionals(const ObservationSetup& setup,
                                         const Mesh1D& mesh);

/// Applies the K window averages to interior nodal values.
Vec observe(const ObservationSetup& setup, const Mesh1D& mesh, const Vec& p);

/// Observation map: observe(solve_at(y)).
Vec forward_observation(const ObservationSetup& setup,
                        const AffineOperatorFamily& fam, const ParamVector& y);

/// Covariance-weighted least-squares misfit
///   Phi(y) = 1/2 sum_k (delta_k - G_k(y))^2 / gamma_k  >= 0.
double potential_exact(const ObservationSetup& setup,
                       const AffineOperatorFamily& fam, const ParamVector& y);

/// Produces delta = G(y_truth) + eta with eta_k ~ N(0, gamma_k) drawn from a
/// seeded generator; the template supplies windows and gamma.
ObservationSetup synthesize_data(const ObservationSetup& setup_template,
                                 const AffineOperatorFamily& fam,
                                 const ParamVector& y_truth,
                                 std::uint64_t noise_seed);

// Discrete norms used by the stability and error checks.
double energy_norm(const TriDiag& a, const Vec& v);           // sqrt(v'Av)
double dual_norm(const TriDiagFactor& af, const Vec& r);      // sqrt(r'A^-1 r)
double l2_norm_mesh(const Mesh1D& mesh, const Vec& interior); // sqrt(h sum v^2)

}  // namespace sgpc
