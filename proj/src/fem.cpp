#include "sgpc/fem.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace sgpc {

Vec TriDiag::matvec(const Vec& x) const {
  const std::size_t m = size();
  Vec y(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double v = diag[i] * x[i];
    if (i > 0) v += off[i - 1] * x[i - 1];
    if (i + 1 < m) v += off[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

void TriDiag::axpy(double s, const TriDiag& other) {
  if (other.size() != size())
    throw DimensionMismatch("tridiagonal size mismatch in axpy");
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] += s * other.diag[i];
  for (std::size_t i = 0; i < off.size(); ++i) off[i] += s * other.off[i];
}

TriDiagFactor::TriDiagFactor(const TriDiag& a) {
  const std::size_t m = a.size();
  d_.resize(m);
  l_.assign(m > 0 ? m - 1 : 0, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double di = a.diag[i];
    if (i > 0) di -= l_[i - 1] * l_[i - 1] * d_[i - 1];
    if (!(di > 0.0))
      throw NumericError("tridiagonal factorization lost positivity at row " +
                         std::to_string(i));
    d_[i] = di;
    if (i + 1 < m) l_[i] = a.off[i] / di;
  }
}

void TriDiagFactor::solve_inplace(Vec& rhs) const {
  const std::size_t m = d_.size();
  if (rhs.size() != m) throw DimensionMismatch("rhs size mismatch in solve");
  for (std::size_t i = 1; i < m; ++i) rhs[i] -= l_[i - 1] * rhs[i - 1];
  for (std::size_t i = 0; i < m; ++i) rhs[i] /= d_[i];
  for (std::size_t i = m - 1; i-- > 0;) rhs[i] -= l_[i] * rhs[i + 1];
}

Vec TriDiagFactor::solve(const Vec& rhs) const {
  Vec x = rhs;
  solve_inplace(x);
  return x;
}

namespace {

// Stiffness matrix of one piecewise-constant coefficient field: element e
// contributes u_e/h to the diagonal entries of its endpoints and -u_e/h to
// their coupling.
TriDiag assemble_stiffness(const Vec& field, const Mesh1D& mesh) {
  const std::size_t m = mesh.n_interior();
  const double inv_h = 1.0 / mesh.h();
  TriDiag a;
  a.diag.assign(m, 0.0);
  a.off.assign(m > 0 ? m - 1 : 0, 0.0);
  for (std::size_t e = 0; e < mesh.n_elems(); ++e) {
    const double k = field[e] * inv_h;
    // Global node indices of the element are e and e+1; interior unknowns
    // are nodes 1..n-1, i.e. interior slot = node - 1.
    if (e >= 1) a.diag[e - 1] += k;
    if (e + 1 <= m) a.diag[e] += k;
    if (e >= 1 && e + 1 <= m) a.off[e - 1] -= k;
  }
  return a;
}

}  // namespace

AffineOperatorFamily assemble(const PriorModel& model, const Mesh1D& mesh,
                              const std::function<double(double)>& f) {
  if (model.n_elems() != mesh.n_elems())
    throw DimensionMismatch("prior model and mesh element counts differ");
  AffineOperatorFamily fam{mesh, assemble_stiffness(model.abar, mesh), {}, {}};
  fam.ajs.reserve(model.n_dims());
  for (const auto& psi : model.psis)
    fam.ajs.push_back(assemble_stiffness(psi, mesh));

  const std::size_t m = mesh.n_interior();
  fam.load.assign(m, 0.0);
  const double half_h = 0.5 * mesh.h();
  for (std::size_t e = 0; e < mesh.n_elems(); ++e) {
    const double fe = f(mesh.midpoint(e)) * half_h;
    if (e >= 1) fam.load[e - 1] += fe;
    if (e + 1 <= m) fam.load[e] += fe;
  }
  return fam;
}

TriDiag operator_at(const AffineOperatorFamily& fam, const ParamVector& y) {
  if (y.size() != fam.n_dims())
    throw DimensionMismatch("parameter vector does not match operator family");
  TriDiag a = fam.a0;
  for (std::size_t j = 0; j < fam.n_dims(); ++j)
    if (y[j] != 0.0) a.axpy(y[j], fam.ajs[j]);
  return a;
}

Vec solve_at(const AffineOperatorFamily& fam, const ParamVector& y) {
  return TriDiagFactor(operator_at(fam, y)).solve(fam.load);
}

Vec with_boundary(const Vec& interior) {
  Vec full(interior.size() + 2, 0.0);
  std::copy(interior.begin(), interior.end(), full.begin() + 1);
  return full;
}

void ObservationSetup::validate() const {
  if (windows.empty()) throw ConfigError("observation setup needs K >= 1");
  for (const auto& w : windows) {
    if (!(w.lo >= 0.0 && w.hi <= 1.0 && w.lo < w.hi))
      throw ConfigError("observation window outside [0, 1] or empty");
  }
  if (!gamma.empty() && gamma.size() != windows.size())
    throw DimensionMismatch("noise variance count differs from window count");
  for (double g : gamma)
    if (!(g > 0.0)) throw ConfigError("noise variances must be positive");
  if (!delta.empty() && delta.size() != windows.size())
    throw DimensionMismatch("data vector length differs from window count");
}

Vec observation_functional(const ObservationWindow& window,
                           const Mesh1D& mesh) {
  if (!(window.lo >= 0.0 && window.hi <= 1.0 && window.lo < window.hi))
    throw ConfigError("observation window outside [0, 1] or empty");
  const std::size_t m = mesh.n_interior();
  const double h = mesh.h();
  Vec r(m, 0.0);
  for (std::size_t e = 0; e < mesh.n_elems(); ++e) {
    const double c = std::max(window.lo, mesh.node(e));
    const double d = std::min(window.hi, mesh.node(e + 1));
    if (d <= c) continue;
    const double len = d - c;
    const double mid = 0.5 * (c + d);
    // Exact integrals of the two local hat functions over [c, d].
    const double left = len * (mesh.node(e + 1) - mid) / h;
    const double right = len * (mid - mesh.node(e)) / h;
    if (e >= 1) r[e - 1] += left;
    if (e + 1 <= m) r[e] += right;
  }
  const double scale = 1.0 / (window.hi - window.lo);
  for (double& v : r) v *= scale;
  return r;
}

std::vector<Vec> observation_functionals(const ObservationSetup& setup,
                                         const Mesh1D& mesh) {
  std::vector<Vec> rs;
  rs.reserve(setup.n_obs());
  for (const auto& w : setup.windows)
    rs.push_back(observation_functional(w, mesh));
  return rs;
}

Vec observe(const ObservationSetup& setup, const Mesh1D& mesh, const Vec& p) {
  if (p.size() != mesh.n_interior())
    throw DimensionMismatch("observed vector does not match the mesh");
  Vec out(setup.n_obs(), 0.0);
  for (std::size_t k = 0; k < setup.n_obs(); ++k) {
    const Vec r = observation_functional(setup.windows[k], mesh);
    double v = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) v += r[i] * p[i];
    out[k] = v;
  }
  return out;
}

Vec forward_observation(const ObservationSetup& setup,
                        const AffineOperatorFamily& fam, const ParamVector& y) {
  return observe(setup, fam.mesh, solve_at(fam, y));
}

double potential_exact(const ObservationSetup& setup,
                       const AffineOperatorFamily& fam, const ParamVector& y) {
  if (setup.delta.size() != setup.n_obs() ||
      setup.gamma.size() != setup.n_obs())
    throw ConfigError("observation setup lacks data or noise variances");
  const Vec g = forward_observation(setup, fam, y);
  double phi = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double r = setup.delta[k] - g[k];
    phi += 0.5 * r * r / setup.gamma[k];
  }
  return phi;
}

ObservationSetup synthesize_data(const ObservationSetup& setup_template,
                                 const AffineOperatorFamily& fam,
                                 const ParamVector& y_truth,
                                 std::uint64_t noise_seed) {
  ObservationSetup setup = setup_template;
  if (setup.gamma.size() != setup.n_obs())
    throw ConfigError("synthesize_data needs noise variances");
  setup.delta = forward_observation(setup, fam, y_truth);
  std::mt19937_64 rng(noise_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t k = 0; k < setup.delta.size(); ++k)
    setup.delta[k] += std::sqrt(setup.gamma[k]) * gauss(rng);
  setup.y_truth = y_truth;
  setup.validate();
  return setup;
}

double energy_norm(const TriDiag& a, const Vec& v) {
  const Vec av = a.matvec(v);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * av[i];
  return std::sqrt(std::max(0.0, s));
}

double dual_norm(const TriDiagFactor& af, const Vec& r) {
  const Vec x = af.solve(r);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r[i] * x[i];
  return std::sqrt(std::max(0.0, s));
}

double l2_norm_mesh(const Mesh1D& mesh, const Vec& interior) {
  double s = 0.0;
  for (double v : interior) s += v * v;
  return std::sqrt(mesh.h() * s);
}

}  // namespace sgpc
