#include "sgpc/taylor.hpp"

#include <algorithm>
#include <cmath>

namespace sgpc {

namespace {

Vec recursion_rhs(const AffineOperatorFamily& fam,
                  const std::map<MultiIndex, Vec>& known,
                  const MultiIndex& nu) {
  Vec rhs(fam.n_unknowns(), 0.0);
  for (const auto& e : nu.entries()) {
    const auto it = known.find(nu.decremented(e.dim));
    if (it == known.end())
      throw Error("taylor recursion missing parent coefficient");
    const Vec contrib = fam.ajs[e.dim - 1].matvec(it->second);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= contrib[i];
  }
  return rhs;
}

}  // namespace

SparseSeries<Vec> taylor_forward(const AffineOperatorFamily& fam,
                                 const MonotoneSet& lam) {
  for (const MultiIndex& nu : lam.members())
    if (nu.max_dim() > fam.n_dims())
      throw DimensionMismatch("index set uses more dimensions than the family");

  const TriDiagFactor a0(fam.a0);
  std::map<MultiIndex, Vec> coeffs;
  // Canonical order sorts by total degree first, so parents always precede
  // their children.
  for (const MultiIndex& nu : lam.members()) {
    if (nu.is_zero()) {
      coeffs.emplace(nu, a0.solve(fam.load));
    } else {
      coeffs.emplace(nu, a0.solve(recursion_rhs(fam, coeffs, nu)));
    }
  }
  SparseSeries<Vec> series;
  series.basis = Basis::taylor;
  series.terms = std::move(coeffs);
  return series;
}

double taylor_residual(const AffineOperatorFamily& fam,
                       const SparseSeries<Vec>& series, const MultiIndex& nu) {
  const Vec* t = series.find(nu);
  if (!t) throw Error("taylor_residual: coefficient not present");
  Vec r = fam.a0.matvec(*t);
  for (const auto& e : nu.entries()) {
    const Vec* parent = series.find(nu.decremented(e.dim));
    if (!parent) throw Error("taylor_residual: parent coefficient missing");
    const Vec contrib = fam.ajs[e.dim - 1].matvec(*parent);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += contrib[i];
  }
  if (nu.is_zero())
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= fam.load[i];
  double s = 0.0;
  for (double v : r) s += v * v;
  return std::sqrt(s);
}

MonotoneSet ForwardSurrogate::prefix_set(std::size_t n_terms) const {
  n_terms = std::min(n_terms, order.size());
  IndexSet s(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_terms));
  return MonotoneSet::checked(std::move(s));
}

SparseSeries<Vec> ForwardSurrogate::prefix_series(std::size_t n_terms) const {
  n_terms = std::min(n_terms, order.size());
  SparseSeries<Vec> s;
  s.basis = Basis::taylor;
  for (std::size_t i = 0; i < n_terms; ++i)
    s.terms.emplace(order[i], coefficients.at(order[i]));
  return s;
}

ForwardSurrogate build_forward_surrogate(const AffineOperatorFamily& fam,
                                         std::size_t target_terms) {
  if (target_terms == 0)
    throw ConfigError("surrogate needs at least one term");
  const TriDiagFactor a0(fam.a0);
  ForwardSurrogate out;

  struct Candidate {
    Vec coeff;
    double norm;
  };
  std::map<MultiIndex, Candidate> frontier;

  auto admissible = [&](const MultiIndex& nu) {
    for (const auto& e : nu.entries())
      if (!out.coefficients.count(nu.decremented(e.dim))) return false;
    return true;
  };
  auto push_candidate = [&](const MultiIndex& nu) {
    if (out.coefficients.count(nu) || frontier.count(nu) || !admissible(nu))
      return;
    Vec rhs(fam.n_unknowns(), 0.0);
    for (const auto& e : nu.entries()) {
      const Vec contrib =
          fam.ajs[e.dim - 1].matvec(out.coefficients.at(nu.decremented(e.dim)));
      for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= contrib[i];
    }
    Vec t = a0.solve(rhs);
    ++out.total_backsolves;
    const double norm = energy_norm(fam.a0, t);
    frontier.emplace(nu, Candidate{std::move(t), norm});
  };
  auto accept = [&](const MultiIndex& nu, Vec coeff) {
    out.coefficients.emplace(nu, std::move(coeff));
    out.order.push_back(nu);
    out.backsolves_after.push_back(out.total_backsolves);
    for (std::uint32_t j = 1; j <= fam.n_dims(); ++j)
      push_candidate(nu.incremented(j));
  };

  Vec t0 = a0.solve(fam.load);
  ++out.total_backsolves;
  accept(MultiIndex{}, std::move(t0));

  while (out.order.size() < target_terms && !frontier.empty()) {
    auto best = frontier.begin();
    for (auto it = std::next(frontier.begin()); it != frontier.end(); ++it) {
      if (it->second.norm > best->second.norm) best = it;
      // Map order is canonical, so the first maximum wins on ties.
    }
    MultiIndex nu = best->first;
    Vec coeff = std::move(best->second.coeff);
    frontier.erase(best);
    accept(nu, std::move(coeff));
  }
  return out;
}

}  // namespace sgpc
