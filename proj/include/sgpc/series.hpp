#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "sgpc/errors.hpp"
#include "sgpc/multi_index.hpp"
#include "sgpc/prior.hpp"

namespace sgpc {

enum class Basis { taylor, legendre };

// ---------------------------------------------------------------------------
// Coefficient helpers shared by scalar and vector-valued series.

inline double coeff_norm(double c) { return std::abs(c); }

inline double coeff_norm(const std::vector<double>& c) {
  double s = 0.0;
  for (double v : c) s += v * v;
  return std::sqrt(s);
}

inline void coeff_axpy(double& acc, double s, double x) { acc += s * x; }

inline void coeff_axpy(std::vector<double>& acc, double s,
                       const std::vector<double>& x) {
  if (acc.size() != x.size())
    throw DimensionMismatch("coefficient length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) acc[i] += s * x[i];
}

inline double coeff_scaled(double x, double s) { return s * x; }

inline std::vector<double> coeff_scaled(const std::vector<double>& x,
                                        double s) {
  std::vector<double> out(x);
  for (double& v : out) v *= s;
  return out;
}

// ---------------------------------------------------------------------------

/// Sparse polynomial series over the parameter box with coefficients of type
/// C (scalar, observation vector, or FEM vector), in Taylor (monomial) or
/// normalized-Legendre basis. Terms are keyed canonically, so iteration order
/// is deterministic.
template <typename C>
struct SparseSeries {
  Basis basis = Basis::taylor;
  std::map<MultiIndex, C> terms;

  std::size_t size() const noexcept { return terms.size(); }
  bool empty() const noexcept { return terms.empty(); }

  const C* find(const MultiIndex& nu) const {
    auto it = terms.find(nu);
    return it == terms.end() ? nullptr : &it->second;
  }

  /// Accumulates scale * value onto index nu; exact-zero results are pruned
  /// so no explicit zero coefficients are stored.
  void add(const MultiIndex& nu, double scale, const C& value) {
    auto it = terms.find(nu);
    if (it == terms.end()) {
      C scaled = coeff_scaled(value, scale);
      if (coeff_norm(scaled) != 0.0) terms.emplace(nu, std::move(scaled));
    } else {
      coeff_axpy(it->second, scale, value);
      if (coeff_norm(it->second) == 0.0) terms.erase(it);
    }
  }

  void set(const MultiIndex& nu, C value) {
    if (coeff_norm(value) == 0.0)
      terms.erase(nu);
    else
      terms.insert_or_assign(nu, std::move(value));
  }

  IndexSet support() const {
    IndexSet s;
    for (const auto& [nu, c] : terms) s.insert(nu);
    return s;
  }

  std::uint32_t max_degree() const {
    std::uint32_t d = 0;
    for (const auto& [nu, c] : terms)
      for (const auto& e : nu.entries()) d = std::max(d, e.exp);
    return d;
  }

  std::uint32_t max_dim() const {
    std::uint32_t d = 0;
    for (const auto& [nu, c] : terms) d = std::max(d, nu.max_dim());
    return d;
  }
};

/// (sum ||c_nu||^sigma)^(1/sigma); sigma = 1 gives the l1 majorant used by
/// the sup-norm error bounds.
template <typename C>
double l_sigma_norm(const SparseSeries<C>& s, double sigma) {
  double acc = 0.0;
  for (const auto& [nu, c] : s.terms) acc += std::pow(coeff_norm(c), sigma);
  return std::pow(acc, 1.0 / sigma);
}

// ---------------------------------------------------------------------------
// Univariate basis data.

/// Values of the normalized Legendre polynomials L_0..L_degmax at t, with
/// int_{-1}^{1} L_k(t)^2 dt/2 = 1.
std::vector<double> legendre_values(double t, std::uint32_t degmax);

/// Row n lists the coefficients of t^n in the normalized Legendre basis:
/// t^n = sum_k table[n][k] L_k(t). Entries with k > n or mismatched parity
/// are exactly zero.
std::vector<std::vector<double>> monomial_to_legendre_table(
    std::uint32_t degmax);

/// Row k lists the monomial coefficients of L_k: L_k(t) = sum_n table[k][n] t^n.
std::vector<std::vector<double>> legendre_to_monomial_table(
    std::uint32_t degmax);

// ---------------------------------------------------------------------------

/// Evaluates the series at y; extension outside the box is permitted for
/// diagnostics. Legendre values come from the three-term recurrence.
template <typename C>
C evaluate_series(const SparseSeries<C>& s, const ParamVector& y) {
  if (s.max_dim() > y.size())
    throw DimensionMismatch("parameter vector too short for series support");
  // Per-dimension value tables up to the needed degree.
  const std::uint32_t degmax = s.max_degree();
  std::vector<std::vector<double>> table(y.size());
  auto dim_values = [&](std::uint32_t dim) -> const std::vector<double>& {
    auto& tab = table[dim - 1];
    if (tab.empty()) {
      const double t = y[dim - 1];
      if (s.basis == Basis::legendre) {
        tab = legendre_values(t, degmax);
      } else {
        tab.resize(degmax + 1);
        tab[0] = 1.0;
        for (std::uint32_t k = 1; k <= degmax; ++k) tab[k] = tab[k - 1] * t;
      }
    }
    return tab;
  };

  C acc{};
  bool first = true;
  for (const auto& [nu, c] : s.terms) {
    double b = 1.0;
    for (const auto& e : nu.entries()) b *= dim_values(e.dim)[e.exp];
    if (first) {
      acc = coeff_scaled(c, b);
      first = false;
    } else {
      coeff_axpy(acc, b, c);
    }
  }
  return acc;
}

template <typename C>
struct TruncateResult {
  SparseSeries<C> series;
  double dropped_mass = 0.0;  // sum of dropped coefficient norms
};

/// Keeps the n_keep terms of largest coefficient norm, ties broken by
/// canonical index order; reports the mass of everything discarded.
template <typename C>
TruncateResult<C> truncate_largest(
    const SparseSeries<C>& s, std::size_t n_keep,
    const std::function<double(const C&)>& norm = nullptr) {
  auto measure = [&](const C& c) { return norm ? norm(c) : coeff_norm(c); };
  std::vector<std::pair<const MultiIndex*, double>> ranked;
  ranked.reserve(s.size());
  for (const auto& [nu, c] : s.terms) ranked.push_back({&nu, measure(c)});
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return *a.first < *b.first;
            });
  TruncateResult<C> out;
  out.series.basis = s.basis;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (i < n_keep)
      out.series.terms.emplace(*ranked[i].first,
                               s.terms.at(*ranked[i].first));
    else
      out.dropped_mass += ranked[i].second;
  }
  return out;
}

/// Least-squares slope of log(error) against log(N). Rejects fewer than three
/// points and non-positive values.
double fit_decay_rate(const std::vector<std::pair<double, double>>& points);

// ---------------------------------------------------------------------------
// Basis conversion. Exact linear bijection on monotone supports: in one
// dimension t^n expands over Legendre degrees <= n (and conversely), so
// downward-closed supports map into themselves.

namespace detail {

template <typename C>
void expand_product(const SparseSeries<C>& in,
                    const std::vector<std::vector<double>>& table,
                    SparseSeries<C>& out) {
  for (const auto& [nu, c] : in.terms) {
    // Tensor expansion over the active dimensions of nu.
    std::vector<MultiIndex::Entry> head;
    head.reserve(nu.support_size());
    auto recurse = [&](auto&& self, std::size_t pos, double weight) -> void {
      if (weight == 0.0) return;
      if (pos == nu.entries().size()) {
        out.add(MultiIndex::from_entries(head), weight, c);
        return;
      }
      const auto& entry = nu.entries()[pos];
      const auto& row = table[entry.exp];
      for (std::uint32_t k = 0; k < row.size(); ++k) {
        if (row[k] == 0.0) continue;
        if (k > 0) head.push_back({entry.dim, k});
        self(self, pos + 1, weight * row[k]);
        if (k > 0) head.pop_back();
      }
    };
    recurse(recurse, 0, 1.0);
  }
}

template <typename C>
void require_support_in(const SparseSeries<C>& s, const MonotoneSet& lam) {
  for (const auto& [nu, c] : s.terms)
    if (!lam.contains(nu))
      throw Error("series support leaves the given monotone set");
}

}  // namespace detail

/// Re-expands a Taylor series with support inside the monotone set lam in the
/// normalized Legendre basis.
template <typename C>
SparseSeries<C> legendre_from_taylor(const SparseSeries<C>& s,
                                     const MonotoneSet& lam) {
  if (s.basis != Basis::taylor)
    throw Error("legendre_from_taylor expects a Taylor-basis series");
  detail::require_support_in(s, lam);
  SparseSeries<C> out;
  out.basis = Basis::legendre;
  detail::expand_product(s, monomial_to_legendre_table(s.max_degree()), out);
  return out;
}

/// Inverse conversion, back to the monomial basis.
template <typename C>
SparseSeries<C> taylor_from_legendre(const SparseSeries<C>& s,
                                     const MonotoneSet& lam) {
  if (s.basis != Basis::legendre)
    throw Error("taylor_from_legendre expects a Legendre-basis series");
  detail::require_support_in(s, lam);
  SparseSeries<C> out;
  out.basis = Basis::taylor;
  detail::expand_product(s, legendre_to_monomial_table(s.max_degree()), out);
  return out;
}

}  // namespace sgpc
