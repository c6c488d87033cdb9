#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "sgpc/errors.hpp"

namespace sgpc {

/// Finitely supported multi-index: a sparse map from (1-based) dimension to a
/// positive exponent. The zero index stores no entries.
///
/// Ordering is canonical: first by total degree |nu|_1, then lexicographic on
/// the (dimension, exponent) entry list. All truncation tie-breaks in the
/// library go through this ordering so outputs are reproducible.
class MultiIndex {
 public:
  struct Entry {
    std::uint32_t dim;  // 1-based dimension
    std::uint32_t exp;  // exponent >= 1

    friend bool operator==(const Entry& a, const Entry& b) {
      return a.dim == b.dim && a.exp == b.exp;
    }
    friend bool operator<(const Entry& a, const Entry& b) {
      if (a.dim != b.dim) return a.dim < b.dim;
      return a.exp < b.exp;
    }
  };

  MultiIndex() = default;

  /// e_j: the unit index in dimension `dim` (1-based).
  static MultiIndex unit(std::uint32_t dim);

  /// Builds from (dim, exp) pairs; rejects duplicate dims, dim 0 and exp 0.
  static MultiIndex from_entries(std::vector<Entry> entries);

  bool is_zero() const noexcept { return entries_.empty(); }

  /// |nu|_1, the total degree.
  std::uint32_t order() const noexcept;

  /// Number of active dimensions.
  std::size_t support_size() const noexcept { return entries_.size(); }

  /// Largest active dimension (0 for the zero index).
  std::uint32_t max_dim() const noexcept;

  /// Exponent in dimension `dim`, 0 if inactive.
  std::uint32_t at(std::uint32_t dim) const noexcept;

  const std::vector<Entry>& entries() const noexcept { return entries_; }

  MultiIndex plus(const MultiIndex& other) const;
  MultiIndex incremented(std::uint32_t dim) const;
  /// nu - e_j; requires nu_j >= 1.
  MultiIndex decremented(std::uint32_t dim) const;

  /// Text form "d1^e1 d2^e2" with dims ascending; the zero index prints "0".
  std::string to_string() const;
  static MultiIndex parse(const std::string& text);

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator!=(const MultiIndex& a, const MultiIndex& b) {
    return !(a == b);
  }
  friend bool operator<(const MultiIndex& a, const MultiIndex& b);

 private:
  std::vector<Entry> entries_;  // sorted by dim, no zero exponents
};

using IndexSet = std::set<MultiIndex>;

/// Checks the two monotonicity properties: the zero index is a member, and
/// every member stays a member after decrementing any active dimension.
bool is_monotone(const IndexSet& s);

/// Finite downward-closed index set. Instances always satisfy is_monotone.
class MonotoneSet {
 public:
  /// The minimal monotone set {0}.
  MonotoneSet();

  /// Wraps an already-monotone set; throws if `s` is not monotone.
  static MonotoneSet checked(IndexSet s);

  bool contains(const MultiIndex& nu) const { return members_.count(nu) > 0; }
  std::size_t size() const noexcept { return members_.size(); }
  const IndexSet& members() const noexcept { return members_; }

  friend bool operator==(const MonotoneSet& a, const MonotoneSet& b) {
    return a.members_ == b.members_;
  }

 private:
  explicit MonotoneSet(IndexSet s) : members_(std::move(s)) {}
  IndexSet members_;

  friend MonotoneSet downward_close(const IndexSet&);
  friend MonotoneSet minkowski_sum(const MonotoneSet&, const MonotoneSet&);
};

/// Smallest monotone superset of s (always contains the zero index).
/// Idempotent: downward_close applied to a monotone set returns it unchanged.
MonotoneSet downward_close(const IndexSet& s);

/// {nu + nu' : nu in a, nu' in b}. The sum of monotone sets is monotone;
/// the result is verified and a violation throws (it would indicate a bug).
MonotoneSet minkowski_sum(const MonotoneSet& a, const MonotoneSet& b);

/// Anisotropic total-degree set {nu : sum_j weights[j-1]*nu_j <= max_degree}
/// over dimensions 1..n_dims. Weights must be >= 1. Throws CostGuardError if
/// the cardinality would exceed `cap`.
MonotoneSet total_degree_set(std::uint32_t n_dims, std::uint32_t max_degree,
                             const std::vector<double>& weights,
                             std::size_t cap = 2000000);

}  // namespace sgpc
