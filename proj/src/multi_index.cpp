#include "sgpc/multi_index.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>

namespace sgpc {

MultiIndex MultiIndex::unit(std::uint32_t dim) {
  if (dim == 0) throw DimensionMismatch("multi-index dimensions are 1-based");
  MultiIndex nu;
  nu.entries_.push_back({dim, 1});
  return nu;
}

MultiIndex MultiIndex::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.dim < b.dim; });
  MultiIndex nu;
  for (const Entry& e : entries) {
    if (e.dim == 0) throw DimensionMismatch("multi-index dimensions are 1-based");
    if (e.exp == 0) continue;
    if (!nu.entries_.empty() && nu.entries_.back().dim == e.dim)
      throw DimensionMismatch("duplicate dimension in multi-index entries");
    nu.entries_.push_back(e);
  }
  return nu;
}

std::uint32_t MultiIndex::order() const noexcept {
  std::uint32_t total = 0;
  for (const Entry& e : entries_) total += e.exp;
  return total;
}

std::uint32_t MultiIndex::max_dim() const noexcept {
  return entries_.empty() ? 0 : entries_.back().dim;
}

std::uint32_t MultiIndex::at(std::uint32_t dim) const noexcept {
  for (const Entry& e : entries_) {
    if (e.dim == dim) return e.exp;
    if (e.dim > dim) break;
  }
  return 0;
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const {
  MultiIndex out;
  out.entries_.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->dim < b->dim)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->dim < a->dim) {
      out.entries_.push_back(*b++);
    } else {
      out.entries_.push_back({a->dim, a->exp + b->exp});
      ++a;
      ++b;
    }
  }
  return out;
}

MultiIndex MultiIndex::incremented(std::uint32_t dim) const {
  return plus(unit(dim));
}

MultiIndex MultiIndex::decremented(std::uint32_t dim) const {
  MultiIndex out = *this;
  for (auto it = out.entries_.begin(); it != out.entries_.end(); ++it) {
    if (it->dim == dim) {
      if (--it->exp == 0) out.entries_.erase(it);
      return out;
    }
  }
  throw DimensionMismatch("cannot decrement inactive dimension " +
                          std::to_string(dim));
}

std::string MultiIndex::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ' ';
    os << entries_[i].dim << '^' << entries_[i].exp;
  }
  return os.str();
}

MultiIndex MultiIndex::parse(const std::string& text) {
  if (text == "0" || text.empty()) return MultiIndex{};
  std::vector<Entry> entries;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    const auto caret = tok.find('^');
    if (caret == std::string::npos)
      throw ConfigError("malformed multi-index token '" + tok + "'");
    Entry e{};
    const char* db = tok.data();
    const char* de = tok.data() + caret;
    const char* eb = tok.data() + caret + 1;
    const char* ee = tok.data() + tok.size();
    const auto rd = std::from_chars(db, de, e.dim);
    const auto re = std::from_chars(eb, ee, e.exp);
    if (rd.ec != std::errc{} || rd.ptr != de || re.ec != std::errc{} ||
        re.ptr != ee)
      throw ConfigError("malformed multi-index token '" + tok + "'");
    entries.push_back(e);
  }
  return from_entries(std::move(entries));
}

bool operator<(const MultiIndex& a, const MultiIndex& b) {
  const auto oa = a.order();
  const auto ob = b.order();
  if (oa != ob) return oa < ob;
  return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(),
                                      b.entries_.begin(), b.entries_.end());
}

bool is_monotone(const IndexSet& s) {
  if (s.count(MultiIndex{}) == 0) return false;
  for (const MultiIndex& nu : s) {
    for (const auto& e : nu.entries()) {
      if (s.count(nu.decremented(e.dim)) == 0) return false;
    }
  }
  return true;
}

MonotoneSet::MonotoneSet() { members_.insert(MultiIndex{}); }

MonotoneSet MonotoneSet::checked(IndexSet s) {
  if (!is_monotone(s)) throw Error("index set is not monotone");
  return MonotoneSet(std::move(s));
}

MonotoneSet downward_close(const IndexSet& s) {
  IndexSet closed;
  closed.insert(MultiIndex{});
  std::deque<MultiIndex> queue(s.begin(), s.end());
  while (!queue.empty()) {
    MultiIndex nu = std::move(queue.front());
    queue.pop_front();
    if (!closed.insert(nu).second) continue;
    for (const auto& e : nu.entries()) queue.push_back(nu.decremented(e.dim));
  }
  return MonotoneSet(std::move(closed));
}

MonotoneSet minkowski_sum(const MonotoneSet& a, const MonotoneSet& b) {
  IndexSet out;
  for (const MultiIndex& nu : a.members())
    for (const MultiIndex& mu : b.members()) out.insert(nu.plus(mu));
  if (!is_monotone(out))
    throw Error("minkowski_sum produced a non-monotone set");
  return MonotoneSet(std::move(out));
}

namespace {

void enumerate_weighted(std::uint32_t dim, std::uint32_t n_dims,
                        double budget, const std::vector<double>& weights,
                        MultiIndex head, IndexSet& out, std::size_t cap) {
  if (out.size() > cap)
    throw CostGuardError("total_degree_set exceeds cardinality cap");
  out.insert(head);
  if (dim > n_dims) return;
  // Continue without activating `dim`, then with every affordable exponent.
  enumerate_weighted(dim + 1, n_dims, budget, weights, head, out, cap);
  const double w = weights[dim - 1];
  for (std::uint32_t k = 1; k * w <= budget + 1e-12; ++k) {
    MultiIndex next = head.plus(
        MultiIndex::from_entries({{dim, k}}));
    enumerate_weighted(dim + 1, n_dims, budget - k * w, weights, next, out,
                       cap);
  }
}

}  // namespace

MonotoneSet total_degree_set(std::uint32_t n_dims, std::uint32_t max_degree,
                             const std::vector<double>& weights,
                             std::size_t cap) {
  if (n_dims == 0) throw DimensionMismatch("total_degree_set needs n_dims >= 1");
  if (weights.size() != n_dims)
    throw DimensionMismatch("total_degree_set weights/dims mismatch");
  for (double w : weights)
    if (w < 1.0) throw ConfigError("total_degree_set weights must be >= 1");
  IndexSet out;
  enumerate_weighted(1, n_dims, static_cast<double>(max_degree), weights,
                     MultiIndex{}, out, cap);
  if (out.size() > cap)
    throw CostGuardError("total_degree_set exceeds cardinality cap");
  return MonotoneSet::checked(std::move(out));
}

}  // namespace sgpc
