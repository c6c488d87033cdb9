#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sgpc/expectation.hpp"
#include "sgpc/series.hpp"
#include "sgpc/taylor.hpp"
#include "test_util.hpp"

using namespace sgpc;
using sgpc::testing::random_series;
using sgpc::testing::tensor_quadrature;

namespace {

MultiIndex mi(std::vector<MultiIndex::Entry> entries) {
  return MultiIndex::from_entries(std::move(entries));
}

AffineOperatorFamily proportional_family(std::size_t n_elems, double ratio) {
  // One fluctuation proportional to the mean field: u = (1 + ratio*y) abar,
  // so p(y) = p0 / (1 + ratio*y) and the Taylor coefficients are geometric.
  const Mesh1D mesh(n_elems);
  PriorModel m;
  m.abar.assign(n_elems, 1.0);
  m.psis.push_back(std::vector<double>(n_elems, ratio));
  m.psi_linf = {ratio};
  m.kappa = 0.999;
  m.decay_b = 1.0;
  return assemble(m, mesh, [](double) { return 1.0; });
}

}  // namespace

TEST_CASE("evaluate_series basics") {
  SparseSeries<double> s;
  CHECK(evaluate_series(s, ParamVector({0.3})) == 0.0);

  s.add(MultiIndex{}, 1.0, 1.0);
  s.add(MultiIndex::unit(1), 1.0, 2.0);
  CHECK(evaluate_series(s, ParamVector({0.5})) == doctest::Approx(2.0));

  CHECK_THROWS_AS(evaluate_series(s, ParamVector(std::vector<double>{})),
                  DimensionMismatch);
}

TEST_CASE("legendre conversion of y^2") {
  SparseSeries<double> s;
  s.add(mi({{1, 2}}), 1.0, 1.0);
  const MonotoneSet lam = downward_close(s.support());
  const SparseSeries<double> leg = legendre_from_taylor(s, lam);
  REQUIRE(leg.size() == 2);
  const double* c0 = leg.find(MultiIndex{});
  const double* c2 = leg.find(mi({{1, 2}}));
  REQUIRE(c0);
  REQUIRE(c2);
  CHECK(*c0 == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(*c2 == doctest::Approx(2.0 / (3.0 * std::sqrt(5.0))).epsilon(1e-13));

  // Independent projection oracle: <y^2, L_k> by quadrature.
  for (std::uint32_t k = 0; k <= 2; ++k) {
    const double proj = tensor_quadrature(
        [&](const std::vector<double>& y) {
          return y[0] * y[0] * legendre_values(y[0], 2)[k];
        },
        1, 8);
    const MultiIndex nu = k == 0 ? MultiIndex{} : mi({{1, k}});
    const double* c = leg.find(nu);
    CHECK(proj == doctest::Approx(c ? *c : 0.0).epsilon(1e-12));
  }
}

TEST_CASE("constant series converts to the constant Legendre mode") {
  SparseSeries<double> s;
  s.add(MultiIndex{}, 1.0, 3.25);
  const SparseSeries<double> leg =
      legendre_from_taylor(s, MonotoneSet{});
  REQUIRE(leg.size() == 1);
  CHECK(*leg.find(MultiIndex{}) == doctest::Approx(3.25));
}

TEST_CASE("conversion round trip and evaluation agreement") {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 20; ++rep) {
    const SparseSeries<double> s = random_series(rng, 3, 6, 12);
    const MonotoneSet lam = downward_close(s.support());
    const SparseSeries<double> leg = legendre_from_taylor(s, lam);
    const SparseSeries<double> back = taylor_from_legendre(leg, lam);

    // Round trip reproduces the coefficients to 1e-12 relative.
    for (const auto& [nu, c] : s.terms) {
      const double* r = back.find(nu);
      REQUIRE(r);
      CHECK(*r == doctest::Approx(c).epsilon(1e-12));
    }
    for (const auto& [nu, c] : back.terms) CHECK(s.find(nu) != nullptr);

    // Legendre support never leaves the monotone set.
    for (const auto& [nu, c] : leg.terms) CHECK(lam.contains(nu));

    // Both bases evaluate identically.
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int i = 0; i < 5; ++i) {
      const ParamVector y({unif(rng), unif(rng), unif(rng)});
      CHECK(evaluate_series(s, y) ==
            doctest::Approx(evaluate_series(leg, y)).epsilon(1e-11));
    }
  }
}

TEST_CASE("non-monotone support is rejected") {
  SparseSeries<double> s;
  s.add(mi({{1, 2}}), 1.0, 1.0);
  // lam = {0, e1} does not contain the support.
  const MonotoneSet lam = downward_close(IndexSet{MultiIndex::unit(1)});
  CHECK_THROWS(legendre_from_taylor(s, lam));
}

TEST_CASE("parseval identity against tensor quadrature") {
  std::mt19937_64 rng(99);
  const SparseSeries<double> s = random_series(rng, 3, 3, 8);
  const MonotoneSet lam = downward_close(s.support());
  const SparseSeries<double> leg = legendre_from_taylor(s, lam);
  double sum_sq = 0.0;
  for (const auto& [nu, c] : leg.terms) sum_sq += c * c;
  const double quad = tensor_quadrature(
      [&](const std::vector<double>& y) {
        const double v = evaluate_series(s, ParamVector(y));
        return v * v;
      },
      3, 8);
  CHECK(sum_sq == doctest::Approx(quad).epsilon(1e-12));
}

TEST_CASE("legendre integral is the constant coefficient") {
  std::mt19937_64 rng(123);
  const SparseSeries<double> s = random_series(rng, 2, 4, 6);
  const MonotoneSet lam = downward_close(s.support());
  const SparseSeries<double> leg = legendre_from_taylor(s, lam);
  const double* c0 = leg.find(MultiIndex{});
  CHECK(integrate_series(leg) ==
        doctest::Approx(integrate_series(s)).epsilon(1e-12));
  CHECK(integrate_series(leg) == doctest::Approx(c0 ? *c0 : 0.0));
}

TEST_CASE("truncate_largest") {
  SparseSeries<double> s;
  s.add(MultiIndex{}, 1.0, 1.0);
  s.add(MultiIndex::unit(1), 1.0, -0.5);
  s.add(MultiIndex::unit(2), 1.0, 0.25);

  SUBCASE("keeping everything is the identity") {
    const auto r = truncate_largest(s, 10);
    CHECK(r.series.terms == s.terms);
    CHECK(r.dropped_mass == 0.0);
  }

  SUBCASE("keeps the two largest and reports the dropped mass") {
    const auto r = truncate_largest(s, 2);
    CHECK(r.series.size() == 2);
    CHECK(r.series.find(MultiIndex{}) != nullptr);
    CHECK(r.series.find(MultiIndex::unit(1)) != nullptr);
    CHECK(r.dropped_mass == doctest::Approx(0.25));
  }

  SUBCASE("ties break canonically") {
    SparseSeries<double> t;
    t.add(MultiIndex::unit(1), 1.0, 0.5);
    t.add(MultiIndex::unit(2), 1.0, -0.5);
    const auto r = truncate_largest(t, 1);
    REQUIRE(r.series.size() == 1);
    CHECK(r.series.find(MultiIndex::unit(1)) != nullptr);
  }
}

TEST_CASE("stechkin tail bound for a geometric sequence") {
  // gamma_n = 2^-n, n = 1..30, sigma = 1, q = 2: direct evaluation of both
  // sides for N = 1..8.
  std::vector<double> gamma;
  for (int n = 1; n <= 30; ++n) gamma.push_back(std::pow(2.0, -n));
  const double sigma_norm = [&] {
    double s = 0.0;
    for (double g : gamma) s += g;
    return s;
  }();
  for (std::size_t n = 1; n <= 8; ++n) {
    double tail_sq = 0.0;
    for (std::size_t i = n; i < gamma.size(); ++i)
      tail_sq += gamma[i] * gamma[i];
    const double lhs = std::sqrt(tail_sq);
    const double rhs =
        std::pow(static_cast<double>(n), -(1.0 - 0.5)) * sigma_norm;
    CHECK(lhs <= rhs * (1.0 + 1e-14));
  }
}

TEST_CASE("fit_decay_rate") {
  std::vector<std::pair<double, double>> exact;
  for (double n : {2.0, 4.0, 8.0, 16.0}) exact.push_back({n, std::pow(n, -2.0)});
  CHECK(fit_decay_rate(exact) == doctest::Approx(-2.0).epsilon(1e-10));

  std::vector<std::pair<double, double>> constant;
  for (double n : {2.0, 4.0, 8.0}) constant.push_back({n, 0.7});
  CHECK(fit_decay_rate(constant) == doctest::Approx(0.0));

  std::vector<std::pair<double, double>> scaled;
  for (double n : {3.0, 9.0, 27.0, 81.0})
    scaled.push_back({n, 3.0 * std::pow(n, -1.5)});
  CHECK(fit_decay_rate(scaled) == doctest::Approx(-1.5).epsilon(1e-10));

  CHECK_THROWS_AS(fit_decay_rate({{1.0, 1.0}, {2.0, 0.5}}), NumericError);
  CHECK_THROWS_AS(
      fit_decay_rate({{1.0, 1.0}, {2.0, 0.0}, {3.0, 0.1}}), NumericError);
}

TEST_CASE("taylor_forward on the singleton set is the nominal solve") {
  const AffineOperatorFamily fam = proportional_family(16, 0.5);
  const SparseSeries<Vec> t = taylor_forward(fam, MonotoneSet{});
  REQUIRE(t.size() == 1);
  const Vec p0 = solve_at(fam, ParamVector({0.0}));
  const Vec* t0 = t.find(MultiIndex{});
  REQUIRE(t0);
  for (std::size_t i = 0; i < p0.size(); ++i)
    CHECK((*t0)[i] == doctest::Approx(p0[i]).epsilon(1e-14));
}

TEST_CASE("proportional fluctuation gives geometric Taylor coefficients") {
  const AffineOperatorFamily fam = proportional_family(16, 0.5);
  const MonotoneSet lam = total_degree_set(1, 8, {1.0});
  const SparseSeries<Vec> t = taylor_forward(fam, lam);
  const Vec* t0 = t.find(MultiIndex{});
  REQUIRE(t0);
  for (std::uint32_t k = 1; k <= 8; ++k) {
    const Vec* tk = t.find(mi({{1, k}}));
    REQUIRE(tk);
    const double factor = std::pow(-0.5, k);
    for (std::size_t i = 0; i < t0->size(); ++i)
      CHECK((*tk)[i] == doctest::Approx(factor * (*t0)[i]).epsilon(1e-10));
  }
}

TEST_CASE("taylor recursion satisfies the residual identity") {
  const Mesh1D mesh(24);
  const PriorModel m = build_prior(3, 1.0, 0.5, mesh, 1.0);
  const AffineOperatorFamily fam =
      assemble(m, mesh, [](double) { return 1.0; });
  const MonotoneSet lam = total_degree_set(3, 4, {1.0, 1.0, 1.0});
  const SparseSeries<Vec> t = taylor_forward(fam, lam);
  double load_norm = 0.0;
  for (double v : fam.load) load_norm += v * v;
  load_norm = std::sqrt(load_norm);
  for (const MultiIndex& nu : lam.members())
    CHECK(taylor_residual(fam, t, nu) <= 1e-12 * load_norm);
}

TEST_CASE("surrogate evaluation matches direct solves") {
  const Mesh1D mesh(32);
  const PriorModel m = build_prior(2, 1.0, 0.5, mesh, 1.0);
  const AffineOperatorFamily fam =
      assemble(m, mesh, [](double) { return 1.0; });
  const MonotoneSet lam = total_degree_set(2, 12, {1.0, 1.0});
  const SparseSeries<Vec> t = taylor_forward(fam, lam);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  for (int rep = 0; rep < 20; ++rep) {
    const ParamVector y({unif(rng), unif(rng)});
    const Vec direct = solve_at(fam, y);
    const Vec eval = evaluate_series(t, y);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < direct.size(); ++i) {
      num += (eval[i] - direct[i]) * (eval[i] - direct[i]);
      den += direct[i] * direct[i];
    }
    CHECK(std::sqrt(num / den) <= 1e-6);
  }
}

TEST_CASE("taylor coefficient decay follows the prior decay") {
  const Mesh1D mesh(32);
  const double b = 2.0;
  const PriorModel m = build_prior(4, b, 0.5, mesh, 1.0);
  const AffineOperatorFamily fam =
      assemble(m, mesh, [](double) { return 1.0; });
  const ForwardSurrogate sur = build_forward_surrogate(fam, 300);
  std::vector<double> norms;
  for (const auto& [nu, c] : sur.prefix_series(300).terms)
    norms.push_back(energy_norm(fam.a0, c));
  std::sort(norms.begin(), norms.end(), std::greater<double>());
  std::vector<std::pair<double, double>> points;
  for (std::size_t n = 4; n <= norms.size(); n *= 2)
    points.push_back({static_cast<double>(n), norms[n - 1]});
  const double slope = fit_decay_rate(points);
  CHECK(slope <= -(1.0 + b) + 0.5);
}

TEST_CASE("greedy surrogate prefixes are monotone and nested") {
  const Mesh1D mesh(16);
  const PriorModel m = build_prior(3, 1.5, 0.5, mesh, 1.0);
  const AffineOperatorFamily fam =
      assemble(m, mesh, [](double) { return 1.0; });
  const ForwardSurrogate sur = build_forward_surrogate(fam, 60);
  REQUIRE(sur.order.size() == 60);
  for (std::size_t n : {1, 5, 20, 60}) {
    const MonotoneSet lam = sur.prefix_set(n);
    CHECK(lam.size() == n);
    CHECK(is_monotone(lam.members()));
  }
  CHECK(sur.backsolves_after.size() == 60);
  for (std::size_t i = 1; i < 60; ++i)
    CHECK(sur.backsolves_after[i] >= sur.backsolves_after[i - 1]);
}
