#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sgpc/bench_problem.hpp"
#include "sgpc/expectation.hpp"
#include "test_util.hpp"

using namespace sgpc;
using sgpc::testing::random_series;
using sgpc::testing::tensor_quadrature;

namespace {

MultiIndex mi(std::vector<MultiIndex::Entry> entries) {
  return MultiIndex::from_entries(std::move(entries));
}

BenchConfig j2_config() {
  BenchConfig cfg;
  cfg.n_dims = 2;
  cfg.mesh_elems = 32;
  return cfg;
}

/// Problem with no fluctuations and perfectly matching data: theta == 1.
BenchProblem flat_problem() {
  const Mesh1D mesh(32);
  PriorModel m;
  m.abar.assign(32, 1.0);
  m.psis.push_back(std::vector<double>(32, 0.0));
  m.psi_linf = {0.0};
  m.kappa = 0.5;
  m.decay_b = 1.0;
  AffineOperatorFamily fam = assemble(m, mesh, [](double) { return 1.0; });
  ObservationSetup setup;
  setup.windows = default_windows(2);
  setup.gamma = {1.0, 1.0};
  setup.delta = forward_observation(setup, fam, ParamVector({0.0}));
  return BenchProblem{mesh, std::move(m), std::move(fam), std::move(setup)};
}

}  // namespace

TEST_CASE("moment_weight") {
  CHECK(moment_weight(MultiIndex{}) == 1.0);
  CHECK(moment_weight(MultiIndex::unit(1)) == 0.0);
  CHECK(moment_weight(mi({{1, 2}, {3, 4}})) ==
        doctest::Approx(1.0 / 15.0).epsilon(1e-15));
  CHECK(moment_weight(mi({{1, 2}, {2, 1}})) == 0.0);
}

TEST_CASE("integrate_series") {
  SUBCASE("constants and odd terms") {
    SparseSeries<double> s;
    s.add(MultiIndex{}, 1.0, 2.5);
    CHECK(integrate_series(s) == doctest::Approx(2.5));
    SparseSeries<double> odd;
    odd.add(MultiIndex::unit(1), 1.0, 5.0);
    CHECK(integrate_series(odd) == 0.0);
  }

  SUBCASE("random series against the tensor quadrature oracle") {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 10; ++rep) {
      const SparseSeries<double> s = random_series(rng, 3, 4, 10);
      const double quad = tensor_quadrature(
          [&](const std::vector<double>& y) {
            return evaluate_series(s, ParamVector(y));
          },
          3, 5);
      CHECK(integrate_series(s) == doctest::Approx(quad).epsilon(1e-12));
    }
  }

  SUBCASE("linearity") {
    std::mt19937_64 rng(22);
    const SparseSeries<double> a = random_series(rng, 2, 4, 8);
    const SparseSeries<double> b = random_series(rng, 2, 4, 8);
    SparseSeries<double> combo = a;
    for (const auto& [nu, c] : b.terms) combo.add(nu, -1.75, c);
    CHECK(integrate_series(combo) ==
          doctest::Approx(integrate_series(a) - 1.75 * integrate_series(b))
              .epsilon(1e-12));
  }
}

TEST_CASE("semianalytic summary in the flat limit") {
  const BenchProblem prob = flat_problem();
  const ForwardSurrogate sur = build_forward_surrogate(prob.fam, 1);
  const SparseSeries<Vec> p_series = sur.prefix_series(1);

  SUBCASE("theta == 1 reproduces the prior mean of p") {
    PosteriorApprox pa;
    pa.theta_series.add(MultiIndex{}, 1.0, 1.0);
    pa.n_budget = 8;
    pa.k_terms = 1;
    const PosteriorSummary s =
        posterior_summary_semianalytic(pa, p_series, kNoTruncation);
    CHECK(s.z == doctest::Approx(1.0));
    const Vec prior_mean = integrate_series(p_series);
    for (std::size_t i = 0; i < prior_mean.size(); ++i)
      CHECK(s.mean_field[i] == doctest::Approx(prior_mean[i]).epsilon(1e-13));
  }

  SUBCASE("constant densities cancel in the ratio") {
    PosteriorApprox pa;
    pa.theta_series.add(MultiIndex{}, 1.0, 0.37);
    const PosteriorSummary s =
        posterior_summary_semianalytic(pa, p_series, kNoTruncation);
    CHECK(s.z == doctest::Approx(0.37));
    const Vec prior_mean = integrate_series(p_series);
    for (std::size_t i = 0; i < prior_mean.size(); ++i)
      CHECK(s.mean_field[i] == doctest::Approx(prior_mean[i]).epsilon(1e-13));
  }

  SUBCASE("non-positive normalization is reported") {
    PosteriorApprox pa;
    pa.theta_series.add(MultiIndex{}, 1.0, -0.25);
    CHECK_THROWS_AS(
        posterior_summary_semianalytic(pa, p_series, kNoTruncation),
        NumericError);
  }
}

TEST_CASE("ratio invariance under positive scaling of the density") {
  const BenchProblem prob = make_bench_problem(j2_config());
  const ForwardSurrogate sur = build_forward_surrogate(prob.fam, 64);
  const SparseSeries<Vec> p_series = sur.prefix_series(64);
  const SparseSeries<Vec> g =
      observe_series(prob.setup, prob.mesh, p_series);
  PosteriorApprox pa = theta_series(g, prob.setup, 64);
  const PosteriorSummary base =
      posterior_summary_semianalytic(pa, p_series, 64);
  PosteriorApprox scaled = pa;
  for (auto& [nu, c] : scaled.theta_series.terms) c *= 17.5;
  const PosteriorSummary s =
      posterior_summary_semianalytic(scaled, p_series, 64);
  CHECK(s.z == doctest::Approx(17.5 * base.z).epsilon(1e-12));
  for (std::size_t i = 0; i < base.mean_field.size(); ++i)
    CHECK(s.mean_field[i] ==
          doctest::Approx(base.mean_field[i]).epsilon(1e-10));
}

TEST_CASE("mc_posterior") {
  SUBCASE("unit density estimates Z = 1 exactly") {
    const BenchProblem prob = flat_problem();
    const PosteriorSummary s =
        mc_posterior(prob.setup, prob.fam, prob.model, 50, 7);
    CHECK(s.z == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.z_se == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("determinism") {
    const BenchProblem prob = make_bench_problem(j2_config());
    const PosteriorSummary a =
        mc_posterior(prob.setup, prob.fam, prob.model, 200, 9);
    const PosteriorSummary b =
        mc_posterior(prob.setup, prob.fam, prob.model, 200, 9);
    CHECK(a.z == b.z);
    CHECK(a.mean_field == b.mean_field);
  }

  SUBCASE("standard error shrinks like the square root of the sample count") {
    const BenchProblem prob = make_bench_problem(j2_config());
    const std::size_t reps = 20;
    auto spread = [&](std::size_t m) {
      // Replicate standard deviation of the Z estimator.
      double sum = 0.0, sum_sq = 0.0;
      for (std::size_t r = 0; r < reps; ++r) {
        const double z =
            mc_posterior(prob.setup, prob.fam, prob.model, m, 100 + r).z;
        sum += z;
        sum_sq += z * z;
      }
      return std::sqrt((sum_sq - sum * sum / reps) / (reps - 1.0));
    };
    const double ratio = spread(500) / spread(2000);
    CHECK(ratio > 1.2);  // expect about 2
    CHECK(ratio < 3.3);
  }

  SUBCASE("reported standard errors are calibrated") {
    const BenchProblem prob = make_bench_problem(j2_config());
    const PosteriorSummary ref =
        quadrature_oracle(prob.setup, prob.fam, prob.model, 12);
    const PosteriorSummary s =
        mc_posterior(prob.setup, prob.fam, prob.model, 20000, 31);
    CHECK(std::abs(s.z - ref.z) <= 3.0 * s.z_se);
    for (std::size_t i = 0; i < s.mean_field.size(); ++i)
      CHECK(std::abs(s.mean_field[i] - ref.mean_field[i]) <=
            4.0 * s.mean_se[i] + 1e-12);
  }
}

TEST_CASE("quadrature_oracle") {
  SUBCASE("unit density integrates to one") {
    const BenchProblem prob = flat_problem();
    const PosteriorSummary s =
        quadrature_oracle(prob.setup, prob.fam, prob.model, 6);
    CHECK(s.z == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("cost guard") {
    const Mesh1D mesh(8);
    const PriorModel m = build_prior(7, 2.0, 0.5, mesh, 1.0);
    const AffineOperatorFamily fam =
        assemble(m, mesh, [](double) { return 1.0; });
    ObservationSetup setup;
    setup.windows = default_windows(1);
    setup.gamma = {1.0};
    setup.delta = {0.1};
    CHECK_THROWS_AS(quadrature_oracle(setup, fam, m, 4), CostGuardError);
    CHECK_THROWS_AS(quadrature_oracle(setup, fam, m, 1), ConfigError);
  }

  SUBCASE("node-doubling self-convergence on the proportional problem") {
    const Mesh1D mesh(32);
    PriorModel m;
    m.abar.assign(32, 1.0);
    m.psis.push_back(std::vector<double>(32, 0.45));
    m.psi_linf = {0.45};
    m.kappa = 0.9;
    m.decay_b = 1.0;
    const AffineOperatorFamily fam =
        assemble(m, mesh, [](double) { return 1.0; });
    ObservationSetup setup;
    setup.windows = default_windows(2);
    setup.gamma = {0.04, 0.04};
    setup.delta =
        forward_observation(setup, fam, ParamVector({0.4}));
    const PosteriorSummary a = quadrature_oracle(setup, fam, m, 10);
    const PosteriorSummary b = quadrature_oracle(setup, fam, m, 20);
    CHECK(a.z == doctest::Approx(b.z).epsilon(1e-8));
    for (std::size_t i = 0; i < a.mean_field.size(); ++i)
      CHECK(a.mean_field[i] == doctest::Approx(b.mean_field[i]).epsilon(1e-8));
  }

  SUBCASE("mirror-symmetric problem has a symmetric posterior mean") {
    // psi_1 = c sin(2 pi x) flips sign under x -> 1-x, so u(x,-y) mirrors
    // u(x,y); a full-interval observation makes Phi even in y and the
    // posterior mean field symmetric about x = 1/2.
    const std::size_t n = 64;
    const Mesh1D mesh(n);
    PriorModel m;
    m.abar.assign(n, 1.0);
    m.psis.emplace_back(n);
    for (std::size_t e = 0; e < n; ++e)
      m.psis[0][e] = 0.3 * std::sin(2.0 * M_PI * mesh.midpoint(e));
    m.psi_linf = {0.3};
    m.kappa = 0.9;
    m.decay_b = 1.0;
    const AffineOperatorFamily fam =
        assemble(m, mesh, [](double) { return 1.0; });
    ObservationSetup setup;
    setup.windows = {{0.0, 1.0}};
    setup.gamma = {0.01};
    setup.delta = {1.0 / 12.0};
    const PosteriorSummary s = quadrature_oracle(setup, fam, m, 12);
    const std::size_t inner = mesh.n_interior();
    for (std::size_t i = 0; i < inner; ++i)
      CHECK(s.mean_field[i] ==
            doctest::Approx(s.mean_field[inner - 1 - i]).epsilon(1e-8));
  }
}

TEST_CASE("estimator agreement on the two-dimensional benchmark") {
  const BenchProblem prob = make_bench_problem(j2_config());
  const PosteriorSummary quad =
      quadrature_oracle(prob.setup, prob.fam, prob.model, 12);

  const ForwardSurrogate sur = build_forward_surrogate(prob.fam, 192);
  const SparseSeries<Vec> p_series = sur.prefix_series(64);
  const SparseSeries<Vec> g =
      observe_series(prob.setup, prob.mesh, p_series);
  const PosteriorApprox pa = theta_series(g, prob.setup, 64);
  const PosteriorSummary semi = posterior_summary_semianalytic(pa, p_series, 64);
  CHECK(std::abs(semi.z - quad.z) / quad.z <= 1e-2);

  const PosteriorSummary mc =
      mc_posterior(prob.setup, prob.fam, prob.model, 20000, 3);
  CHECK(std::abs(mc.z - quad.z) <= 3.0 * mc.z_se);

  // Covariance diagonal stays numerically nonnegative on every estimator.
  for (const PosteriorSummary* s : {&quad, &semi, &mc})
    for (double v : s->covariance_diag()) CHECK(v >= -1e-8);
}
