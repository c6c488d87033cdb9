#include "sgpc/bench_problem.hpp"

namespace sgpc {

std::vector<ObservationWindow> default_windows(std::size_t n_obs) {
  std::vector<ObservationWindow> windows;
  windows.reserve(n_obs);
  const double spacing = 1.0 / static_cast<double>(n_obs + 1);
  for (std::size_t k = 1; k <= n_obs; ++k) {
    const double center = spacing * static_cast<double>(k);
    const double half = 0.35 * spacing;
    windows.push_back({center - half, center + half});
  }
  return windows;
}

BenchProblem make_bench_problem(const BenchConfig& cfg) {
  Mesh1D mesh(cfg.mesh_elems);
  PriorModel model =
      build_prior(cfg.n_dims, cfg.decay_b, cfg.kappa, mesh, cfg.abar);
  AffineOperatorFamily fam = assemble(model, mesh, [](double) { return 1.0; });
  ObservationSetup setup_template;
  setup_template.windows = default_windows(cfg.n_obs);
  setup_template.gamma.assign(cfg.n_obs, cfg.gamma);
  const ParamVector y_truth = sample_prior(model, cfg.y_truth_seed);
  ObservationSetup setup =
      synthesize_data(setup_template, fam, y_truth, cfg.noise_seed);
  return BenchProblem{std::move(mesh), std::move(model), std::move(fam),
                      std::move(setup)};
}

}  // namespace sgpc
