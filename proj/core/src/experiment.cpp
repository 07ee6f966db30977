#include "qsl/experiment.hpp"

#include "qsl/error.hpp"
#include "qsl/random.hpp"
#include "qsl/text_io.hpp"

namespace qsl {

DensityMatrix synthesize(const ExperimentConfig& cfg) {
  return run_bench(cfg.source, cfg.selector, cfg.decoherer);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (!cfg.tomography.seed) throw InvariantViolation("run_experiment requires an explicit tomography seed");
  const std::uint64_t seed = *cfg.tomography.seed;
  const ProjectorSet& set = standard_projectors();

  ExperimentReport rep;
  rep.config = cfg;
  rep.seed = seed;
  rep.true_state = synthesize(cfg);
  rep.true_measures = measure(rep.true_state);

  const CountVector expected = expected_counts(rep.true_state, set, cfg.tomography.n_per_basis);
  rep.counts = sample_counts(expected, derive_seed(seed, 0), cfg.tomography.n_per_basis);
  rep.counts.seed = seed;
  rep.reconstruction = mle_reconstruct(rep.counts, set);

  const DensityMatrix rho = rep.reconstruction.density();
  rep.reconstructed_measures = measure(rho);
  rep.fidelity_to_truth = uhlmann_fidelity(rep.true_state, rho);

  rep.point.label = cfg.label;
  rep.point.s_l = rep.reconstructed_measures.linear_entropy;
  rep.point.t = rep.reconstructed_measures.tangle;
  if (cfg.uncertainty) {
    UncertaintyConfig u = *cfg.uncertainty;
    u.seed = derive_seed(seed, 1);
    const MonteCarloSummary mc = monte_carlo_summary(rho, set, cfg.tomography.n_per_basis, u);
    rep.point.s_l_err = mc.point.s_l_err;
    rep.point.t_err = mc.point.t_err;
    rep.mc_trials = mc.trials;
    rep.mc_failures = mc.failures;
  }
  return rep;
}

PlaneDataset emit_plane(const std::vector<ExperimentReport>& reports, int resolution,
                        const std::filesystem::path& dir) {
  std::vector<PlanePoint> points;
  points.reserve(reports.size());
  for (const auto& r : reports) points.push_back(r.point);
  return emit_plane(std::move(points), resolution, dir);
}

}  // namespace qsl
