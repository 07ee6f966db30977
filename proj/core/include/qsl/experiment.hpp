#pragma once

#include <string>
#include <vector>

#include "qsl/config.hpp"
#include "qsl/families.hpp"
#include "qsl/measures.hpp"
#include "qsl/text_io.hpp"
#include "qsl/tomography.hpp"

namespace qsl {

/// Everything one synthesis + tomography run produces.
struct ExperimentReport {
  ExperimentConfig config;
  std::uint64_t seed = 0;
  DensityMatrix true_state = DensityMatrix::maximally_mixed();
  MeasureReport true_measures;
  CountRecord counts;
  ReconstructionResult reconstruction;
  MeasureReport reconstructed_measures;
  double fidelity_to_truth = 0.0;  // Uhlmann fidelity
  PlanePoint point;                // reconstructed (S_L, T) with Monte-Carlo errors
  int mc_trials = 0;
  int mc_failures = 0;
};

/// source -> selector -> decoherer -> Poisson counts -> MLE -> measures, and,
/// when configured, Monte-Carlo error bars resampled around the reconstructed
/// state. Requires cfg.tomography.seed; identical seeds give identical reports.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Only the bench part: the state handed to tomography.
DensityMatrix synthesize(const ExperimentConfig& cfg);

/// emit_plane over the points of a set of reports.
PlaneDataset emit_plane(const std::vector<ExperimentReport>& reports, int resolution,
                        const std::filesystem::path& dir);

}  // namespace qsl
