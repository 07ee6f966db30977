#pragma once

// Simulated 16-setting coincidence tomography.
//
// Each photon passes a quarter-wave plate, then a half-wave plate, then a
// polarising beamsplitter whose transmitted (H) port is counted. With
// U = hwp(h) qwp(q) the projected single-photon state is U^dag |H>.
//
// The canonical set pairs the analyzer states {H, V, D, R} on both arms,
//   H = |H>, V = |V>, D = (|H> + |V>)/sqrt2, R = (|H> - i|V>)/sqrt2,
// giving labels "HH", "HV", ..., "RR" in row-major order of (arm 1, arm 2).

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qsl/error.hpp"
#include "qsl/families.hpp"
#include "qsl/random.hpp"
#include "qsl/state.hpp"

namespace qsl {

inline constexpr int kNumSettings = 16;

/// Waveplate angles in degrees for one photon's analyzer.
struct AnalyzerSetting {
  double qwp = 0.0;
  double hwp = 0.0;
};

/// The single-photon state an analyzer setting transmits.
Vector2c analyzer_state(const AnalyzerSetting& a);

struct Projector {
  std::string label;
  AnalyzerSetting arm1;
  AnalyzerSetting arm2;
  Matrix4c op;  // |a1 a2><a1 a2|
};

class ProjectorSet {
 public:
  /// Builds projectors from analyzer settings; throws InvariantViolation if
  /// the set is not tomographically complete.
  ProjectorSet(std::array<std::string, kNumSettings> labels,
               std::array<AnalyzerSetting, kNumSettings> arm1,
               std::array<AnalyzerSetting, kNumSettings> arm2);

  const Projector& operator[](int i) const { return projectors_[i]; }
  const std::array<Projector, kNumSettings>& projectors() const noexcept { return projectors_; }

  /// Index of `label`, or -1.
  int index_of(const std::string& label) const;

  /// B(nu, mu) = Tr(Pi_nu Gamma_mu), Gamma_mu = sigma_i (x) sigma_j / 2.
  const Eigen::Matrix<double, 16, 16>& reconstruction_matrix() const noexcept { return b_; }
  double condition_number() const noexcept { return cond_; }

  /// Same labels, every analyzer angle shifted by independent N(0, sigma_deg^2) noise.
  ProjectorSet perturbed(double sigma_deg, Rng& rng) const;

 private:
  std::array<Projector, kNumSettings> projectors_;
  Eigen::Matrix<double, 16, 16> b_;
  double cond_ = 0.0;
};

/// The canonical {H, V, D, R}^2 set.
const ProjectorSet& standard_projectors();

/// Hermitian orthonormal operator basis Gamma_mu = sigma_i (x) sigma_j / 2, mu = 4 i + j.
const std::array<Matrix4c, 16>& pauli_operator_basis();

using CountVector = std::array<double, kNumSettings>;

/// n_per_basis * Tr(rho Pi_nu).
CountVector expected_counts(const DensityMatrix& rho, const ProjectorSet& set, double n_per_basis);

struct CountRecord {
  std::array<std::int64_t, kNumSettings> counts{};
  double n_per_basis = 0.0;
  std::uint64_t seed = 0;

  CountVector as_real() const;
};

/// Independent Poisson draws, reproducible for a fixed seed.
CountRecord sample_counts(const CountVector& expected, std::uint64_t seed, double n_per_basis = 0.0);

enum class Method { kLinear, kMle };

struct ReconstructionResult {
  Matrix4c matrix;  // trace one; may be unphysical for kLinear
  Method method = Method::kLinear;
  DensityReport report;
  double log_likelihood = 0.0;  // kMle only
  int iterations = 0;           // kMle only
  double gradient_norm = 0.0;   // kMle only

  bool physical() const { return report.ok(); }
  /// Throws InvariantViolation when the reconstruction is unphysical.
  DensityMatrix density() const { return DensityMatrix(matrix); }
};

ReconstructionResult linear_inversion(std::span<const double, kNumSettings> counts, const ProjectorSet& set);
ReconstructionResult linear_inversion(const CountRecord& rec, const ProjectorSet& set);

/// Nearest-spectrum physical state: Hermitian part with eigenvalues clipped
/// at `floor` and renormalised.
DensityMatrix project_to_physical(const Matrix4c& m, double floor = 0.0);

/// Poisson log-likelihood of `rho` with the flux profiled out (the scale
/// maximising the likelihood for this shape); constant terms dropped.
double log_likelihood(const DensityMatrix& rho, std::span<const double, kNumSettings> counts,
                      const ProjectorSet& set);

struct MleOptions {
  int max_iterations = 10000;
  double gradient_tolerance = 1e-8;
  /// Eigenvalue floor used to regularise the linear-inversion seed.
  double seed_floor = 1e-3;
};

/// Thrown when the optimizer stops short of the gradient criterion.
class MleFailure : public NumericalFailure {
 public:
  MleFailure(const std::string& what, ReconstructionResult best)
      : NumericalFailure(what), best_(std::move(best)) {}
  const ReconstructionResult& best_so_far() const noexcept { return best_; }

 private:
  ReconstructionResult best_;
};

/// Maximum-likelihood state: rho = L L^dag / Tr(L L^dag) with L lower
/// triangular (real diagonal, 16 real parameters), minimising
/// sum_nu [m_nu - n_nu ln m_nu] with m_nu = Tr(L L^dag Pi_nu). The objective is
/// evaluated on counts normalised by their total so the gradient criterion is
/// independent of flux.
ReconstructionResult mle_reconstruct(std::span<const double, kNumSettings> counts, const ProjectorSet& set,
                                     const MleOptions& opts = {});
ReconstructionResult mle_reconstruct(const CountRecord& rec, const ProjectorSet& set,
                                     const MleOptions& opts = {});

struct UncertaintyConfig {
  double settings_sigma = 0.25;  // degrees
  int n_mc = 200;
  std::uint64_t seed = 0;
  /// false: feed expected counts straight to the reconstruction (infinite-flux limit).
  bool poisson = true;
  /// Worker threads; 0 picks the hardware concurrency. Results do not depend on it.
  int threads = 0;
};

struct MonteCarloSummary {
  PlanePoint point;  // means and sample standard deviations
  int trials = 0;
  int failures = 0;
};

/// Repeats (perturb analyzers -> sample counts -> MLE with nominal analyzers
/// -> measures) n_mc times. Failed reconstructions are dropped; more than 1%
/// failures raises NumericalFailure.
MonteCarloSummary monte_carlo_summary(const DensityMatrix& truth, const ProjectorSet& set, double n_per_basis,
                                      const UncertaintyConfig& cfg);

PlanePoint monte_carlo_uncertainty(const DensityMatrix& truth, const ProjectorSet& set, double n_per_basis,
                                   const UncertaintyConfig& cfg);

}  // namespace qsl
