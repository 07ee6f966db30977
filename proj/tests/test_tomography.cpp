#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <cmath>
#include <vector>

#include "qsl/error.hpp"
#include "qsl/families.hpp"
#include "qsl/measures.hpp"
#include "qsl/random.hpp"
#include "qsl/tomography.hpp"

using namespace qsl;

namespace {

using Span16 = std::span<const double, kNumSettings>;

Vector2c named_state(char c) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (c) {
    case 'H': return Vector2c(1.0, 0.0);
    case 'V': return Vector2c(0.0, 1.0);
    case 'D': return Vector2c(r, r);
    case 'R': return Vector2c(r, Complex(0.0, -r));
  }
  throw std::logic_error("bad label");
}

// Independent build of the projectors from the named kets.
std::array<Matrix4c, 16> reference_projectors() {
  std::array<Matrix4c, 16> out;
  const char names[] = "HVDR";
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Vector2c u = named_state(names[a]);
      const Vector2c v = named_state(names[b]);
      Vector4c k;
      k << u(0) * v(0), u(0) * v(1), u(1) * v(0), u(1) * v(1);
      out[4 * a + b] = k * k.adjoint();
    }
  return out;
}

}  // namespace

TEST(Projectors, AnalyzerAnglesTransmitNamedStates) {
  const ProjectorSet& set = standard_projectors();
  const auto ref = reference_projectors();
  for (int nu = 0; nu < kNumSettings; ++nu) {
    EXPECT_LT((set[nu].op - ref[nu]).cwiseAbs().maxCoeff(), 1e-15) << set[nu].label;
    EXPECT_EQ(set.index_of(set[nu].label), nu);
  }
  EXPECT_EQ(set[0].label, "HH");
  EXPECT_EQ(set[15].label, "RR");
  EXPECT_EQ(set.index_of("XX"), -1);
}

TEST(Projectors, RankOneHermitianIdempotent) {
  for (const Projector& p : standard_projectors().projectors()) {
    EXPECT_LT((p.op - p.op.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((p.op * p.op - p.op).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(p.op.trace().real(), 1.0, 1e-15);
  }
}

TEST(Projectors, ReconstructionMatrixConditionNumber) {
  const ProjectorSet& set = standard_projectors();
  // Recompute B from the reference projectors and an explicit Pauli basis.
  Eigen::Matrix<double, 16, 16> b;
  const auto ref = reference_projectors();
  for (int nu = 0; nu < 16; ++nu)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) b(nu, 4 * i + j) = (ref[nu] * kron(pauli(i), pauli(j))).trace().real() / 2.0;
  EXPECT_LT((b - set.reconstruction_matrix()).cwiseAbs().maxCoeff(), 1e-15);
  Eigen::JacobiSVD<Eigen::Matrix<double, 16, 16>> svd(b);
  const double cond = svd.singularValues()(0) / svd.singularValues()(15);
  EXPECT_NEAR(set.condition_number(), cond, 1e-9);
  EXPECT_NEAR(set.condition_number(), 10.4038820320221, 1e-9);
  EXPECT_LT(set.condition_number(), 20.0);
}

TEST(Projectors, IncompleteSetRejected) {
  std::array<std::string, 16> labels;
  std::array<AnalyzerSetting, 16> arm;
  for (int i = 0; i < 16; ++i) labels[i] = "S" + std::to_string(i);
  arm.fill(AnalyzerSetting{0.0, 0.0});
  EXPECT_THROW(ProjectorSet(labels, arm, arm), InvariantViolation);
}

TEST(Projectors, PerturbedSetKeepsLabelsAndMovesAngles) {
  Rng rng(5);
  const ProjectorSet& set = standard_projectors();
  const ProjectorSet p = set.perturbed(0.25, rng);
  double max_shift = 0.0;
  for (int nu = 0; nu < 16; ++nu) {
    EXPECT_EQ(p[nu].label, set[nu].label);
    max_shift = std::max(max_shift, std::abs(p[nu].arm1.hwp - set[nu].arm1.hwp));
  }
  EXPECT_GT(max_shift, 0.0);
  EXPECT_LT(max_shift, 2.0);
  Rng zero(5);
  const ProjectorSet same = set.perturbed(0.0, zero);
  for (int nu = 0; nu < 16; ++nu) EXPECT_LT((same[nu].op - set[nu].op).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ExpectedCounts, ReferenceStates) {
  const ProjectorSet& set = standard_projectors();
  const double n = 1000.0;
  for (double c : expected_counts(DensityMatrix::maximally_mixed(), set, n)) EXPECT_NEAR(c, 250.0, 1e-12);

  const CountVector hh = expected_counts(DensityMatrix::from_ket(PureKet::basis(kHH)), set, n);
  EXPECT_NEAR(hh[set.index_of("HH")], n, 1e-12);
  EXPECT_NEAR(hh[set.index_of("VV")], 0.0, 1e-12);
  EXPECT_NEAR(hh[set.index_of("DD")], n / 4, 1e-12);

  const CountVector bell = expected_counts(DensityMatrix::from_ket(phi_plus()), set, n);
  for (const char* l : {"HH", "VV", "DD"}) EXPECT_NEAR(bell[set.index_of(l)], n / 2, 1e-12) << l;
  EXPECT_NEAR(bell[set.index_of("HV")], 0.0, 1e-12);
  // RR = (1, -i, -i, -1)/2 is orthogonal to Phi+.
  EXPECT_NEAR(bell[set.index_of("RR")], 0.0, 1e-12);
  EXPECT_NEAR(bell[set.index_of("DR")], n / 4, 1e-12);
}

TEST(Sampling, DeterministicAndZeroMeans) {
  CountVector e;
  e.fill(100.0);
  e[3] = 0.0;
  const CountRecord a = sample_counts(e, 77, 400.0);
  const CountRecord b = sample_counts(e, 77, 400.0);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.counts[3], 0);
  EXPECT_EQ(a.seed, 77u);
  EXPECT_DOUBLE_EQ(a.n_per_basis, 400.0);
  const CountRecord c = sample_counts(e, 78, 400.0);
  EXPECT_NE(a.counts, c.counts);
}

TEST(Sampling, PoissonMeanAndVariance) {
  CountVector e;
  e.fill(1000.0);
  std::vector<double> all;
  for (int s = 0; s < 625; ++s) {
    const CountRecord r = sample_counts(e, derive_seed(11, s));
    for (auto c : r.counts) all.push_back(static_cast<double>(c));
  }
  ASSERT_EQ(all.size(), 10000u);
  double mean = 0.0;
  for (double x : all) mean += x;
  mean /= all.size();
  double var = 0.0;
  for (double x : all) var += (x - mean) * (x - mean);
  var /= all.size() - 1;
  EXPECT_NEAR(mean, 1000.0, 50.0);
  EXPECT_NEAR(var, 1000.0, 50.0);
}

TEST(Sampling, RejectsNegativeExpectation) {
  CountVector e;
  e.fill(1.0);
  e[0] = -1.0;
  EXPECT_THROW(sample_counts(e, 1), InvariantViolation);
}

TEST(LinearInversion, ExactOnExpectedCounts) {
  Rng rng(61);
  const ProjectorSet& set = standard_projectors();
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho = random_density(rng, 1 + i % 4);
    const CountVector c = expected_counts(rho, set, 1e4);
    const ReconstructionResult r = linear_inversion(Span16(c), set);
    EXPECT_LT((r.matrix - rho.matrix()).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_TRUE(r.physical());
  }
}

TEST(LinearInversion, OftenUnphysicalAtLowCounts) {
  const ProjectorSet& set = standard_projectors();
  const CountVector e = expected_counts(DensityMatrix::from_ket(phi_plus()), set, 100.0);
  int negative = 0;
  for (int s = 0; s < 100; ++s) {
    const ReconstructionResult r = linear_inversion(sample_counts(e, derive_seed(3, s), 100.0), set);
    if (r.report.min_eigenvalue < 0.0) ++negative;
  }
  EXPECT_GT(negative, 10);
}

TEST(LinearInversion, RejectsEmptyCounts) {
  CountVector z{};
  EXPECT_THROW(linear_inversion(Span16(z), standard_projectors()), InvariantViolation);
}

TEST(ProjectToPhysical, ClipsAndRenormalises) {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = 1.2;
  m(3, 3) = -0.2;
  const DensityMatrix p = project_to_physical(m, 0.0);
  EXPECT_NEAR(p(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(p(3, 3).real(), 0.0, 1e-15);
  const DensityMatrix f = project_to_physical(m, 1e-3);
  EXPECT_GE(f.eigenvalues().minCoeff(), 1e-3 / (1.2 + 3e-3) - 1e-15);
}

TEST(Mle, NoiselessBellState) {
  const ProjectorSet& set = standard_projectors();
  const CountVector c = expected_counts(DensityMatrix::from_ket(phi_plus()), set, 1e4);
  const ReconstructionResult r = mle_reconstruct(Span16(c), set);
  ASSERT_TRUE(r.physical());
  EXPECT_GE(fidelity(r.density(), phi_plus()), 1.0 - 1e-6);
  EXPECT_LE(r.gradient_norm, 1e-8);
}

TEST(Mle, NoiselessMixedStates) {
  Rng rng(62);
  const ProjectorSet& set = standard_projectors();
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_density(rng);
    const CountVector c = expected_counts(rho, set, 1e4);
    const DensityMatrix out = mle_reconstruct(Span16(c), set).density();
    EXPECT_GE(uhlmann_fidelity(out, rho), 1.0 - 1e-6);
  }
}

TEST(Mle, PhysicalAndAtLeastAsLikelyAsProjectedLinear) {
  const ProjectorSet& set = standard_projectors();
  Rng rng(63);
  for (int s = 0; s < 40; ++s) {
    const DensityMatrix truth = s % 2 ? DensityMatrix::from_ket(random_pure_ket(rng)) : random_density(rng, 2);
    const CountRecord rec = sample_counts(expected_counts(truth, set, 200.0), derive_seed(4, s), 200.0);
    const CountVector c = rec.as_real();
    const ReconstructionResult mle = mle_reconstruct(rec, set);
    ASSERT_TRUE(mle.physical()) << s;
    const DensityMatrix lin = project_to_physical(linear_inversion(rec, set).matrix);
    EXPECT_GE(mle.log_likelihood, log_likelihood(lin, Span16(c), set) - 1e-9) << s;
    EXPECT_NEAR(mle.log_likelihood, log_likelihood(mle.density(), Span16(c), set), 1e-9);
  }
}

TEST(Mle, ConsistentAsCountsGrow) {
  const ProjectorSet& set = standard_projectors();
  const DensityMatrix truth = werner_state(WernerParam(0.3));
  double prev = 1.0;
  for (double n : {1e2, 1e4, 1e6}) {
    double infid = 0.0;
    for (int s = 0; s < 10; ++s) {
      const CountRecord rec = sample_counts(expected_counts(truth, set, n), derive_seed(9, s), n);
      infid += 1.0 - uhlmann_fidelity(mle_reconstruct(rec, set).density(), truth);
    }
    infid /= 10.0;
    EXPECT_LT(infid, prev) << n;
    prev = infid;
  }
  EXPECT_LT(prev, 1e-4);
}

TEST(Mle, FailureCarriesBestSoFar) {
  const ProjectorSet& set = standard_projectors();
  const CountRecord rec = sample_counts(expected_counts(DensityMatrix::from_ket(phi_plus()), set, 1e3), 8, 1e3);
  MleOptions o;
  o.max_iterations = 1;
  try {
    mle_reconstruct(rec, set, o);
    FAIL() << "expected MleFailure";
  } catch (const MleFailure& e) {
    EXPECT_EQ(e.best_so_far().method, Method::kMle);
    EXPECT_GT(e.best_so_far().iterations, 0);
    EXPECT_NE(std::string(e.what()).find("did not converge"), std::string::npos);
  }
}

TEST(MonteCarlo, NoiselessLimitHasNoSpread) {
  UncertaintyConfig cfg;
  cfg.settings_sigma = 0.0;
  cfg.poisson = false;
  cfg.n_mc = 5;
  const DensityMatrix truth = werner_state(WernerParam(0.2));
  const MonteCarloSummary s = monte_carlo_summary(truth, standard_projectors(), 1e4, cfg);
  EXPECT_EQ(s.failures, 0);
  EXPECT_LT(s.point.s_l_err, 1e-9);
  EXPECT_LT(s.point.t_err, 1e-9);
  EXPECT_NEAR(s.point.s_l, linear_entropy(truth), 1e-6);
}

TEST(MonteCarlo, IndependentOfThreadCount) {
  UncertaintyConfig cfg;
  cfg.n_mc = 12;
  cfg.seed = 99;
  const DensityMatrix truth = mems_state(MemsParam(0.5));
  cfg.threads = 1;
  const PlanePoint a = monte_carlo_uncertainty(truth, standard_projectors(), 2000.0, cfg);
  cfg.threads = 4;
  const PlanePoint b = monte_carlo_uncertainty(truth, standard_projectors(), 2000.0, cfg);
  EXPECT_EQ(a.s_l, b.s_l);
  EXPECT_EQ(a.t, b.t);
  EXPECT_EQ(a.s_l_err, b.s_l_err);
  EXPECT_EQ(a.t_err, b.t_err);
  cfg.seed = 100;
  const PlanePoint c = monte_carlo_uncertainty(truth, standard_projectors(), 2000.0, cfg);
  EXPECT_NE(a.s_l_err, c.s_l_err);
}

TEST(MonteCarlo, AngleNoiseAloneSpreadsResults) {
  UncertaintyConfig cfg;
  cfg.poisson = false;
  cfg.settings_sigma = 1.0;
  cfg.n_mc = 10;
  const PlanePoint p = monte_carlo_uncertainty(DensityMatrix::from_ket(phi_plus()), standard_projectors(), 1e4, cfg);
  EXPECT_GT(p.t_err, 0.0);
}

TEST(MonteCarlo, RejectsBadConfig) {
  UncertaintyConfig cfg;
  cfg.n_mc = 0;
  EXPECT_THROW(monte_carlo_summary(DensityMatrix::maximally_mixed(), standard_projectors(), 1e3, cfg),
               InvariantViolation);
}

TEST(Sampling, AllZeroExpectationGivesZeroCounts) {
  const CountRecord r = sample_counts(CountVector{}, 12);
  for (auto c : r.counts) EXPECT_EQ(c, 0);
}

TEST(LinearInversion, NoiselessBellHasUnitTangle) {
  const CountVector c = expected_counts(DensityMatrix::from_ket(phi_plus()), standard_projectors(), 1e4);
  EXPECT_NEAR(tangle(linear_inversion(Span16(c), standard_projectors()).density()), 1.0, 1e-9);
}

TEST(Mle, PhysicalForArbitraryCounts) {
  Rng rng(64);
  std::uniform_int_distribution<int> small(0, 5);
  std::exponential_distribution<double> big(1e-3);
  for (int i = 0; i < 200; ++i) {
    CountVector c;
    for (double& x : c) x = i % 2 ? small(rng) : std::floor(big(rng));
    if (std::accumulate(c.begin(), c.end(), 0.0) == 0.0) c[i % 16] = 1.0;
    try {
      const ReconstructionResult r = mle_reconstruct(Span16(c), standard_projectors());
      EXPECT_GE(r.report.min_eigenvalue, -1e-9);
      EXPECT_TRUE(r.physical());
    } catch (const MleFailure& e) {
      EXPECT_TRUE(e.best_so_far().physical());
    }
  }
}

TEST(Mle, BellFidelityNonDecreasingWithCounts) {
  const ProjectorSet& set = standard_projectors();
  const DensityMatrix truth = DensityMatrix::from_ket(phi_plus());
  double prev = 0.0;
  for (double n : {1e2, 1e3, 1e4, 1e5}) {
    std::vector<double> f;
    for (int s = 0; s < 21; ++s)
      f.push_back(fidelity(mle_reconstruct(sample_counts(expected_counts(truth, set, n), derive_seed(10, s), n), set)
                               .density(),
                           phi_plus()));
    std::nth_element(f.begin(), f.begin() + 10, f.end());
    EXPECT_GE(f[10], prev) << n;
    prev = f[10];
  }
  EXPECT_GE(prev, 0.999);
}

TEST(Mle, WernerPointWithinThreeSigma) {
  const ProjectorSet& set = standard_projectors();
  const DensityMatrix truth = werner_state(WernerParam(0.5));
  UncertaintyConfig cfg;
  cfg.seed = 65;
  cfg.n_mc = 100;
  const PlanePoint sigma = monte_carlo_uncertainty(truth, set, 1e4, cfg);
  for (int s = 0; s < 10; ++s) {
    const DensityMatrix rho = mle_reconstruct(sample_counts(expected_counts(truth, set, 1e4), derive_seed(66, s), 1e4),
                                              set)
                                  .density();
    EXPECT_LT(std::abs(linear_entropy(rho) - linear_entropy(truth)), 3.0 * sigma.s_l_err) << s;
    EXPECT_LT(std::abs(tangle(rho) - tangle(truth)), 3.0 * sigma.t_err) << s;
  }
}

TEST(MonteCarlo, FullyMixedTruthPinsTangle) {
  UncertaintyConfig cfg;
  cfg.n_mc = 50;
  cfg.seed = 67;
  const PlanePoint p = monte_carlo_uncertainty(DensityMatrix::maximally_mixed(), standard_projectors(), 1e4, cfg);
  EXPECT_LT(p.t_err, 1e-3);
  EXPECT_LT(p.t, 1e-3);
  EXPECT_LT(p.s_l_err, 0.01);
  EXPECT_GT(p.s_l, 0.98);
}
