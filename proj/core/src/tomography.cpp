#include "qsl/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "qsl/lbfgs.hpp"
#include "qsl/measures.hpp"

namespace qsl {

namespace {

using Matrix16 = Eigen::Matrix<double, 16, 16>;
using Vector16 = Eigen::Matrix<double, 16, 1>;

constexpr int kParams = 16;
constexpr double kMaxCondition = 1e8;
constexpr double kMaxFailureFraction = 0.01;

// Lower-triangle (row, col) pairs below the diagonal, in parameter order.
constexpr std::array<std::pair<int, int>, 6> kOffDiagonal{{{1, 0}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}}};

Eigen::Matrix4cd unpack_lower(const Eigen::VectorXd& x) {
  Eigen::Matrix4cd l = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i) l(i, i) = x(i);
  for (std::size_t k = 0; k < kOffDiagonal.size(); ++k) {
    const auto [r, c] = kOffDiagonal[k];
    l(r, c) = Complex(x(4 + 2 * k), x(5 + 2 * k));
  }
  return l;
}

Eigen::VectorXd pack_lower(const Eigen::Matrix4cd& l) {
  Eigen::VectorXd x(kParams);
  for (int i = 0; i < 4; ++i) x(i) = l(i, i).real();
  for (std::size_t k = 0; k < kOffDiagonal.size(); ++k) {
    const auto [r, c] = kOffDiagonal[k];
    x(4 + 2 * k) = l(r, c).real();
    x(5 + 2 * k) = l(r, c).imag();
  }
  return x;
}

Matrix4c hermitian_part(const Matrix4c& m) { return 0.5 * (m + m.adjoint()); }

void check_counts(std::span<const double, kNumSettings> counts) {
  for (double c : counts)
    if (!(c >= 0.0) || !std::isfinite(c)) throw InvariantViolation("counts must be finite and non-negative");
  if (std::accumulate(counts.begin(), counts.end(), 0.0) <= 0.0)
    throw InvariantViolation("count record has no counts");
}

std::array<std::string, kNumSettings> standard_labels() {
  static constexpr char kStates[4] = {'H', 'V', 'D', 'R'};
  std::array<std::string, kNumSettings> out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) out[4 * a + b] = std::string{kStates[a], kStates[b]};
  return out;
}

}  // namespace

Vector2c analyzer_state(const AnalyzerSetting& a) {
  const Matrix2c u = (hwp(a.hwp) * qwp(a.qwp)).matrix();
  return u.adjoint() * Vector2c(1.0, 0.0);
}

const std::array<Matrix4c, 16>& pauli_operator_basis() {
  static const std::array<Matrix4c, 16> basis = [] {
    std::array<Matrix4c, 16> b;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) b[4 * i + j] = kron(pauli(i), pauli(j)) / 2.0;
    return b;
  }();
  return basis;
}

ProjectorSet::ProjectorSet(std::array<std::string, kNumSettings> labels,
                           std::array<AnalyzerSetting, kNumSettings> arm1,
                           std::array<AnalyzerSetting, kNumSettings> arm2) {
  const auto& gamma = pauli_operator_basis();
  for (int nu = 0; nu < kNumSettings; ++nu) {
    Projector& p = projectors_[nu];
    p.label = std::move(labels[nu]);
    p.arm1 = arm1[nu];
    p.arm2 = arm2[nu];
    Vector4c ket;
    const Vector2c a = analyzer_state(p.arm1);
    const Vector2c b = analyzer_state(p.arm2);
    ket << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    p.op = ket * ket.adjoint();
    for (int mu = 0; mu < 16; ++mu) b_(nu, mu) = (p.op * gamma[mu]).trace().real();
  }
  Eigen::JacobiSVD<Matrix16> svd(b_);
  const auto& sv = svd.singularValues();
  cond_ = sv(15) > 0.0 ? sv(0) / sv(15) : std::numeric_limits<double>::infinity();
  if (!(cond_ < kMaxCondition)) throw InvariantViolation("projector set is not tomographically complete");
}

int ProjectorSet::index_of(const std::string& label) const {
  for (int i = 0; i < kNumSettings; ++i)
    if (projectors_[i].label == label) return i;
  return -1;
}

ProjectorSet ProjectorSet::perturbed(double sigma_deg, Rng& rng) const {
  if (!(sigma_deg >= 0.0)) throw InvariantViolation("settings sigma must be >= 0");
  std::array<std::string, kNumSettings> labels;
  std::array<AnalyzerSetting, kNumSettings> arm1;
  std::array<AnalyzerSetting, kNumSettings> arm2;
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int nu = 0; nu < kNumSettings; ++nu) {
    labels[nu] = projectors_[nu].label;
    arm1[nu] = projectors_[nu].arm1;
    arm2[nu] = projectors_[nu].arm2;
    for (AnalyzerSetting* a : {&arm1[nu], &arm2[nu]}) {
      a->qwp += sigma_deg * noise(rng);
      a->hwp += sigma_deg * noise(rng);
    }
  }
  return ProjectorSet(std::move(labels), arm1, arm2);
}

const ProjectorSet& standard_projectors() {
  static const ProjectorSet set = [] {
    // Waveplate angles realising each analyzer state: (qwp, hwp).
    static constexpr AnalyzerSetting kAnalyzer[4] = {
        {0.0, 0.0},     // H
        {0.0, 45.0},    // V
        {-45.0, 22.5},  // D
        {0.0, 22.5},    // R
    };
    std::array<AnalyzerSetting, kNumSettings> arm1;
    std::array<AnalyzerSetting, kNumSettings> arm2;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        arm1[4 * a + b] = kAnalyzer[a];
        arm2[4 * a + b] = kAnalyzer[b];
      }
    return ProjectorSet(standard_labels(), arm1, arm2);
  }();
  return set;
}

CountVector expected_counts(const DensityMatrix& rho, const ProjectorSet& set, double n_per_basis) {
  if (!(n_per_basis > 0.0) || !std::isfinite(n_per_basis))
    throw InvariantViolation("n_per_basis must be positive and finite");
  CountVector out;
  for (int nu = 0; nu < kNumSettings; ++nu)
    out[nu] = n_per_basis * std::max(0.0, (rho.matrix() * set[nu].op).trace().real());
  return out;
}

CountVector CountRecord::as_real() const {
  CountVector out;
  for (int i = 0; i < kNumSettings; ++i) out[i] = static_cast<double>(counts[i]);
  return out;
}

CountRecord sample_counts(const CountVector& expected, std::uint64_t seed, double n_per_basis) {
  for (double e : expected)
    if (!(e >= 0.0) || !std::isfinite(e)) throw InvariantViolation("expected counts must be finite and >= 0");
  CountRecord rec;
  rec.seed = seed;
  rec.n_per_basis = n_per_basis;
  Rng rng(seed);
  for (int nu = 0; nu < kNumSettings; ++nu) {
    if (expected[nu] > 0.0) {
      std::poisson_distribution<std::int64_t> draw(expected[nu]);
      rec.counts[nu] = draw(rng);
    }
  }
  return rec;
}

ReconstructionResult linear_inversion(std::span<const double, kNumSettings> counts, const ProjectorSet& set) {
  check_counts(counts);
  const Matrix16& b = set.reconstruction_matrix();
  Eigen::FullPivLU<Matrix16> lu(b);
  if (!lu.isInvertible()) throw NumericalFailure("reconstruction matrix is singular");
  Vector16 n;
  for (int i = 0; i < kNumSettings; ++i) n(i) = counts[i];
  const Vector16 r = lu.solve(n);

  const auto& gamma = pauli_operator_basis();
  Matrix4c m = Matrix4c::Zero();
  for (int mu = 0; mu < 16; ++mu) m += r(mu) * gamma[mu];
  const double trace = m.trace().real();
  if (!(trace > 0.0)) throw NumericalFailure("linear inversion produced non-positive trace");

  ReconstructionResult res;
  res.method = Method::kLinear;
  res.matrix = hermitian_part(m / trace);
  res.report = validate_density(res.matrix);
  return res;
}

ReconstructionResult linear_inversion(const CountRecord& rec, const ProjectorSet& set) {
  const CountVector c = rec.as_real();
  return linear_inversion(std::span<const double, kNumSettings>(c), set);
}

DensityMatrix project_to_physical(const Matrix4c& m, double floor) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(hermitian_part(m));
  Eigen::Vector4d ev = es.eigenvalues().cwiseMax(floor);
  if (!(ev.sum() > 0.0)) ev.setConstant(0.25);
  ev /= ev.sum();
  const Matrix4c out = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  return DensityMatrix(hermitian_part(out));
}

double log_likelihood(const DensityMatrix& rho, std::span<const double, kNumSettings> counts,
                      const ProjectorSet& set) {
  std::array<double, kNumSettings> p{};
  double total_p = 0.0;
  double total_n = 0.0;
  for (int nu = 0; nu < kNumSettings; ++nu) {
    p[nu] = std::max(0.0, (rho.matrix() * set[nu].op).trace().real());
    total_p += p[nu];
    total_n += counts[nu];
  }
  if (!(total_p > 0.0)) return -std::numeric_limits<double>::infinity();
  const double scale = total_n / total_p;
  double ll = 0.0;
  for (int nu = 0; nu < kNumSettings; ++nu) {
    const double m = scale * p[nu];
    if (counts[nu] > 0.0) {
      if (!(m > 0.0)) return -std::numeric_limits<double>::infinity();
      ll += counts[nu] * std::log(m);
    }
    ll -= m;
  }
  return ll;
}

ReconstructionResult mle_reconstruct(std::span<const double, kNumSettings> counts, const ProjectorSet& set,
                                     const MleOptions& opts) {
  check_counts(counts);
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  std::array<double, kNumSettings> freq{};
  for (int nu = 0; nu < kNumSettings; ++nu) freq[nu] = counts[nu] / total;

  std::array<Vector4c, kNumSettings> kets;
  for (int nu = 0; nu < kNumSettings; ++nu) {
    // Each projector is rank one; recover its ket from the dominant column.
    const Matrix4c& op = set[nu].op;
    int col = 0;
    op.diagonal().real().maxCoeff(&col);
    kets[nu] = op.col(col) / std::sqrt(op(col, col).real());
  }

  // Seed: regularised linear inversion, scaled to the best-fitting flux.
  DensityMatrix seed = DensityMatrix::maximally_mixed();
  try {
    seed = project_to_physical(linear_inversion(counts, set).matrix, opts.seed_floor);
  } catch (const NumericalFailure&) {
  }
  double seed_mass = 0.0;
  for (int nu = 0; nu < kNumSettings; ++nu) seed_mass += (seed.matrix() * set[nu].op).trace().real();
  const Matrix4c a0 = seed.matrix() / seed_mass;
  Eigen::LLT<Matrix4c> llt(hermitian_part(a0));
  Eigen::VectorXd x0 = pack_lower(llt.info() == Eigen::Success ? Matrix4c(llt.matrixL())
                                                               : Matrix4c(Matrix4c::Identity() * 0.5));

  const Objective objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad) -> double {
    const Matrix4c l = unpack_lower(x);
    const Matrix4c l_adj = l.adjoint();
    Matrix4c g = Matrix4c::Zero();
    double f = 0.0;
    for (int nu = 0; nu < kNumSettings; ++nu) {
      const double m = (l_adj * kets[nu]).squaredNorm();
      double w = 1.0;
      f += m;
      if (freq[nu] > 0.0) {
        if (!(m > 0.0)) return std::numeric_limits<double>::infinity();
        f -= freq[nu] * std::log(m);
        w -= freq[nu] / m;
      }
      g += w * set[nu].op;
    }
    // d f = 2 Re Tr(L^dag G dL).
    const Matrix4c h = l_adj * g;
    grad.resize(kParams);
    for (int i = 0; i < 4; ++i) grad(i) = 2.0 * h(i, i).real();
    for (std::size_t k = 0; k < kOffDiagonal.size(); ++k) {
      const auto [r, c] = kOffDiagonal[k];
      grad(4 + 2 * k) = 2.0 * h(c, r).real();
      grad(5 + 2 * k) = -2.0 * h(c, r).imag();
    }
    return f;
  };

  LbfgsOptions lopts;
  lopts.max_iterations = opts.max_iterations;
  lopts.gradient_tolerance = opts.gradient_tolerance;
  const LbfgsResult fit = minimize_lbfgs(objective, std::move(x0), lopts);

  const Matrix4c l = unpack_lower(fit.x);
  const Matrix4c a = l * l.adjoint();
  ReconstructionResult res;
  res.method = Method::kMle;
  res.matrix = hermitian_part(a / a.trace().real());
  res.report = validate_density(res.matrix);
  res.iterations = fit.iterations;
  res.gradient_norm = fit.gradient_norm;
  if (res.report.ok()) res.log_likelihood = log_likelihood(DensityMatrix(res.matrix), counts, set);
  if (!fit.converged) {
    throw MleFailure("maximum-likelihood fit did not converge after " + std::to_string(fit.iterations) +
                         " iterations (" + fit.status + ", gradient norm " + std::to_string(fit.gradient_norm) +
                         ")",
                     res);
  }
  return res;
}

ReconstructionResult mle_reconstruct(const CountRecord& rec, const ProjectorSet& set, const MleOptions& opts) {
  const CountVector c = rec.as_real();
  return mle_reconstruct(std::span<const double, kNumSettings>(c), set, opts);
}

MonteCarloSummary monte_carlo_summary(const DensityMatrix& truth, const ProjectorSet& set, double n_per_basis,
                                      const UncertaintyConfig& cfg) {
  if (!(cfg.settings_sigma >= 0.0)) throw InvariantViolation("settings_sigma must be >= 0");
  if (cfg.n_mc < 1) throw InvariantViolation("n_mc must be >= 1");
  if (!(n_per_basis > 0.0)) throw InvariantViolation("n_per_basis must be positive");

  struct Trial {
    bool ok = false;
    double s_l = 0.0;
    double t = 0.0;
  };
  std::vector<Trial> trials(cfg.n_mc);

  auto run_trial = [&](int i) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    const ProjectorSet actual = cfg.settings_sigma > 0.0 ? set.perturbed(cfg.settings_sigma, rng) : set;
    const CountVector expected = expected_counts(truth, actual, n_per_basis);
    CountVector counts = expected;
    if (cfg.poisson) counts = sample_counts(expected, rng(), n_per_basis).as_real();
    try {
      const DensityMatrix rho = mle_reconstruct(std::span<const double, kNumSettings>(counts), set).density();
      trials[i] = {true, linear_entropy(rho), tangle(rho)};
    } catch (const NumericalFailure&) {
      trials[i].ok = false;
    } catch (const InvariantViolation&) {
      trials[i].ok = false;
    }
  };

  int workers = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, cfg.n_mc);
  if (workers == 1) {
    for (int i = 0; i < cfg.n_mc; ++i) run_trial(i);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int i = w; i < cfg.n_mc; i += workers) run_trial(i);
      });
  }

  MonteCarloSummary out;
  out.trials = cfg.n_mc;
  double sum_s = 0.0, sum_t = 0.0;
  int good = 0;
  for (const Trial& t : trials) {
    if (!t.ok) {
      ++out.failures;
      continue;
    }
    ++good;
    sum_s += t.s_l;
    sum_t += t.t;
  }
  if (out.failures > kMaxFailureFraction * cfg.n_mc || good == 0)
    throw NumericalFailure("Monte-Carlo uncertainty: " + std::to_string(out.failures) + " of " +
                           std::to_string(cfg.n_mc) + " reconstructions failed");
  const double mean_s = sum_s / good;
  const double mean_t = sum_t / good;
  double var_s = 0.0, var_t = 0.0;
  for (const Trial& t : trials) {
    if (!t.ok) continue;
    var_s += (t.s_l - mean_s) * (t.s_l - mean_s);
    var_t += (t.t - mean_t) * (t.t - mean_t);
  }
  out.point.s_l = mean_s;
  out.point.t = mean_t;
  out.point.s_l_err = good > 1 ? std::sqrt(var_s / (good - 1)) : 0.0;
  out.point.t_err = good > 1 ? std::sqrt(var_t / (good - 1)) : 0.0;
  return out;
}

PlanePoint monte_carlo_uncertainty(const DensityMatrix& truth, const ProjectorSet& set, double n_per_basis,
                                   const UncertaintyConfig& cfg) {
  return monte_carlo_summary(truth, set, n_per_basis, cfg).point;
}

}  // namespace qsl
