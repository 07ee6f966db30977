#include "qsl/measures.hpp"

#include <algorithm>
#include <cmath>

namespace qsl {

namespace {

// Relative eigenvalue size treated as an exact zero of rho.
constexpr double kRankCutoff = 1e-14;

Matrix4c hermitian_sqrt(const Matrix4c& m) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(m);
  const Eigen::Vector4d root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double concurrence(const DensityMatrix& rho) {
  // Wootters decomposition: with rho = V V^dag (columns sqrt(p_k) |e_k>), the
  // square roots of the spectrum of rho * rho~ are the singular values of the
  // complex-symmetric tau = V^T (Y (x) Y) V. Eigenvalues at rounding level are
  // dropped so rank-deficient states do not pick up sqrt(eps) residues.
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho.matrix());
  const Eigen::Vector4d& p = es.eigenvalues();
  const double cutoff = kRankCutoff * std::max(p.maxCoeff(), 0.0);
  Matrix4c v = Matrix4c::Zero();
  for (int k = 0; k < 4; ++k)
    if (p(k) > cutoff) v.col(k) = std::sqrt(p(k)) * es.eigenvectors().col(k);
  const Matrix4c tau = v.transpose() * kron(pauli(2), pauli(2)) * v;
  Eigen::JacobiSVD<Matrix4c> svd(tau);
  const Eigen::Vector4d s = svd.singularValues();  // decreasing
  return std::clamp(s(0) - s(1) - s(2) - s(3), 0.0, 1.0);
}

double tangle(const DensityMatrix& rho) {
  const double c = concurrence(rho);
  return c * c;
}

double purity(const DensityMatrix& rho) {
  // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho.
  return std::clamp(rho.matrix().squaredNorm(), 0.25, 1.0);
}

double linear_entropy(const DensityMatrix& rho) {
  return std::clamp(4.0 / 3.0 * (1.0 - purity(rho)), 0.0, 1.0);
}

double fidelity(const DensityMatrix& rho, const PureKet& target) {
  const Vector4c& psi = target.amplitudes();
  const double f = psi.dot(rho.matrix() * psi).real();
  return std::clamp(f, 0.0, 1.0);
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const Matrix4c s = hermitian_sqrt(rho.matrix());
  const Matrix4c inner = s * sigma.matrix() * s;
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
  const double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(tr * tr, 0.0, 1.0);
}

Eigen::Matrix3d correlation_matrix(const DensityMatrix& rho) {
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t(i, j) = (rho.matrix() * kron(pauli(i + 1), pauli(j + 1))).trace().real();
  return t;
}

double chsh_max(const DensityMatrix& rho) {
  const Eigen::Matrix3d t = correlation_matrix(rho);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t, Eigen::EigenvaluesOnly);
  const Eigen::Vector3d m = es.eigenvalues();  // ascending
  const double s = std::max(m(2) + m(1), 0.0);
  return std::min(2.0 * std::sqrt(s), 2.0 * std::sqrt(2.0));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  const Matrix4c d = a.matrix() - b.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

MeasureReport measure(const DensityMatrix& rho) {
  MeasureReport r;
  r.tangle = tangle(rho);
  r.purity = purity(rho);
  r.linear_entropy = 4.0 / 3.0 * (1.0 - r.purity);
  r.chsh_max = chsh_max(rho);
  return r;
}

}  // namespace qsl
