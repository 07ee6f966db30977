#include "qsl/random.hpp"

#include "qsl/error.hpp"

namespace qsl {

namespace {

Complex gaussian_complex(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

Matrix2c random_single_density(Rng& rng) {
  Matrix2c a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = gaussian_complex(rng);
  Matrix2c m = a * a.adjoint();
  return m / m.trace().real();
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

JonesOperator random_jones(Rng& rng) {
  Matrix2c z;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) z(i, j) = gaussian_complex(rng);
  Eigen::HouseholderQR<Matrix2c> qr(z);
  Matrix2c q = qr.householderQ();
  const Matrix2c r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases of R's diagonal so Q is Haar distributed.
  for (int j = 0; j < 2; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  // Re-orthonormalise to keep the unitarity defect at rounding level.
  Eigen::HouseholderQR<Matrix2c> clean(q);
  Matrix2c u = clean.householderQ();
  const Matrix2c rr = clean.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 2; ++j) u.col(j) *= rr(j, j) / std::abs(rr(j, j));
  return JonesOperator(u);
}

Matrix4c random_local_unitary(Rng& rng) {
  const JonesOperator a = random_jones(rng);
  const JonesOperator b = random_jones(rng);
  return tensor_product(a, b);
}

PureKet random_pure_ket(Rng& rng) {
  Vector4c v;
  for (int i = 0; i < 4; ++i) v(i) = gaussian_complex(rng);
  return PureKet::normalized(v);
}

DensityMatrix random_density(Rng& rng, int rank) {
  if (rank < 1 || rank > 4) throw InvariantViolation("rank must be in 1..4");
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> a(4, rank);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < rank; ++j) a(i, j) = gaussian_complex(rng);
  Matrix4c m = a * a.adjoint();
  m /= m.trace().real();
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

DensityMatrix random_product_density(Rng& rng) {
  const Matrix2c a = random_single_density(rng);
  const Matrix2c b = random_single_density(rng);
  return DensityMatrix(kron(a, b));
}

DensityMatrix random_separable_density(Rng& rng, int terms) {
  if (terms < 1) throw InvariantViolation("need at least one term");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix4c m = Matrix4c::Zero();
  double total = 0.0;
  for (int k = 0; k < terms; ++k) {
    const double w = u(rng) + 1e-3;
    m += w * random_product_density(rng).matrix();
    total += w;
  }
  return DensityMatrix(m / total);
}

}  // namespace qsl
