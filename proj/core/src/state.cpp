#include "qsl/state.hpp"

#include <cmath>
#include <sstream>

#include "qsl/error.hpp"

namespace qsl {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

PureKet::PureKet(const Vector4c& amplitudes) : amps_(amplitudes) {
  const double defect = std::abs(amps_.squaredNorm() - 1.0);
  if (!(defect <= tol::kNorm)) {
    std::ostringstream os;
    os << "ket not normalised: | |psi|^2 - 1 | = " << defect;
    throw InvariantViolation(os.str());
  }
}

PureKet PureKet::normalized(const Vector4c& raw) {
  const double n = raw.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvariantViolation("cannot normalise a zero or non-finite ket");
  return PureKet(raw / n);
}

PureKet PureKet::basis(Basis b) {
  Vector4c v = Vector4c::Zero();
  v(b) = 1.0;
  return PureKet(v);
}

double overlap_magnitude(const PureKet& a, const PureKet& b) {
  return std::abs(a.amplitudes().dot(b.amplitudes()));
}

PureKet phi_plus() { return PureKet(Vector4c(kInvSqrt2, 0, 0, kInvSqrt2)); }
PureKet phi_minus() { return PureKet(Vector4c(kInvSqrt2, 0, 0, -kInvSqrt2)); }
PureKet psi_plus() { return PureKet(Vector4c(0, kInvSqrt2, kInvSqrt2, 0)); }
PureKet psi_minus() { return PureKet(Vector4c(0, kInvSqrt2, -kInvSqrt2, 0)); }

std::string DensityReport::describe() const {
  std::ostringstream os;
  os << "hermiticity defect " << hermiticity_defect << (hermitian ? " (ok)" : " (FAIL)")
     << ", trace defect " << trace_defect << (unit_trace ? " (ok)" : " (FAIL)")
     << ", min eigenvalue " << min_eigenvalue << (positive ? " (ok)" : " (FAIL)");
  return os.str();
}

DensityReport validate_density(const Matrix4c& rho) {
  DensityReport r;
  if (!rho.allFinite()) {
    r.hermiticity_defect = r.trace_defect = std::numeric_limits<double>::infinity();
    r.min_eigenvalue = -std::numeric_limits<double>::infinity();
    return r;
  }
  r.hermiticity_defect = max_abs(rho - rho.adjoint());
  r.trace_defect = std::abs(rho.trace() - Complex(1.0, 0.0));
  const Matrix4c herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(herm, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  r.hermitian = r.hermiticity_defect <= tol::kStructural;
  r.unit_trace = r.trace_defect <= tol::kStructural;
  r.positive = r.min_eigenvalue >= -tol::kEigen;
  return r;
}

DensityMatrix::DensityMatrix(const Matrix4c& m) : m_(m) {
  const DensityReport report = validate_density(m_);
  if (!report.ok()) throw InvariantViolation("invalid density matrix: " + report.describe());
}

DensityMatrix DensityMatrix::from_ket(const PureKet& ket) { return DensityMatrix(ket.projector()); }

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(Matrix4c::Identity() / 4.0); }

Eigen::Vector4d DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

JonesOperator::JonesOperator(const Matrix2c& m) : m_(m) {
  const double defect = max_abs(m_.adjoint() * m_ - Matrix2c::Identity());
  if (!(defect <= tol::kUnitary)) {
    std::ostringstream os;
    os << "Jones operator not unitary: max |U^dag U - I| = " << defect;
    throw InvariantViolation(os.str());
  }
}

JonesOperator JonesOperator::identity() { return JonesOperator(Matrix2c::Identity()); }

JonesOperator JonesOperator::operator*(const JonesOperator& rhs) const {
  return JonesOperator(m_ * rhs.m_);
}

JonesOperator hwp(double theta_deg) {
  const double t = 2.0 * deg_to_rad(theta_deg);
  const double c = std::cos(t);
  const double s = std::sin(t);
  Matrix2c m;
  m << c, s, s, -c;
  return JonesOperator(m);
}

JonesOperator qwp(double theta_deg) {
  const double t = deg_to_rad(theta_deg);
  const double c = std::cos(t);
  const double s = std::sin(t);
  const Complex i(0.0, 1.0);
  // R(t) diag(1, i) R(-t), expanded.
  Matrix2c m;
  m << c * c + i * s * s, (1.0 - i) * c * s,
       (1.0 - i) * c * s, s * s + i * c * c;
  return JonesOperator(m);
}

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Matrix4c tensor_product(const JonesOperator& a, const JonesOperator& b) {
  return kron(a.matrix(), b.matrix());
}

Matrix2c pauli(int i) {
  const Complex I(0.0, 1.0);
  Matrix2c m;
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw std::out_of_range("pauli index must be 0..3");
  }
  return m;
}

bool is_unitary(const Matrix4c& u, double tolerance) {
  return u.allFinite() && max_abs(u.adjoint() * u - Matrix4c::Identity()) <= tolerance;
}

KrausChannel::KrausChannel(std::vector<Matrix4c> operators) : ops_(std::move(operators)) {
  if (ops_.empty()) throw InvariantViolation("Kraus channel needs at least one operator");
  Matrix4c sum = Matrix4c::Zero();
  for (const auto& k : ops_) sum += k.adjoint() * k;
  const double defect = max_abs(sum - Matrix4c::Identity());
  if (!(defect <= tol::kStructural)) {
    std::ostringstream os;
    os << "incomplete Kraus set: max |sum K^dag K - I| = " << defect;
    throw InvariantViolation(os.str());
  }
}

KrausChannel KrausChannel::identity() { return KrausChannel({Matrix4c::Identity()}); }

KrausChannel KrausChannel::fully_depolarizing() {
  std::vector<Matrix4c> ops;
  ops.reserve(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ops.push_back(kron(pauli(i), pauli(j)) / 4.0);
  return KrausChannel(std::move(ops));
}

KrausChannel KrausChannel::on_arm(int arm, const std::vector<Matrix2c>& single) {
  if (arm != 1 && arm != 2) throw InvariantViolation("arm must be 1 or 2");
  std::vector<Matrix4c> ops;
  ops.reserve(single.size());
  for (const auto& k : single)
    ops.push_back(arm == 1 ? kron(k, Matrix2c::Identity()) : kron(Matrix2c::Identity(), k));
  return KrausChannel(std::move(ops));
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix4c& u) {
  if (!is_unitary(u)) throw InvariantViolation("apply_unitary: operator is not unitary");
  return DensityMatrix(u * rho.matrix() * u.adjoint());
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel) {
  Matrix4c out = Matrix4c::Zero();
  for (const auto& k : channel.operators()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix(out);
}

}  // namespace qsl
