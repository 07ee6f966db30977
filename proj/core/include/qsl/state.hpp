#pragma once

// Two-qubit polarisation state types and the linear-algebra contracts shared
// by every other module.
//
// Basis order is fixed everywhere: index 0 <-> |HH>, 1 <-> |HV>, 2 <-> |VH>,
// 3 <-> |VV>. The first letter is arm 1, the second arm 2, so a single-photon
// operator A on arm 1 and B on arm 2 combine as kron(A, B).

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qsl {

using Complex = std::complex<double>;
using Vector2c = Eigen::Vector2cd;
using Vector4c = Eigen::Vector4cd;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

namespace tol {
inline constexpr double kNorm = 1e-12;        // ket normalisation
inline constexpr double kUnitary = 1e-12;     // max |U^dag U - I|
inline constexpr double kStructural = 1e-10;  // hermiticity, trace, Kraus completeness
inline constexpr double kEigen = 1e-9;        // PSD slack
}  // namespace tol

enum Basis : int { kHH = 0, kHV = 1, kVH = 2, kVV = 3 };

/// Normalised 4-component ket in the |HH>,|HV>,|VH>,|VV> basis.
class PureKet {
 public:
  /// Throws InvariantViolation unless |amplitudes| = 1 within tol::kNorm.
  explicit PureKet(const Vector4c& amplitudes);

  /// Rescales a nonzero vector to unit norm.
  static PureKet normalized(const Vector4c& raw);

  static PureKet basis(Basis b);

  const Vector4c& amplitudes() const noexcept { return amps_; }
  Complex operator[](int i) const { return amps_(i); }

  Matrix4c projector() const { return amps_ * amps_.adjoint(); }

 private:
  Vector4c amps_;
};

/// |<a|b>|, the global-phase-free comparison of kets.
double overlap_magnitude(const PureKet& a, const PureKet& b);

// Common reference kets.
PureKet phi_plus();   // (|HH> + |VV>)/sqrt2
PureKet phi_minus();  // (|HH> - |VV>)/sqrt2
PureKet psi_plus();   // (|HV> + |VH>)/sqrt2
PureKet psi_minus();  // (|HV> - |VH>)/sqrt2

/// Outcome of checking a raw 4x4 matrix against the density-matrix invariants.
struct DensityReport {
  double hermiticity_defect = 0.0;  // max entrywise |rho - rho^dag|
  double trace_defect = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;      // of the Hermitian part
  bool hermitian = false;
  bool unit_trace = false;
  bool positive = false;

  bool ok() const noexcept { return hermitian && unit_trace && positive; }
  std::string describe() const;
};

DensityReport validate_density(const Matrix4c& rho);

/// Hermitian, unit-trace, positive-semidefinite 4x4 operator.
class DensityMatrix {
 public:
  /// Throws InvariantViolation carrying the defect report on failure.
  explicit DensityMatrix(const Matrix4c& m);

  static DensityMatrix from_ket(const PureKet& ket);
  static DensityMatrix maximally_mixed();

  const Matrix4c& matrix() const noexcept { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }

  /// Eigenvalues in ascending order.
  Eigen::Vector4d eigenvalues() const;

 private:
  Matrix4c m_;
};

/// 2x2 unitary acting on one photon's polarisation, basis order (H, V).
class JonesOperator {
 public:
  /// Throws InvariantViolation unless unitary within tol::kUnitary.
  explicit JonesOperator(const Matrix2c& m);

  static JonesOperator identity();

  const Matrix2c& matrix() const noexcept { return m_; }

  /// Composition: (*this) applied after `rhs`.
  JonesOperator operator*(const JonesOperator& rhs) const;
  Vector2c operator*(const Vector2c& v) const { return m_ * v; }

 private:
  Matrix2c m_;
};

/// Half-wave plate with fast axis at `theta_deg` from horizontal:
/// [[cos 2t, sin 2t], [sin 2t, -cos 2t]].
JonesOperator hwp(double theta_deg);

/// Quarter-wave plate with fast axis at `theta_deg`. qwp(0) = diag(1, i); other
/// angles are the same retarder rotated, R(t) diag(1, i) R(-t), which is the
/// rotation under which hwp above is R(t) diag(1, -1) R(-t).
JonesOperator qwp(double theta_deg);

/// Raw Kronecker product a (x) b.
Matrix4c kron(const Matrix2c& a, const Matrix2c& b);

/// a (x) b for two single-photon unitaries; arm 1 is the left factor.
Matrix4c tensor_product(const JonesOperator& a, const JonesOperator& b);

/// Pauli matrices indexed 0 = I, 1 = X, 2 = Y, 3 = Z.
Matrix2c pauli(int i);

bool is_unitary(const Matrix4c& u, double tolerance = tol::kUnitary);

/// Completely positive trace-preserving map in Kraus form on the pair.
class KrausChannel {
 public:
  /// Throws InvariantViolation unless sum K^dag K = I within tol::kStructural.
  explicit KrausChannel(std::vector<Matrix4c> operators);

  static KrausChannel identity();

  /// rho -> I/4 for every input (the 16 scaled Pauli products).
  static KrausChannel fully_depolarizing();

  /// Single-photon channel on one arm (1 or 2), identity on the other.
  static KrausChannel on_arm(int arm, const std::vector<Matrix2c>& single);

  const std::vector<Matrix4c>& operators() const noexcept { return ops_; }

 private:
  std::vector<Matrix4c> ops_;
};

/// U rho U^dag. Throws InvariantViolation if `u` is not unitary.
DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix4c& u);

/// sum_k K rho K^dag.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel);

inline constexpr double deg_to_rad(double deg) { return deg * 0.017453292519943295; }

}  // namespace qsl
