#include "qsl/bench.hpp"

#include <cmath>

#include "qsl/error.hpp"

namespace qsl {

namespace {

// |a><a| for the linear polarisation at `deg`.
Matrix2c linear_projector(double deg) {
  const double t = deg_to_rad(deg);
  Vector2c v(std::cos(t), std::sin(t));
  return v * v.adjoint();
}

std::vector<Matrix2c> dephasing_ops(double axis_deg, double strength) {
  const Matrix2c p = linear_projector(axis_deg);
  const Matrix2c q = Matrix2c::Identity() - p;
  if (strength >= 1.0) return {p, q};
  const double w = std::sqrt(strength);
  return {std::sqrt(1.0 - strength) * Matrix2c::Identity(), w * p, w * q};
}

}  // namespace

PureKet source_state(const SourceSetting& s) {
  if (!(s.epsilon >= 0.0) || !std::isfinite(s.epsilon) || !std::isfinite(s.phi))
    throw InvariantViolation("source epsilon must be finite and >= 0");
  const Vector4c v(1.0, 0.0, 0.0, s.epsilon * std::polar(1.0, s.phi));
  return PureKet::normalized(v);
}

DensityMatrix apply_selector(const DensityMatrix& rho, const SelectorSetting& s) {
  if (!std::isfinite(s.theta1) || !std::isfinite(s.theta2))
    throw InvariantViolation("selector angles must be finite");
  return apply_unitary(rho, tensor_product(hwp(s.theta1), hwp(s.theta2)));
}

KrausChannel spatial_channel(const SpatialDecohererSetting& s) {
  if (!std::isfinite(s.axis1) || !std::isfinite(s.axis2))
    throw InvariantViolation("decoherer axes must be finite");
  if (!(s.strength >= 0.0 && s.strength <= 1.0))
    throw InvariantViolation("dephasing strength must lie in [0, 1]");
  const auto arm1 = dephasing_ops(s.axis1, s.strength);
  if (s.arms == SpatialArms::kOne) return KrausChannel::on_arm(1, arm1);
  // Local channels on different arms commute; compose as products.
  const auto arm2 = dephasing_ops(s.axis2, s.strength);
  std::vector<Matrix4c> ops;
  for (const auto& a : arm1)
    for (const auto& b : arm2) ops.push_back(kron(a, b));
  return KrausChannel(std::move(ops));
}

DensityMatrix spatial_decohere(const DensityMatrix& rho, const SpatialDecohererSetting& s) {
  return apply_channel(rho, spatial_channel(s));
}

Matrix4c temporal_factors(const TemporalDecohererSetting& s) {
  if (!(s.tau1 >= 0.0) || !(s.tau2 >= 0.0) || !std::isfinite(s.tau1) || !std::isfinite(s.tau2))
    throw InvariantViolation("temporal delays must be finite and >= 0");
  if (!(s.sigma >= 0.0) || !std::isfinite(s.sigma) || !std::isfinite(s.carrier))
    throw InvariantViolation("temporal sigma and carrier must be finite, sigma >= 0");

  // Photon frequencies are w0 + delta and w0 - delta. Basis state b picks up
  // phase w_j tau_j on each arm j carrying H, i.e. w0 * common + delta * diff.
  double common[4];
  double diff[4];
  for (int b = 0; b < 4; ++b) {
    const double h1 = (b >> 1) == 0 ? 1.0 : 0.0;
    const double h2 = (b & 1) == 0 ? 1.0 : 0.0;
    common[b] = s.tau1 * h1 + s.tau2 * h2;
    diff[b] = s.tau1 * h1 - s.tau2 * h2;
  }
  Matrix4c f;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double delta = diff[a] - diff[b];
      const double decay = std::exp(-0.5 * s.sigma * s.sigma * delta * delta);
      const double mu = s.compensate_phase ? 0.0 : s.carrier * (common[a] - common[b]);
      f(a, b) = std::polar(decay, mu);
    }
  }
  return f;
}

DensityMatrix temporal_decohere(const DensityMatrix& rho, const TemporalDecohererSetting& s) {
  return DensityMatrix(rho.matrix().cwiseProduct(temporal_factors(s)));
}

DensityMatrix decohere(const DensityMatrix& rho, const DecohererSetting& d) {
  struct Visitor {
    const DensityMatrix& rho;
    DensityMatrix operator()(const NoDecoherer&) const { return rho; }
    DensityMatrix operator()(const SpatialDecohererSetting& s) const { return spatial_decohere(rho, s); }
    DensityMatrix operator()(const TemporalDecohererSetting& s) const { return temporal_decohere(rho, s); }
  };
  return std::visit(Visitor{rho}, d);
}

DensityMatrix run_bench(const SourceSetting& source, const SelectorSetting& selector,
                        const DecohererSetting& decoherer) {
  const DensityMatrix initial = DensityMatrix::from_ket(source_state(source));
  return decohere(apply_selector(initial, selector), decoherer);
}

}  // namespace qsl
