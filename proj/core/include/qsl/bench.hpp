#pragma once

// The synthesis apparatus: a tunable downconversion source, the two
// state-selector half-wave plates, and the spatial and temporal decoherers.
// Beam path order is source -> selector -> decoherer; analysis optics live in
// the tomography module.

#include <numbers>
#include <variant>

#include "qsl/state.hpp"

namespace qsl {

/// |HH> + epsilon e^{i phi} |VV>, normalised.
struct SourceSetting {
  double epsilon = 1.0;  // relative |VV> amplitude, >= 0
  double phi = 0.0;      // radians
};

/// Selector half-wave plate angles in degrees, arm 1 and arm 2.
struct SelectorSetting {
  double theta1 = 0.0;
  double theta2 = 0.0;
};

enum class SpatialArms { kOne, kBoth };

/// Birefringent crystal whose phase is finely fringed across the aperture:
/// dephasing in the linear basis at `axis` degrees on each occupied arm.
/// kOne occupies arm 1 only.
struct SpatialDecohererSetting {
  SpatialArms arms = SpatialArms::kOne;
  double axis1 = 45.0;
  double axis2 = 0.0;
  double strength = 1.0;  // 1 = complete dephasing, 0 = identity
};

/// Long birefringent delay per arm. Delays are H-relative-to-V group delays
/// in units of the photon coherence time; `sigma` is the spectral width in
/// inverse coherence times, so sigma * tau = 1 is one coherence length.
struct TemporalDecohererSetting {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double sigma = 1.0;
  /// Central photon frequency in the same units; a one-coherence-time delay
  /// spans ~140 optical cycles.
  double carrier = 2.0 * std::numbers::pi * 140.0;
  /// Drop the deterministic carrier phase e^{i mu}, as a fixed phase plate would.
  bool compensate_phase = false;
};

struct NoDecoherer {};

using DecohererSetting = std::variant<NoDecoherer, SpatialDecohererSetting, TemporalDecohererSetting>;

PureKet source_state(const SourceSetting& s);

/// hwp(theta1) (x) hwp(theta2).
DensityMatrix apply_selector(const DensityMatrix& rho, const SelectorSetting& s);

/// Kraus form of the spatial decoherer: per occupied arm
/// {sqrt(1-s) I, sqrt(s) P_a, sqrt(s) P_a_perp}, or just the two projectors
/// when s = 1.
KrausChannel spatial_channel(const SpatialDecohererSetting& s);

DensityMatrix spatial_decohere(const DensityMatrix& rho, const SpatialDecohererSetting& s);

/// Elementwise coherence factors of the temporal decoherer: entry (a, b)
/// multiplies rho_ab.
Matrix4c temporal_factors(const TemporalDecohererSetting& s);

DensityMatrix temporal_decohere(const DensityMatrix& rho, const TemporalDecohererSetting& s);

DensityMatrix decohere(const DensityMatrix& rho, const DecohererSetting& d);

DensityMatrix run_bench(const SourceSetting& source, const SelectorSetting& selector,
                        const DecohererSetting& decoherer);

}  // namespace qsl
