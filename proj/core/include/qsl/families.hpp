#pragma once

// Reference state families and the geometry of the tangle / linear-entropy plane.

#include <string>
#include <vector>

#include "qsl/state.hpp"

namespace qsl {

/// One (S_L, T) point with uncertainties.
struct PlanePoint {
  double s_l = 0.0;
  double t = 0.0;
  double s_l_err = 0.0;
  double t_err = 0.0;
  std::string label;
};

/// Linear entropy at which the Werner tangle first vanishes and below which
/// the maximal family beats the Werner family.
inline constexpr double kWernerEntropyEndpoint = 8.0 / 9.0;

/// Weight `lam` in [0, 1] of the maximally mixed component.
struct WernerParam {
  double lam = 0.0;
  explicit WernerParam(double lam_);
};

/// Target tangle t in [0, 1] of the maximal family and its diagonal element.
struct MemsParam {
  double t = 0.0;
  double d = 0.0;
  explicit MemsParam(double t_);
};

/// lam I/4 + (1 - lam) |phi+><phi+|.
DensityMatrix werner_state(WernerParam lam);

/// Werner state with an arbitrary pure component |ent>.
DensityMatrix werner_state(WernerParam lam, const PureKet& ent);

/// `n` points at evenly spaced lam in [0, 1], lam = 0 first, each computed
/// through the measures module.
std::vector<PlanePoint> werner_curve(int n);

/// Maximally entangled mixed state with tangle t:
///   [[D, 0, 0, sqrt(t)/2], [0, 1-2D, 0, 0], [0, 0, 0, 0], [sqrt(t)/2, 0, 0, D]]
/// with D = sqrt(t)/2 for sqrt(t) >= 2/3 and D = 1/3 otherwise.
DensityMatrix mems_state(MemsParam t);

/// Largest tangle compatible with linear entropy `s_l`: numeric inversion of
/// t -> S_L(mems_state(t)) by bisection; 0 for s_l >= 8/9.
double mems_boundary(double s_l);

/// `n` points of the maximal boundary at evenly spaced t in [0, 1], sorted by S_L.
std::vector<PlanePoint> mems_curve(int n);

/// Tolerance on the physicality test.
inline constexpr double kBoundarySlack = 1e-7;

bool is_physical_point(const PlanePoint& p);

}  // namespace qsl
