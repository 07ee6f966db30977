#include "qsl/families.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsl/error.hpp"
#include "qsl/measures.hpp"

namespace qsl {

namespace {

constexpr double kBisectionTolerance = 1e-10;

void require_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0))
    throw InvariantViolation(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
}

// S_L of the maximal state with tangle t, evaluated through the measures module.
double mems_entropy(double t) { return linear_entropy(mems_state(MemsParam(t))); }

}  // namespace

WernerParam::WernerParam(double lam_) : lam(lam_) { require_unit_interval(lam, "Werner weight lam"); }

MemsParam::MemsParam(double t_) : t(t_) {
  require_unit_interval(t, "target tangle t");
  const double root = std::sqrt(t);
  d = root >= 2.0 / 3.0 ? root / 2.0 : 1.0 / 3.0;
}

DensityMatrix werner_state(WernerParam lam) { return werner_state(lam, phi_plus()); }

DensityMatrix werner_state(WernerParam lam, const PureKet& ent) {
  return DensityMatrix(lam.lam * Matrix4c::Identity() / 4.0 + (1.0 - lam.lam) * ent.projector());
}

std::vector<PlanePoint> werner_curve(int n) {
  if (n < 2) throw InvariantViolation("werner_curve needs at least 2 samples");
  std::vector<PlanePoint> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double lam = static_cast<double>(k) / (n - 1);
    const DensityMatrix rho = werner_state(WernerParam(lam));
    PlanePoint p;
    p.s_l = linear_entropy(rho);
    p.t = tangle(rho);
    p.label = "werner";
    out.push_back(p);
  }
  return out;
}

DensityMatrix mems_state(MemsParam p) {
  const double off = std::sqrt(p.t) / 2.0;
  Matrix4c m = Matrix4c::Zero();
  m(kHH, kHH) = p.d;
  m(kVV, kVV) = p.d;
  m(kHV, kHV) = 1.0 - 2.0 * p.d;
  m(kHH, kVV) = off;
  m(kVV, kHH) = off;
  return DensityMatrix(m);
}

double mems_boundary(double s_l) {
  require_unit_interval(s_l, "linear entropy s_l");
  if (s_l >= mems_entropy(0.0)) return 0.0;
  if (s_l <= 0.0) return 1.0;
  // S_L(t) decreases from 8/9 at t = 0 to 0 at t = 1.
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > kBisectionTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mems_entropy(mid) > s_l)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<PlanePoint> mems_curve(int n) {
  if (n < 2) throw InvariantViolation("mems_curve needs at least 2 samples");
  std::vector<PlanePoint> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / (n - 1);
    const DensityMatrix rho = mems_state(MemsParam(t));
    PlanePoint p;
    p.s_l = linear_entropy(rho);
    p.t = tangle(rho);
    p.label = "maximal";
    out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const PlanePoint& a, const PlanePoint& b) { return a.s_l < b.s_l; });
  return out;
}

bool is_physical_point(const PlanePoint& p) {
  if (!(p.s_l >= 0.0 && p.s_l <= 1.0) || !(p.t >= 0.0)) return false;
  return p.t <= mems_boundary(p.s_l) + kBoundarySlack;
}

}  // namespace qsl
