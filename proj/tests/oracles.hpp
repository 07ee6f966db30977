#pragma once

// Test-only reference computations that share no code path with the library
// routines they check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qsl/state.hpp"

namespace qsl::oracle {

inline Matrix4c spin_flipped(const Matrix4c& rho) {
  Matrix4c yy = Matrix4c::Zero();
  // sigma_y (x) sigma_y written out: antidiagonal (-1, 1, 1, -1).
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return yy * rho.conjugate() * yy;
}

/// Concurrence from the general (non-Hermitian) eigensolver on rho * rho~.
inline double concurrence_general_eig(const Matrix4c& rho) {
  Eigen::ComplexEigenSolver<Matrix4c> es(rho * spin_flipped(rho), false);
  std::vector<double> l;
  for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(es.eigenvalues()(i).real(), 0.0)));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

/// Concurrence from the Hermitian route sqrt(sqrt(rho) rho~ sqrt(rho)).
inline double concurrence_hermitian(const Matrix4c& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho);
  const Matrix4c s = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                     es.eigenvectors().adjoint();
  Matrix4c r = s * spin_flipped(rho) * s;
  r = 0.5 * (r + r.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> er(r);
  std::vector<double> l;
  for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(er.eigenvalues()(i), 0.0)));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

inline Matrix2c spin_along(const Eigen::Vector3d& n) {
  const Complex i(0.0, 1.0);
  Matrix2c m;
  m << n(2), n(0) - i * n(1), n(0) + i * n(1), -n(2);
  return m;
}

inline Matrix4c kron2(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return out;
}

/// CHSH value <A(x)(B+B') + A'(x)(B-B')> maximised by a settings scan: for
/// fixed Bob directions the optimal Alice directions are closed-form
/// (|sum_i <sigma_i (x) M>| per term), Bob's directions are scanned on a grid
/// then polished by random local search.
inline double chsh_settings_scan(const Matrix4c& rho, int grid = 12, int polish = 6000, unsigned seed = 7) {
  const Matrix2c sx = spin_along({1, 0, 0}), sy = spin_along({0, 1, 0}), sz = spin_along({0, 0, 1});
  auto alice_best = [&](const Matrix2c& m) {
    Eigen::Vector3d v;
    v(0) = (rho * kron2(sx, m)).trace().real();
    v(1) = (rho * kron2(sy, m)).trace().real();
    v(2) = (rho * kron2(sz, m)).trace().real();
    return v.norm();
  };
  auto value = [&](const Eigen::Vector3d& b, const Eigen::Vector3d& bp) {
    return alice_best(spin_along(b + bp)) + alice_best(spin_along(b - bp));
  };
  auto dir = [](double th, double ph) {
    return Eigen::Vector3d(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
  };
  double best = 0.0;
  double bt = 0, bp = 0, ct = 0, cp = 0;
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; j < 2 * grid; ++j)
      for (int k = 0; k <= grid; ++k)
        for (int l = 0; l < 2 * grid; ++l) {
          const double t1 = M_PI * i / grid, p1 = M_PI * j / grid, t2 = M_PI * k / grid, p2 = M_PI * l / grid;
          const double v = value(dir(t1, p1), dir(t2, p2));
          if (v > best) {
            best = v;
            bt = t1, bp = p1, ct = t2, cp = p2;
          }
        }
  std::mt19937 rng(seed);
  double step = M_PI / grid;
  for (int it = 0; it < polish; ++it) {
    std::normal_distribution<double> n(0.0, step);
    const double t1 = bt + n(rng), p1 = bp + n(rng), t2 = ct + n(rng), p2 = cp + n(rng);
    const double v = value(dir(t1, p1), dir(t2, p2));
    if (v > best) {
      best = v;
      bt = t1, bp = p1, ct = t2, cp = p2;
    }
    if (it % 500 == 499) step *= 0.5;
  }
  return best;
}

/// Temporal decoherer by quadrature over the detuning delta ~ N(0, sigma^2):
/// rho_out = int p(delta) U(delta) rho U(delta)^dag, U diagonal with phase
/// (w0 + delta) tau1 on arm-1 H and (w0 - delta) tau2 on arm-2 H.
inline Matrix4c temporal_by_quadrature(const Matrix4c& rho, double tau1, double tau2, double sigma, double w0,
                                       int nodes = 20001) {
  Matrix4c out = Matrix4c::Zero();
  const double lim = 12.0 * sigma;
  const double h = 2.0 * lim / (nodes - 1);
  double wsum = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double d = -lim + k * h;
    const double w = std::exp(-0.5 * d * d / (sigma * sigma));
    Vector4c ph;
    for (int b = 0; b < 4; ++b) {
      const bool h1 = (b >> 1) == 0, h2 = (b & 1) == 0;
      const double theta = (h1 ? (w0 + d) * tau1 : 0.0) + (h2 ? (w0 - d) * tau2 : 0.0);
      ph(b) = std::polar(1.0, theta);
    }
    out += w * (ph.asDiagonal() * rho * ph.conjugate().asDiagonal());
    wsum += w;
  }
  return out / wsum;
}

}  // namespace qsl::oracle
