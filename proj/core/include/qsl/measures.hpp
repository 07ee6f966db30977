#pragma once

// Scalar characterisations of a two-qubit state.
//
//   concurrence  C = max(0, l1 - l2 - l3 - l4), l_i the decreasing square roots
//                of the eigenvalues of rho * (Y(x)Y) rho^* (Y(x)Y); rho^* is the
//                entrywise conjugate in the |HH>,|HV>,|VH>,|VV> basis.
//   tangle       T = C^2
//   linear entropy S_L = (4/3)(1 - Tr rho^2), so I/4 maps to 1.
//   CHSH maximum 2 sqrt(m1 + m2), m1, m2 the two largest eigenvalues of t^T t,
//                t_ij = Tr[rho (sigma_i (x) sigma_j)].

#include <Eigen/Dense>

#include "qsl/state.hpp"

namespace qsl {

struct MeasureReport {
  double tangle = 0.0;
  double linear_entropy = 0.0;
  double purity = 0.0;
  double chsh_max = 0.0;
};

double concurrence(const DensityMatrix& rho);
double tangle(const DensityMatrix& rho);
double purity(const DensityMatrix& rho);
double linear_entropy(const DensityMatrix& rho);

/// <psi| rho |psi>.
double fidelity(const DensityMatrix& rho, const PureKet& target);

/// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2; reduces to `fidelity` when
/// either argument is pure.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// 3x3 spin correlation matrix t_ij = Tr[rho (sigma_i (x) sigma_j)], i,j in {x,y,z}.
Eigen::Matrix3d correlation_matrix(const DensityMatrix& rho);

double chsh_max(const DensityMatrix& rho);

/// Trace distance (1/2) || a - b ||_1.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

MeasureReport measure(const DensityMatrix& rho);

}  // namespace qsl
