#pragma once

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace qutrit {

using Complex = std::complex<double>;
using Mat3 = Eigen::Matrix3cd;
using Mat9 = Eigen::Matrix<Complex, 9, 9>;
using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;
using Vec3 = std::array<double, 3>;

inline constexpr Complex kI{0.0, 1.0};

/// Coherence (generalized Bloch) vector of one qutrit in the C_a basis.
///
/// Normalization: rho = (1/sqrt6) * sum_a R_a C_a with R_0 = 1, so that
/// R_i = sqrt(3/2) * Tr(rho C_i) and the length sqrt(sum_i R_i^2) equals
/// sqrt(2) for a pure state and 0 for the maximally mixed one.
struct BlochVector {
  std::array<double, 9> R{1.0, 0, 0, 0, 0, 0, 0, 0, 0};

  double& operator[](int i) { return R[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return R[static_cast<std::size_t>(i)]; }

  /// b = sqrt(R_1^2 + ... + R_8^2).
  double length() const {
    double s = 0.0;
    for (int i = 1; i < 9; ++i) s += R[i] * R[i];
    return std::sqrt(s);
  }
};

/// Correlation tensor R_ab of a qutrit pair, rho = (1/6) R_ab C_a (x) C_b.
/// Row index belongs to the first qutrit. R(0,0) = 1.
using BlochTensor = Eigen::Matrix<double, 9, 9>;

}  // namespace qutrit
