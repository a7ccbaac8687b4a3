// Copyright 2026 The polariton-qubits Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "polariton/hamiltonians.hpp"
#include "polariton/linalg.hpp"
#include "polariton/lindblad.hpp"

namespace polariton {

/// Round-off below this magnitude is clamped to zero before roots and logs;
/// anything more negative is an error.
inline constexpr double kMetricClampTolerance = 1e-9;

/// Eigenvalues below this are at the eigensolver's noise level and count as
/// zero in fidelity and entropy sums.
inline constexpr double kEigenvalueFloor = 1e-14;

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// x = 2 Re rho_01, y = 2 Im rho_10, z = rho_00 - rho_11.
inline BlochVector bloch_vector(const DensityOperator<2> &rho) {
  return {2.0 * rho(0, 1).real(), 2.0 * rho(1, 0).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

namespace detail {

inline double clamp_nonnegative(double x, const char *what) {
  if (x < -kMetricClampTolerance) {
    throw std::domain_error(std::string(what) + ": negative value " + std::to_string(x) +
                            " beyond round-off");
  }
  return std::max(x, 0.0);
}

template <std::size_t N>
Matrix<N> hermitian_part(const Matrix<N> &m) {
  return (m + adjoint(m)) * 0.5;
}

inline double clamp_unit(double x, const char *what) {
  if (x > 1.0 + kMetricClampTolerance) {
    throw std::domain_error(std::string(what) + ": value " + std::to_string(x) +
                            " exceeds 1 beyond round-off");
  }
  return std::clamp(x, 0.0, 1.0);
}

}  // namespace detail

template <std::size_t N>
double purity(const DensityOperator<N> &rho) {
  return trace(rho.matrix() * rho.matrix()).real();
}

/// Uhlmann fidelity Tr sqrt(sqrt(rho_ideal) rho sqrt(rho_ideal)).
template <std::size_t N>
double fidelity(const DensityOperator<N> &rho_ideal, const DensityOperator<N> &rho) {
  const Matrix<N> s = sqrt_psd(rho_ideal.matrix(), kMetricClampTolerance);
  const auto eig = hermitian_eig(detail::hermitian_part(s * rho.matrix() * s));
  double f = 0.0;
  for (double l : eig.values) {
    const double p = detail::clamp_nonnegative(l, "fidelity");
    if (p >= kEigenvalueFloor) f += std::sqrt(p);
  }
  return detail::clamp_unit(f, "fidelity");
}

/// -Tr(rho log2 rho)
template <std::size_t N>
double vn_entropy(const DensityOperator<N> &rho) {
  const auto eig = hermitian_eig(rho.matrix());
  double s = 0.0;
  for (double l : eig.values) {
    const double p = detail::clamp_nonnegative(l, "vn_entropy");
    if (p < kEigenvalueFloor) continue;
    s -= p * std::log2(p);
  }
  return std::max(s, 0.0);
}

/// (sigma_y (x) sigma_y) conj(rho) (sigma_y (x) sigma_y)
inline ComplexMatrix4 spin_flip(const ComplexMatrix4 &rho) {
  const ComplexMatrix4 yy = kron(pauli_y(), pauli_y());
  return yy * conjugate(rho) * yy;
}

/// Wootters concurrence. The lambda_i are square roots of the eigenvalues
/// of the Hermitian PSD product sqrt(rho) rho_tilde sqrt(rho), which shares
/// its spectrum with rho rho_tilde.
inline double concurrence(const DensityOperator<4> &rho) {
  const ComplexMatrix4 s = sqrt_psd(rho.matrix(), kMetricClampTolerance);
  const auto eig = hermitian_eig(detail::hermitian_part(s * spin_flip(rho.matrix()) * s));
  std::array<double, 4> lambda{};
  for (std::size_t i = 0; i < 4; ++i) {
    const double p = detail::clamp_nonnegative(eig.values[i], "concurrence");
    lambda[i] = p < kEigenvalueFloor ? 0.0 : std::sqrt(p);
  }
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
  return detail::clamp_unit(std::max(0.0, c), "concurrence");
}

}  // namespace polariton
