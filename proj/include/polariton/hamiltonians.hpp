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

// Trap and coupling Hamiltonians. Units: hbar = 1. Qubit basis is
// |0> = |p_x> = (1,0)^T, |1> = |p_y> = (0,1)^T; two-qubit index is 2a + b
// with the control qubit as the left Kronecker factor.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "polariton/linalg.hpp"

namespace polariton {

inline ComplexMatrix2 pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix2 pauli_y() { return {{0.0, -kI}, {kI, 0.0}}; }
inline ComplexMatrix2 pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
inline ComplexMatrix2 identity2() { return ComplexMatrix2::identity(); }

/// Elliptical trap with auxiliary drive: splitting delta_eps = E_x - E_y and
/// drive components (P_x, P_y).
struct TrapConfig {
  double delta_eps = 0.0;
  double px = 0.0;
  double py = 0.0;
};

/// Auxiliary laser pulse: amplitude p0, phase theta, trap splitting
/// delta_eps and duration tau.
struct PulseParams {
  double p0 = 0.0;
  double theta = 0.0;
  double delta_eps = 0.0;
  double tau = 0.0;

  /// |P| = sqrt(p0^2 + delta_eps^2 / 4)
  double norm() const { return std::sqrt(p0 * p0 + 0.25 * delta_eps * delta_eps); }

  /// Angle between the drive axis and z: acos(delta_eps / 2|P|).
  double phi() const {
    const double p = norm();
    if (p == 0.0) return 0.0;
    return std::acos(std::clamp(delta_eps / (2.0 * p), -1.0, 1.0));
  }

  TrapConfig trap() const {
    return {delta_eps, p0 * std::cos(theta), p0 * std::sin(theta)};
  }

  /// Pulse realizing the axis (theta, phi) with norm p_norm, i.e.
  /// p0 = p_norm sin(phi), delta_eps = 2 p_norm cos(phi).
  static PulseParams from_axis(double p_norm, double theta, double phi, double tau) {
    return {p_norm * std::sin(phi), theta, 2.0 * p_norm * std::cos(phi), tau};
  }
};

struct CouplingConfig {
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;

  static CouplingConfig ising(double j12) { return {0.0, 0.0, j12}; }
  static CouplingConfig xy(double j12) { return {j12, j12, 0.0}; }
};

inline ComplexMatrix2 single_qubit_h(const TrapConfig &cfg) {
  return cfg.px * pauli_x() + cfg.py * pauli_y() + (0.5 * cfg.delta_eps) * pauli_z();
}

struct PulseAxis {
  std::array<double, 3> n_hat;
  double p_norm;
};

inline PulseAxis pulse_axis(const PulseParams &p) {
  const double pn = p.norm();
  if (!(pn > 0.0)) {
    throw std::invalid_argument("pulse_axis: |P| is zero, drive axis undefined");
  }
  const double phi = p.phi();
  return {{std::sin(phi) * std::cos(p.theta), std::sin(phi) * std::sin(p.theta), std::cos(phi)},
          pn};
}

/// |P| sigma . n_hat
inline ComplexMatrix2 axis_hamiltonian(const PulseAxis &axis) {
  return axis.p_norm * (axis.n_hat[0] * pauli_x() + axis.n_hat[1] * pauli_y() +
                        axis.n_hat[2] * pauli_z());
}

/// Rewrites a p-basis operator in the OAM basis {|cw>, |acw>}, where
/// |p_x> = (|cw> + |acw>)/sqrt2 and |p_y> = (|cw> - |acw>)/sqrt2.
inline ComplexMatrix2 to_oam_basis(const ComplexMatrix2 &h) {
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexMatrix2 t{{r, r}, {r, -r}};
  return adjoint(t) * h * t;
}

/// sum_k J_k sigma_k (x) sigma_k
inline ComplexMatrix4 interaction_h(const CouplingConfig &c) {
  return c.jx * kron(pauli_x(), pauli_x()) + c.jy * kron(pauli_y(), pauli_y()) +
         c.jz * kron(pauli_z(), pauli_z());
}

inline ComplexMatrix4 two_qubit_h(const TrapConfig &t1, const TrapConfig &t2,
                                  const CouplingConfig &c) {
  return kron(single_qubit_h(t1), identity2()) + kron(identity2(), single_qubit_h(t2)) +
         interaction_h(c);
}

/// Ising coupling with delta_eps_j = -2 J12 and no drive:
/// J12 (sz(x)sz - sz(x)1 - 1(x)sz).
inline ComplexMatrix4 cphase_hamiltonian(double j12) {
  const TrapConfig trap{-2.0 * j12, 0.0, 0.0};
  return two_qubit_h(trap, trap, CouplingConfig::ising(j12));
}

/// XY coupling with round traps and no drive.
inline ComplexMatrix4 iswap_hamiltonian(double j12) {
  return two_qubit_h(TrapConfig{}, TrapConfig{}, CouplingConfig::xy(j12));
}

}  // namespace polariton
