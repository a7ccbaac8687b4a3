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

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "polariton/hamiltonians.hpp"
#include "polariton/linalg.hpp"

namespace polariton {

/// Normalized state vector of one (N = 2) or two (N = 4) qubits.
template <std::size_t N>
class PureState {
public:
  static constexpr double kNormTolerance = 1e-12;

  explicit PureState(const Vector<N> &amplitudes) : amp_(amplitudes) {
    const double n = norm(amp_);
    if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance) {
      throw std::invalid_argument("PureState: amplitudes are not normalized (norm " +
                                  std::to_string(n) + ")");
    }
  }

  /// Normalizes the given amplitudes first.
  static PureState normalized(Vector<N> amplitudes) {
    const double n = norm(amplitudes);
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw std::invalid_argument("PureState: zero or non-finite amplitude vector");
    }
    for (auto &a : amplitudes) a /= n;
    return PureState(amplitudes);
  }

  static PureState basis(std::size_t index) {
    if (index >= N) throw std::out_of_range("PureState::basis: index out of range");
    Vector<N> v{};
    v[index] = 1.0;
    return PureState(v);
  }

  const Vector<N> &amplitudes() const { return amp_; }
  const Complex &operator[](std::size_t i) const { return amp_[i]; }

  Matrix<N> projector() const { return outer(amp_, amp_); }

private:
  Vector<N> amp_;
};

using QubitState = PureState<2>;
using TwoQubitState = PureState<4>;

/// Clockwise OAM state, inverted from |p_x> = (|cw> + |acw>)/sqrt2,
/// |p_y> = (|cw> - |acw>)/sqrt2: |cw> = (|0> + |1>)/sqrt2.
inline QubitState clockwise_state() {
  const auto px = QubitState::basis(0).amplitudes();
  const auto py = QubitState::basis(1).amplitudes();
  return QubitState::normalized({px[0] + py[0], px[1] + py[1]});
}

/// |acw> = (|0> - |1>)/sqrt2
inline QubitState anticlockwise_state() {
  const auto px = QubitState::basis(0).amplitudes();
  const auto py = QubitState::basis(1).amplitudes();
  return QubitState::normalized({px[0] - py[0], px[1] - py[1]});
}

inline TwoQubitState product_state(const QubitState &control, const QubitState &target) {
  return TwoQubitState::normalized(kron(control.amplitudes(), target.amplitudes()));
}

/// Single-qubit state by label: "0", "1", "cw", "acw".
inline std::optional<QubitState> qubit_state_from_label(std::string_view label) {
  if (label == "0") return QubitState::basis(0);
  if (label == "1") return QubitState::basis(1);
  if (label == "cw") return clockwise_state();
  if (label == "acw") return anticlockwise_state();
  return std::nullopt;
}

enum class GateLabel { x_pi, y_pi, z_pi, hadamard, cphase, iswap, cnot, custom };

inline std::string_view to_string(GateLabel g) {
  switch (g) {
    case GateLabel::x_pi: return "X_PI";
    case GateLabel::y_pi: return "Y_PI";
    case GateLabel::z_pi: return "Z_PI";
    case GateLabel::hadamard: return "HADAMARD";
    case GateLabel::cphase: return "CPHASE";
    case GateLabel::iswap: return "ISWAP";
    case GateLabel::cnot: return "CNOT";
    case GateLabel::custom: return "CUSTOM";
  }
  return "CUSTOM";
}

/// Standard gate matrices, without any global phase.
namespace canonical {

inline ComplexMatrix2 x_pi() { return pauli_x(); }
inline ComplexMatrix2 y_pi() { return pauli_y(); }
inline ComplexMatrix2 z_pi() { return pauli_z(); }

inline ComplexMatrix2 hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  return {{r, r}, {r, -r}};
}

inline ComplexMatrix4 cphase() { return ComplexMatrix4::diagonal({1.0, 1.0, 1.0, -1.0}); }

inline ComplexMatrix4 iswap() {
  return {{1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, -kI, 0.0}, {0.0, -kI, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}};
}

inline ComplexMatrix4 cnot() {
  return {{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}};
}

}  // namespace canonical

/// Gate matrices as produced by the trap drive, global phases included.
namespace golden {

/// e^{-i pi/2} X_pi
inline ComplexMatrix2 x_pi_pulse() { return {{0.0, -kI}, {-kI, 0.0}}; }

/// e^{-i pi/2} Y_pi
inline ComplexMatrix2 y_pi_pulse() { return std::exp(-kI * (std::numbers::pi / 2)) * pauli_y(); }

/// e^{i pi/2} Z_pi
inline ComplexMatrix2 z_pi_pulse() { return {{kI, 0.0}, {0.0, -kI}}; }

/// e^{-i pi/2} H
inline ComplexMatrix2 hadamard_pulse() {
  const Complex c = -kI / std::sqrt(2.0);
  return {{c, c}, {c, -c}};
}

/// e^{i pi/4} CPHASE
inline ComplexMatrix4 cphase_coupled() {
  return std::exp(kI * (std::numbers::pi / 4)) * canonical::cphase();
}

inline ComplexMatrix4 iswap_coupled() { return canonical::iswap(); }

/// -CNOT with a pi/2 phase on the target: -[[1,0,0,0],[0,1,0,0],[0,0,0,i],[0,0,i,0]]
inline ComplexMatrix4 cnot_pulsed() {
  return -ComplexMatrix4{
      {1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, kI}, {0.0, 0.0, kI, 0.0}};
}

}  // namespace golden

inline ComplexMatrix2 canonical_gate2(GateLabel g) {
  switch (g) {
    case GateLabel::x_pi: return canonical::x_pi();
    case GateLabel::y_pi: return canonical::y_pi();
    case GateLabel::z_pi: return canonical::z_pi();
    case GateLabel::hadamard: return canonical::hadamard();
    default: throw std::invalid_argument("canonical_gate2: not a single-qubit gate label");
  }
}

inline ComplexMatrix4 canonical_gate4(GateLabel g) {
  switch (g) {
    case GateLabel::cphase: return canonical::cphase();
    case GateLabel::iswap: return canonical::iswap();
    case GateLabel::cnot: return canonical::cnot();
    default: throw std::invalid_argument("canonical_gate4: not a two-qubit gate label");
  }
}

/// Closed-form exp(-i |P| tau sigma.n) with n = (sin phi cos theta,
/// sin phi sin theta, cos phi).
inline ComplexMatrix2 pulse_unitary(double p_norm, double theta, double phi, double tau) {
  if (p_norm < 0.0 || tau < 0.0) {
    throw std::invalid_argument("pulse_unitary: p_norm and tau must be non-negative");
  }
  const double angle = p_norm * tau;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {{c - kI * (std::cos(phi) * s), -kI * std::exp(-kI * theta) * (std::sin(phi) * s)},
          {-kI * std::exp(kI * theta) * (std::sin(phi) * s), c + kI * (std::cos(phi) * s)}};
}

inline ComplexMatrix2 pulse_unitary(const PulseParams &p) {
  return pulse_unitary(p.norm(), p.theta, p.phi(), p.tau);
}

/// Ising working point evolution: e^{iJt} diag(1, 1, 1, e^{-4iJt}).
inline ComplexMatrix4 cphase_unitary(double j_tau) {
  const Complex g = std::exp(kI * j_tau);
  return g * ComplexMatrix4::diagonal({1.0, 1.0, 1.0, std::exp(-4.0 * kI * j_tau)});
}

/// XY working point evolution: rotation cos(2Jt), -i sin(2Jt) on the
/// {|01>, |10>} block, identity on |00> and |11>.
inline ComplexMatrix4 iswap_unitary(double j_tau) {
  const double c = std::cos(2.0 * j_tau);
  const Complex s = -kI * std::sin(2.0 * j_tau);
  return {{1.0, 0.0, 0.0, 0.0}, {0.0, c, s, 0.0}, {0.0, s, c, 0.0}, {0.0, 0.0, 0.0, 1.0}};
}

/// (1 (x) H) CPHASE (1 (x) H)
inline ComplexMatrix4 cnot_composed() {
  const ComplexMatrix4 local = kron(identity2(), canonical::hadamard());
  return local * canonical::cphase() * local;
}

/// Block-diagonal diag(U1, U2) with U1 = pulse at |P|tau = pi (equal to -1
/// for any axis) and U2 = pulse at |P|tau = pi/2, theta = 0, axis angle phi2.
inline ComplexMatrix4 cnot_via_pulses(double phi2) {
  const double pi = std::numbers::pi;
  const ComplexMatrix2 u1 = pulse_unitary(1.0, 0.0, pi / 2, pi);
  const ComplexMatrix2 u2 = pulse_unitary(1.0, 0.0, phi2, pi / 2);
  ComplexMatrix4 r;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      r(i, j) = u1(i, j);
      r(i + 2, j + 2) = u2(i, j);
    }
  }
  return r;
}

template <std::size_t N>
PureState<N> apply(const Matrix<N> &u, const PureState<N> &psi) {
  if (!is_unitary(u, 1e-10)) throw std::invalid_argument("apply: operator is not unitary");
  return PureState<N>::normalized(u * psi.amplitudes());
}

/// True iff a = c b for some |c| = 1, within Frobenius tolerance tol. The
/// phase c is taken from the largest-modulus entry of b.
template <std::size_t N>
bool equal_up_to_global_phase(const Matrix<N> &a, const Matrix<N> &b, double tol) {
  std::size_t k = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < N * N; ++i) {
    const double m = std::abs(b.entries()[i]);
    if (m > best) {
      best = m;
      k = i;
    }
  }
  if (best == 0.0) return frobenius_norm(a) < tol;
  const Complex ratio = a.entries()[k] / b.entries()[k];
  const double mag = std::abs(ratio);
  if (mag == 0.0) return frobenius_norm(a) < tol;
  return frobenius_norm(a - (ratio / mag) * b) < tol;
}

/// Largest entrywise deviation after aligning b's global phase to a.
template <std::size_t N>
double phase_aligned_deviation(const Matrix<N> &a, const Matrix<N> &b) {
  Complex overlap{};
  for (std::size_t i = 0; i < N * N; ++i) overlap += std::conj(b.entries()[i]) * a.entries()[i];
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0};
  return max_abs_diff(a, phase * b);
}

}  // namespace polariton
