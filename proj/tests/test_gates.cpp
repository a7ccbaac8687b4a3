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


#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "oracles.hpp"
#include "polariton/gates.hpp"
#include "polariton/hamiltonians.hpp"

using namespace polariton;
using Catch::Matchers::WithinAbs;

namespace {

const double kPi = std::numbers::pi;
const double kR = 1.0 / std::sqrt(2.0);

template <std::size_t N>
double dist(const Vector<N> &a, const Vector<N> &b) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("PureState", "[gates]") {
  CHECK_THROWS_AS(QubitState({1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(QubitState::normalized({0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(QubitState::basis(2), std::out_of_range);
  const auto s = QubitState::normalized({3.0, 4.0 * kI});
  CHECK_THAT(norm(s.amplitudes()), WithinAbs(1.0, 1e-15));

  CHECK(dist(clockwise_state().amplitudes(), Vector<2>{kR, kR}) < 1e-15);
  CHECK(dist(anticlockwise_state().amplitudes(), Vector<2>{kR, -kR}) < 1e-15);
  CHECK(dist(product_state(QubitState::basis(1), QubitState::basis(0)).amplitudes(),
             TwoQubitState::basis(2).amplitudes()) == 0.0);

  CHECK(qubit_state_from_label("cw").has_value());
  CHECK_FALSE(qubit_state_from_label("plus").has_value());
}

TEST_CASE("pulse_unitary reproduces the phased Pauli and Hadamard gates", "[gates]") {
  const double t = kPi / 2;  // |P| tau = pi/2 with |P| = 1
  CHECK(max_abs_diff(pulse_unitary(1.0, 0.0, kPi / 2, t), golden::x_pi_pulse()) < 1e-15);
  CHECK(max_abs_diff(pulse_unitary(1.0, kPi / 2, kPi / 2, t), golden::y_pi_pulse()) < 1e-15);
  for (double theta : {0.0, 0.4, 2.0, -1.0}) {
    CHECK(max_abs_diff(pulse_unitary(1.0, theta, kPi, t), golden::z_pi_pulse()) < 1e-15);
  }
  CHECK(max_abs_diff(pulse_unitary(1.0, 0.0, kPi / 4, t), golden::hadamard_pulse()) < 1e-15);

  CHECK(max_abs_diff(golden::x_pi_pulse(), -kI * canonical::x_pi()) < 1e-15);
  CHECK(max_abs_diff(golden::z_pi_pulse(), kI * canonical::z_pi()) < 1e-15);
  CHECK(max_abs_diff(golden::hadamard_pulse(), -kI * canonical::hadamard()) < 1e-15);

  CHECK_THROWS_AS(pulse_unitary(-1.0, 0.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(pulse_unitary(1.0, 0.0, 0.0, -1.0), std::invalid_argument);
}

TEST_CASE("pulse_unitary matches the exponential of the pulse Hamiltonian", "[gates]") {
  testing::Random rng(43);
  for (int n = 0; n < 200; ++n) {
    const auto p = PulseParams::from_axis(rng.uniform(0.1, 3.0), rng.uniform(-kPi, kPi),
                                          rng.uniform(0.0, kPi), rng.uniform(0.0, 3.0));
    const auto u = pulse_unitary(p);
    CHECK(is_unitary(u, 1e-12));
    CHECK(max_abs_diff(u, testing::reference_expm_scaled(single_qubit_h(p.trap()), p.tau)) < 1e-10);
    CHECK(max_abs_diff(u, expm_hermitian_scaled(single_qubit_h(p.trap()), p.tau)) < 1e-10);
  }
}

TEST_CASE("cphase_unitary", "[gates]") {
  CHECK(max_abs_diff(cphase_unitary(kPi / 4), std::exp(kI * (kPi / 4)) * canonical::cphase()) < 1e-15);
  CHECK(max_abs_diff(cphase_unitary(kPi / 4), golden::cphase_coupled()) < 1e-15);
  CHECK(max_abs_diff(cphase_unitary(0.0), ComplexMatrix4::identity()) < 1e-15);
  const auto expected =
      std::exp(kI * (kPi / 8)) * ComplexMatrix4::diagonal({1.0, 1.0, 1.0, std::exp(-kI * (kPi / 2))});
  CHECK(max_abs_diff(cphase_unitary(kPi / 8), expected) < 1e-15);

  for (double j : {0.5, 1.0, 3.0}) {
    const double tau = kPi / (4 * j);
    const auto u = expm_hermitian_scaled(cphase_hamiltonian(j), tau);
    CHECK(equal_up_to_global_phase(u, cphase_unitary(j * tau), 1e-10));
    CHECK(equal_up_to_global_phase(testing::reference_expm_scaled(cphase_hamiltonian(j), tau),
                                   canonical::cphase(), 1e-10));
  }
}

TEST_CASE("iswap_unitary", "[gates]") {
  const auto out = apply(iswap_unitary(kPi / 4), TwoQubitState::basis(1));
  CHECK(dist(out.amplitudes(), Vector<4>{0.0, 0.0, -kI, 0.0}) < 1e-15);
  CHECK(max_abs_diff(iswap_unitary(0.0), ComplexMatrix4::identity()) < 1e-15);
  CHECK(max_abs_diff(iswap_unitary(kPi / 2), ComplexMatrix4::diagonal({1.0, -1.0, -1.0, 1.0})) < 1e-15);

  for (double j : {0.5, 1.0, 3.0}) {
    const double tau = kPi / (4 * j);
    CHECK(max_abs_diff(expm_hermitian_scaled(iswap_hamiltonian(j), tau), iswap_unitary(j * tau)) < 1e-10);
  }
}

TEST_CASE("cnot_composed", "[gates]") {
  const auto cnot = cnot_composed();
  CHECK(max_abs_diff(cnot, canonical::cnot()) < 1e-12);
  CHECK(equal_up_to_global_phase(cnot, canonical::cnot(), 1e-12));

  CHECK(dist(apply(cnot, TwoQubitState::basis(2)).amplitudes(), TwoQubitState::basis(3).amplitudes()) < 1e-15);
  CHECK(dist(apply(cnot, TwoQubitState::basis(0)).amplitudes(), TwoQubitState::basis(0).amplitudes()) < 1e-15);
  const auto bell = apply(cnot, product_state(clockwise_state(), QubitState::basis(0)));
  CHECK(dist(bell.amplitudes(), Vector<4>{kR, 0.0, 0.0, kR}) < 1e-15);
}

TEST_CASE("cnot_via_pulses", "[gates]") {
  CHECK(max_abs_diff(cnot_via_pulses(kPi / 2), golden::cnot_pulsed()) < 1e-15);
  CHECK(equal_up_to_global_phase(cnot_via_pulses(kPi / 2), golden::cnot_pulsed(), 1e-12));
  CHECK(max_abs_diff(cnot_via_pulses(0.0), ComplexMatrix4::diagonal({-1.0, -1.0, -kI, kI})) < 1e-15);
  for (double phi : {0.0, 0.3, 1.0, kPi / 2, 2.5}) CHECK(is_unitary(cnot_via_pulses(phi), 1e-12));

  SECTION("entangles after CPHASE") {
    const auto psi0 = product_state(clockwise_state(), QubitState::basis(1));
    const auto after_cphase = apply(golden::cphase_coupled(), psi0);
    // |cw>|1> picks up the sign on |11>, giving e^{i pi/4} |acw>|1>.
    const Complex g = std::exp(kI * (kPi / 4));
    CHECK(dist(after_cphase.amplitudes(), Vector<4>{0.0, g * kR, 0.0, -g * kR}) < 1e-15);

    const auto out = apply(cnot_via_pulses(kPi / 2), after_cphase);
    const Complex pre = -g * kR;
    CHECK(dist(out.amplitudes(), Vector<4>{0.0, pre, -kI * pre, 0.0}) < 1e-12);
  }
}

TEST_CASE("apply", "[gates]") {
  SECTION("Hadamard pulse on the basis states") {
    const auto u = golden::hadamard_pulse();
    const auto cw = apply(u, QubitState::basis(0));
    CHECK(dist(cw.amplitudes(), Vector<2>{-kI * kR, -kI * kR}) < 1e-15);
    const auto acw = apply(u, QubitState::basis(1));
    CHECK_THAT(std::abs(inner(anticlockwise_state().amplitudes(), acw.amplitudes())), WithinAbs(1.0, 1e-15));
  }
  SECTION("identity and norm preservation") {
    testing::Random rng(47);
    for (int n = 0; n < 100; ++n) {
      const auto psi = TwoQubitState::normalized(rng.state<4>());
      CHECK(dist(apply(ComplexMatrix4::identity(), psi).amplitudes(), psi.amplitudes()) < 1e-15);
      const auto u = rng.unitary<4>();
      const auto naked = u * psi.amplitudes();
      CHECK_THAT(norm(naked), WithinAbs(1.0, 1e-12));
    }
  }
  SECTION("non-unitary operator is rejected") {
    CHECK_THROWS_AS(apply(ComplexMatrix2::diagonal({1.0, 0.5}), QubitState::basis(0)), std::invalid_argument);
  }
}

TEST_CASE("equal_up_to_global_phase", "[gates]") {
  CHECK(equal_up_to_global_phase(golden::x_pi_pulse(), canonical::x_pi(), 1e-12));
  CHECK_FALSE(equal_up_to_global_phase(canonical::x_pi(), canonical::z_pi(), 1e-12));
  CHECK_FALSE(equal_up_to_global_phase(2.0 * canonical::x_pi(), canonical::x_pi(), 1e-12));
  CHECK(equal_up_to_global_phase(ComplexMatrix2{}, ComplexMatrix2{}, 1e-12));
}

TEST_CASE("Pauli pulses anticommute and square to identity", "[gates]") {
  const std::array<ComplexMatrix2, 3> p{golden::x_pi_pulse(), golden::y_pi_pulse(), golden::z_pi_pulse()};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(equal_up_to_global_phase(p[i] * p[i], identity2(), 1e-12));
    for (std::size_t j = i + 1; j < 3; ++j) CHECK(frobenius_norm(p[i] * p[j] + p[j] * p[i]) < 1e-12);
  }
}

TEST_CASE("gate labels", "[gates]") {
  CHECK(to_string(GateLabel::hadamard) == "HADAMARD");
  CHECK(equal_up_to_global_phase(canonical_gate2(GateLabel::hadamard), golden::hadamard_pulse(), 1e-12));
  CHECK(equal_up_to_global_phase(canonical_gate4(GateLabel::iswap), golden::iswap_coupled(), 1e-12));
  CHECK(equal_up_to_global_phase(canonical_gate4(GateLabel::cnot), golden::cnot_pulsed(), 1e-12) == false);
  CHECK_THROWS(canonical_gate2(GateLabel::cnot));
}
