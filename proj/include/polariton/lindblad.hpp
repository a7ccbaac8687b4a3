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

// Density-operator evolution under
//
//   d rho / dt = -i [H, rho] + gamma_r D[sigma_-] rho + gamma_d D[sigma_z] rho,
//   D[A] rho   = A rho A^dagger - 1/2 {A^dagger A, rho},
//
// integrated with fixed-step RK4. superoperator_oracle() solves the same
// generator by exponentiating its Liouville-space matrix and is kept as an
// independent reference for the integrator.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polariton/gates.hpp"
#include "polariton/hamiltonians.hpp"
#include "polariton/linalg.hpp"

namespace polariton {

/// A trajectory sample broke trace, Hermiticity or positivity.
class InvariantViolation : public std::runtime_error {
public:
  InvariantViolation(const std::string &what, std::size_t step)
      : std::runtime_error(what + " at step " + std::to_string(step)), step_(step) {}

  std::size_t step() const { return step_; }

private:
  std::size_t step_;
};

struct DensityTolerances {
  double hermitian = 1e-10;
  double trace = 1e-10;
  double min_eigenvalue = -1e-8;
};

/// Name of the first violated density-operator invariant, or empty.
template <std::size_t N>
std::string density_violation(const Matrix<N> &m, const DensityTolerances &tol) {
  if (!is_finite(m)) return "non-finite entries";
  if (frobenius_norm(m - adjoint(m)) > tol.hermitian) return "Hermiticity";
  if (std::abs(trace(m) - 1.0) > tol.trace) return "unit trace";
  if (hermitian_eig(m).values.front() < tol.min_eigenvalue) return "positivity";
  return {};
}

template <std::size_t N>
class DensityOperator {
public:
  explicit DensityOperator(const Matrix<N> &m, const DensityTolerances &tol = {}) : m_(m) {
    if (auto bad = density_violation(m_, tol); !bad.empty()) {
      throw std::invalid_argument("DensityOperator: violates " + bad);
    }
  }

  explicit DensityOperator(const PureState<N> &psi) : m_(psi.projector()) {}

  static DensityOperator maximally_mixed() {
    return DensityOperator(Matrix<N>::identity() * (1.0 / static_cast<double>(N)));
  }

  const Matrix<N> &matrix() const { return m_; }
  const Complex &operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
  Matrix<N> m_;
};

struct DecoherenceRates {
  double gamma_r = 0.0;  // spontaneous relaxation
  double gamma_d = 0.0;  // pure dephasing

  void validate() const {
    if (!std::isfinite(gamma_r) || !std::isfinite(gamma_d) || gamma_r < 0.0 || gamma_d < 0.0) {
      throw std::invalid_argument("DecoherenceRates: rates must be finite and non-negative");
    }
  }
};

/// unnormalized: sigma_- = sigma_x - i sigma_y = [[0,0],[2,0]], which makes
/// the effective relaxation rate four times gamma_r.
/// conventional: (sigma_x - i sigma_y) / 2 = [[0,0],[1,0]].
enum class LoweringConvention { unnormalized, conventional };

inline constexpr LoweringConvention kDefaultLoweringConvention = LoweringConvention::conventional;

inline std::string_view to_string(LoweringConvention c) {
  return c == LoweringConvention::unnormalized ? "unnormalized" : "conventional";
}

inline ComplexMatrix2 lowering_operator(LoweringConvention c) {
  const ComplexMatrix2 s = pauli_x() - kI * pauli_y();
  return c == LoweringConvention::unnormalized ? s : s * 0.5;
}

/// sigma_x - i sigma_y, without the 1/2.
inline ComplexMatrix2 lowering_operator() { return lowering_operator(LoweringConvention::unnormalized); }

template <std::size_t N>
Matrix<N> dissipator(const Matrix<N> &a, const Matrix<N> &rho) {
  const Matrix<N> ad = adjoint(a);
  const Matrix<N> ada = ad * a;
  return a * rho * ad - 0.5 * (ada * rho + rho * ada);
}

enum class RateTag { relaxation, dephasing };

template <std::size_t N>
struct CollapseOperator {
  Matrix<N> op;
  RateTag tag;
};

inline std::vector<CollapseOperator<2>> single_qubit_collapse_ops(
    LoweringConvention c = kDefaultLoweringConvention) {
  return {{lowering_operator(c), RateTag::relaxation}, {pauli_z(), RateTag::dephasing}};
}

/// Per-trap channels with equal rates on both traps.
inline std::vector<CollapseOperator<4>> two_qubit_collapse_ops(
    LoweringConvention c = kDefaultLoweringConvention) {
  const auto sm = lowering_operator(c);
  const auto id = identity2();
  return {{kron(sm, id), RateTag::relaxation},
          {kron(id, sm), RateTag::relaxation},
          {kron(pauli_z(), id), RateTag::dephasing},
          {kron(id, pauli_z()), RateTag::dephasing}};
}

template <std::size_t N>
std::vector<CollapseOperator<N>> collapse_ops(LoweringConvention c) {
  static_assert(N == 2 || N == 4, "collapse_ops: one or two qubits only");
  if constexpr (N == 2) {
    return single_qubit_collapse_ops(c);
  } else {
    return two_qubit_collapse_ops(c);
  }
}

inline double rate_for(RateTag tag, const DecoherenceRates &r) {
  return tag == RateTag::relaxation ? r.gamma_r : r.gamma_d;
}

/// Right-hand side of the master equation with the operators pre-scaled.
///
/// Uses rhs = -i (K rho - rho K^dagger) + sum_k g_k A_k rho A_k^dagger with
/// K = H - (i/2) sum_k g_k A_k^dagger A_k, which is the same generator as
/// -i[H, rho] + sum_k g_k D[A_k] rho.
template <std::size_t N>
class LindbladGenerator {
public:
  LindbladGenerator(const Matrix<N> &h, const DecoherenceRates &rates,
                    const std::vector<CollapseOperator<N>> &ops)
      : k_(h) {
    for (const auto &c : ops) {
      const double g = rate_for(c.tag, rates);
      if (g == 0.0) continue;
      const Matrix<N> ad = adjoint(c.op);
      k_ -= (0.5 * g) * kI * (ad * c.op);
      jumps_.push_back(c.op * std::sqrt(g));
    }
  }

  // Products are arranged with the (usually sparse) operator on the left,
  // where Matrix::operator* skips zero entries: B A^dagger = (A B^dagger)^dagger.
  Matrix<N> operator()(const Matrix<N> &rho) const {
    const Matrix<N> rho_dag = adjoint(rho);
    Matrix<N> out = -kI * (k_ * rho - adjoint(k_ * rho_dag));
    for (const auto &j : jumps_) out += adjoint(j * adjoint(j * rho));
    return out;
  }

private:
  Matrix<N> k_;
  std::vector<Matrix<N>> jumps_;
};

template <std::size_t N>
struct Trajectory {
  std::vector<double> times;
  std::vector<DensityOperator<N>> states;
  std::string scenario;

  const DensityOperator<N> &final_state() const { return states.back(); }
  std::size_t size() const { return times.size(); }
};

struct EvolveOptions {
  LoweringConvention lowering = kDefaultLoweringConvention;
  std::string scenario;
};

/// Fixed-step RK4 from t = 0 to t_final. The step count is
/// ceil(t_final / dt); the step is then shrunk to land exactly on t_final.
/// Samples are taken at t = 0, every sample_every steps and at t_final, and
/// each is checked for unit trace and Hermiticity (1e-9) and positivity
/// (min eigenvalue >= -1e-8).
template <std::size_t N>
Trajectory<N> evolve(const Matrix<N> &h, const DensityOperator<N> &rho0,
                     const DecoherenceRates &rates, double t_final, double dt,
                     std::size_t sample_every, const EvolveOptions &opts = {}) {
  if (!is_hermitian(h, 1e-10)) throw std::invalid_argument("evolve: Hamiltonian is not Hermitian");
  rates.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("evolve: dt must be > 0");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw std::invalid_argument("evolve: t_final must be >= 0");
  }
  if (sample_every == 0) throw std::invalid_argument("evolve: sample_every must be >= 1");

  const LindbladGenerator<N> rhs(h, rates, collapse_ops<N>(opts.lowering));
  const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
  const double step = steps > 0 ? t_final / static_cast<double>(steps) : 0.0;

  Trajectory<N> traj;
  traj.scenario = opts.scenario;
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);

  const DensityTolerances sample_tol{1e-9, 1e-9, -1e-8};
  Matrix<N> rho = rho0.matrix();
  for (std::size_t n = 1; n <= steps; ++n) {
    const Matrix<N> k1 = rhs(rho);
    const Matrix<N> k2 = rhs(rho + (0.5 * step) * k1);
    const Matrix<N> k3 = rhs(rho + (0.5 * step) * k2);
    const Matrix<N> k4 = rhs(rho + step * k3);
    rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    if (n % sample_every == 0 || n == steps) {
      if (auto bad = density_violation(rho, sample_tol); !bad.empty()) {
        throw InvariantViolation("evolve: density operator lost " + bad, n);
      }
      traj.times.push_back(n == steps ? t_final : static_cast<double>(n) * step);
      traj.states.emplace_back(rho, sample_tol);
    }
  }
  return traj;
}

/// Column-stacking vectorization: vec(rho)[i + N j] = rho(i, j).
template <std::size_t N>
Vector<N * N> vectorize(const Matrix<N> &m) {
  Vector<N * N> v{};
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t i = 0; i < N; ++i) v[i + N * j] = m(i, j);
  }
  return v;
}

template <std::size_t N>
Matrix<N> devectorize(const Vector<N * N> &v) {
  Matrix<N> m;
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t i = 0; i < N; ++i) m(i, j) = v[i + N * j];
  }
  return m;
}

/// Liouville-space generator acting on column-stacked vec(rho), using
/// vec(A rho B) = (B^T (x) A) vec(rho).
template <std::size_t N>
Matrix<N * N> liouvillian(const Matrix<N> &h, const DecoherenceRates &rates,
                          const std::vector<CollapseOperator<N>> &ops) {
  const Matrix<N> id = Matrix<N>::identity();
  Matrix<N * N> l = -kI * (kron(id, h) - kron(transpose(h), id));
  for (const auto &c : ops) {
    const double g = rate_for(c.tag, rates);
    if (g == 0.0) continue;
    const Matrix<N> ada = adjoint(c.op) * c.op;
    l += g * (kron(conjugate(c.op), c.op) - 0.5 * kron(id, ada) - 0.5 * kron(transpose(ada), id));
  }
  return l;
}

/// rho(t) = devec(exp(L t) vec(rho0)).
template <std::size_t N>
DensityOperator<N> superoperator_oracle(const Matrix<N> &h, const DecoherenceRates &rates,
                                        double t, const DensityOperator<N> &rho0,
                                        LoweringConvention lowering = kDefaultLoweringConvention) {
  if (!is_hermitian(h, 1e-10)) {
    throw std::invalid_argument("superoperator_oracle: Hamiltonian is not Hermitian");
  }
  rates.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("superoperator_oracle: t must be >= 0");
  }
  const Matrix<N * N> prop = expm(liouvillian(h, rates, collapse_ops<N>(lowering)) * t);
  const Matrix<N> rho = devectorize<N>(prop * vectorize(rho0.matrix()));
  const DensityTolerances tol{1e-9, 1e-9, -1e-8};
  if (auto bad = density_violation(rho, tol); !bad.empty()) {
    throw InvariantViolation("superoperator_oracle: density operator lost " + bad, 0);
  }
  return DensityOperator<N>(rho, tol);
}

}  // namespace polariton
