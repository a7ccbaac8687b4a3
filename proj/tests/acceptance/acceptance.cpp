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


// Acceptance suite. Prints one PASS/FAIL line per criterion, with the
// sub-checks that feed it, and exits non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polariton/polariton.hpp"

using namespace polariton;

namespace {

const double kPi = std::numbers::pi;

class Clock {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Criterion {
  std::string id;
  std::string title;
  std::vector<std::pair<bool, std::string>> checks;
  std::vector<std::string> notes;

  void check(bool ok, const std::string &what) { checks.emplace_back(ok, what); }
  void note(const std::string &what) { notes.push_back(what); }

  bool passed() const {
    for (const auto &c : checks)
      if (!c.first) return false;
    return true;
  }

  void print() const {
    std::printf("[%s] %s %s\n", passed() ? "PASS" : "FAIL", id.c_str(), title.c_str());
    for (const auto &[ok, what] : checks) std::printf("    %s %s\n", ok ? "ok  " : "FAIL", what.c_str());
    for (const auto &n : notes) std::printf("    info %s\n", n.c_str());
  }
};

std::string fmt(const char *format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

bool within(double x, double target, double tol) { return std::abs(x - target) <= tol; }

template <std::size_t N>
double vec_dev(const Vector<N> &a, const Vector<N> &b) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// --- 1 ----------------------------------------------------------------------

Criterion gate_algebra() {
  Criterion c{"C1", "gate algebra", {}, {}};
  constexpr double kTol = 1e-12;
  constexpr double kExact = 1e-15;
  constexpr double kBudget = 1.0;
  const Clock clock;

  struct Row {
    const char *name;
    ComplexMatrix2 built;
    ComplexMatrix2 golden;
  };
  const double t = kPi / 2;
  const Row rows[] = {
      {"X_pi", pulse_unitary(1.0, 0.0, kPi / 2, t), golden::x_pi_pulse()},
      {"Y_pi", pulse_unitary(1.0, kPi / 2, kPi / 2, t), golden::y_pi_pulse()},
      {"Z_pi", pulse_unitary(1.0, 0.3, kPi, t), golden::z_pi_pulse()},
      {"H", pulse_unitary(1.0, 0.0, kPi / 4, t), golden::hadamard_pulse()},
  };
  for (const auto &r : rows) {
    const double d = phase_aligned_deviation(r.built, r.golden);
    c.check(d < kTol, fmt("%s pulse vs stored matrix: %.2e < %.0e", r.name, d, kTol));
  }
  const double cnot = phase_aligned_deviation(cnot_composed(), canonical::cnot());
  c.check(cnot < kTol, fmt("(1 x H) CPHASE (1 x H) vs CNOT: %.2e < %.0e", cnot, kTol));

  const auto out = apply(iswap_unitary(kPi / 4), TwoQubitState::basis(1));
  const double sw = vec_dev(out.amplitudes(), Vector<4>{0.0, 0.0, -kI, 0.0});
  c.check(sw <= kExact, fmt("iSWAP |01> -> -i|10>: %.2e <= %.0e", sw, kExact));

  const double s = clock.seconds();
  c.check(s < kBudget, fmt("runtime %.4f s < %.0f s", s, kBudget));
  return c;
}

// --- 2 ----------------------------------------------------------------------

double hadamard_norm(const char *label, DecoherenceRates rates, LoweringConvention conv) {
  auto cfg = default_config(Scenario::hadamard_bloch);
  cfg.initial_state.label = label;
  cfg.rates = rates;
  cfg.lowering = conv;
  return run_hadamard_bloch(cfg).final_sample().u.norm();
}

Criterion bloch_norms() {
  Criterion c{"C2", "Hadamard Bloch norms under decoherence", {}, {}};
  constexpr double kTol = 0.02;
  constexpr double kPureTol = 1e-6;
  constexpr double kBudget = 5.0;
  const Clock clock;

  bool any_lands = false;
  for (auto conv : {LoweringConvention::unnormalized, LoweringConvention::conventional}) {
    const double nd = hadamard_norm("0", {0.0, 0.2}, conv);
    const double nr = hadamard_norm("1", {0.2, 0.0}, conv);
    const bool lands = within(nd, 0.70, kTol) && within(nr, 0.96, kTol);
    any_lands = any_lands || lands;
    c.note(fmt("%s lowering operator: gamma_d=0.2 norm %.4f, gamma_r=0.2 norm %.4f%s",
               std::string(to_string(conv)).c_str(), nd, nr, lands ? " (in tolerance)" : ""));
  }
  c.check(any_lands, "at least one lowering convention lands both targets");

  const auto def = kDefaultLoweringConvention;
  const double nd = hadamard_norm("0", {0.0, 0.2}, def);
  const double nr = hadamard_norm("1", {0.2, 0.0}, def);
  c.check(within(nd, 0.70, kTol), fmt("default: gamma_d=0.2 from |0>: %.4f = 0.70 +/- %.2f", nd, kTol));
  c.check(within(nr, 0.96, kTol), fmt("default: gamma_r=0.2 from |1>: %.4f = 0.96 +/- %.2f", nr, kTol));
  for (const char *label : {"0", "1"}) {
    const double n0 = hadamard_norm(label, {}, def);
    c.check(within(n0, 1.0, kPureTol), fmt("zero rates from |%s>: %.9f = 1 +/- %.0e", label, n0, kPureTol));
  }
  const double s = clock.seconds();
  c.check(s < kBudget, fmt("runtime %.3f s < %.0f s", s, kBudget));
  return c;
}

// --- 3 ----------------------------------------------------------------------

Criterion cphase_decoherence() {
  Criterion c{"C3", "CPHASE fidelity, concurrence and map", {}, {}};
  constexpr double kTol = 0.03;
  constexpr double kPureTol = 1e-6;
  constexpr double kBudget = 30.0;

  auto cfg = default_config(Scenario::cphase_sweep);
  cfg.sweep = SweepRange{0.0, 0.4, 2, Spacing::linear};
  cfg.channel = Channel::dephasing;
  const auto d = run_cphase_sweep(cfg);
  cfg.channel = Channel::relaxation;
  const auto r = run_cphase_sweep(cfg);

  const auto &d0 = d.points.front();
  const auto &d4 = d.points.back();
  const auto &r4 = r.points.back();
  c.check(within(d0.concurrence, 1.0, kPureTol), fmt("gamma=0: C %.9f = 1 +/- %.0e", d0.concurrence, kPureTol));
  c.check(within(d4.concurrence, 0.16, kTol), fmt("gamma_d=0.4: C %.4f = 0.16 +/- %.2f", d4.concurrence, kTol));
  c.check(within(d4.fidelity, 0.76, kTol), fmt("gamma_d=0.4: F %.4f = 0.76 +/- %.2f", d4.fidelity, kTol));
  c.check(within(r4.fidelity, 0.90, kTol), fmt("gamma_r=0.4: F %.4f = 0.90 +/- %.2f", r4.fidelity, kTol));
  c.check(within(r4.concurrence, 0.66, kTol), fmt("gamma_r=0.4: C %.4f = 0.66 +/- %.2f", r4.concurrence, kTol));

  const auto mcfg = default_config(Scenario::concurrence_map);
  const Clock clock;
  const auto m = run_concurrence_map(mcfg);
  const double s = clock.seconds();

  constexpr double kEdge = 1e-12;
  double worst = 1.0;
  double worst_d = 0.0;
  double worst_r = 0.0;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < m.gamma_d.size(); ++i) {
    for (std::size_t j = 0; j < m.gamma_r.size(); ++j) {
      if (m.gamma_d[i] > 0.03 + kEdge || m.gamma_r[j] > 0.1 + kEdge) continue;
      ++cells;
      if (m.at(i, j) < worst) {
        worst = m.at(i, j);
        worst_d = m.gamma_d[i];
        worst_r = m.gamma_r[j];
      }
    }
  }
  c.check(worst >= 0.90, fmt("map: min C over gamma_d<=0.03, gamma_r<=0.1 (%zu cells) is %.4f at (%.2f, %.2f); need >= 0.90",
                             cells, worst, worst_d, worst_r));
  c.check(s < kBudget, fmt("41x41 map runtime %.2f s < %.0f s", s, kBudget));

  auto index_of = [](const std::vector<double> &axis, double v) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < axis.size(); ++i)
      if (std::abs(axis[i] - v) < std::abs(axis[k] - v)) k = i;
    return k;
  };
  const auto i3 = index_of(m.gamma_d, 0.03);
  const auto j1 = index_of(m.gamma_r, 0.1);
  c.note(fmt("map axis values: C(gamma_d=0.03, gamma_r=0) = %.4f, C(gamma_d=0, gamma_r=0.1) = %.4f",
             m.at(i3, 0), m.at(0, j1)));
  return c;
}

// --- 4 ----------------------------------------------------------------------

Criterion single_qubit_sweeps() {
  Criterion c{"C4", "single-qubit fidelity and entropy sweeps", {}, {}};
  constexpr std::size_t kPoints = 21;
  auto cfg = default_config(Scenario::single_qubit_sweep);
  cfg.sweep = SweepRange{0.0, 0.4, kPoints, Spacing::linear};

  double s_end[2] = {0.0, 0.0};
  for (auto ch : {Channel::dephasing, Channel::relaxation}) {
    cfg.channel = ch;
    const auto r = run_single_qubit_sweep(cfg);
    bool f_mono = true;
    bool s_mono = true;
    for (std::size_t i = 1; i < r.points.size(); ++i) {
      f_mono = f_mono && r.points[i].fidelity <= r.points[i - 1].fidelity;
      s_mono = s_mono && r.points[i].entropy >= r.points[i - 1].entropy;
    }
    const char *name = ch == Channel::dephasing ? "gamma_d" : "gamma_r";
    c.check(f_mono, fmt("%s: fidelity non-increasing over %zu points", name, r.points.size()));
    c.check(s_mono, fmt("%s: entropy non-decreasing over %zu points", name, r.points.size()));
    s_end[ch == Channel::dephasing ? 0 : 1] = r.points.back().entropy;
    c.note(fmt("%s=0.4: F %.4f, S %.4f", name, r.points.back().fidelity, r.points.back().entropy));
  }
  c.check(s_end[0] > 0.9, fmt("S(gamma_d=0.4) = %.4f > 0.9", s_end[0]));
  c.check(s_end[1] < s_end[0], fmt("S(gamma_r=0.4) = %.4f < S(gamma_d=0.4) = %.4f", s_end[1], s_end[0]));
  return c;
}

// --- 5 ----------------------------------------------------------------------

template <std::size_t N>
void oracle_equivalence(Criterion &c, testing::Random &rng) {
  constexpr int kInstances = 50;
  constexpr double kTol = 1e-8;
  constexpr double kRatio = 12.0;
  constexpr std::size_t kCoarse = 32;

  double worst = 0.0;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (int n = 0; n < kInstances; ++n) {
    const auto h = rng.hermitian<N>();
    const DecoherenceRates rates{rng.uniform(0.0, 0.4), rng.uniform(0.0, 0.4)};
    const DensityOperator<N> rho0(rng.density<N>());
    const double t = rng.uniform(0.5, 2.0);
    const auto conv = n % 2 == 0 ? LoweringConvention::conventional : LoweringConvention::unnormalized;
    const EvolveOptions opts{conv, "oracle"};

    const auto exact = superoperator_oracle(h, rates, t, rho0, conv).matrix();
    const auto fine = evolve(h, rho0, rates, t, t * 1e-4, 100000, opts).final_state().matrix();
    worst = std::max(worst, frobenius_norm(fine - exact));

    const auto coarse = evolve(h, rho0, rates, t, t / kCoarse, kCoarse, opts).final_state().matrix();
    const auto half = evolve(h, rho0, rates, t, t / (2 * kCoarse), 2 * kCoarse, opts).final_state().matrix();
    min_ratio = std::min(min_ratio, frobenius_norm(coarse - exact) / frobenius_norm(half - exact));
  }
  c.check(worst < kTol, fmt("dim %zu: max |rho_rk4 - rho_oracle|_F over %d instances %.2e < %.0e", N,
                            kInstances, worst, kTol));
  c.check(min_ratio >= kRatio, fmt("dim %zu: min error ratio for dt -> dt/2 (%zu -> %zu steps) %.2f >= %.0f", N,
                                   kCoarse, 2 * kCoarse, min_ratio, kRatio));
}

Criterion oracle_suite() {
  Criterion c{"C5", "RK4 vs superoperator exponential", {}, {}};
  testing::Random rng(20260501);
  oracle_equivalence<2>(c, rng);
  oracle_equivalence<4>(c, rng);
  return c;
}

// --- 6 ----------------------------------------------------------------------

template <std::size_t N>
void trajectory_invariants(testing::Random &rng, int count, double &trace_dev, double &herm_dev,
                           double &min_eig, std::size_t &samples) {
  for (int n = 0; n < count; ++n) {
    const auto h = rng.hermitian<N>(rng.uniform(0.2, 2.0));
    const DecoherenceRates rates{rng.uniform(0.0, 0.4), rng.uniform(0.0, 0.4)};
    // Half the runs start pure, so positivity is probed at the boundary.
    const DensityOperator<N> rho0 = n % 2 == 0 ? DensityOperator<N>(rng.density<N>())
                                               : DensityOperator<N>(PureState<N>::normalized(rng.state<N>()));
    const double t = rng.uniform(0.5, 3.0);
    const auto conv = n % 4 < 2 ? LoweringConvention::conventional : LoweringConvention::unnormalized;
    const auto traj = evolve(h, rho0, rates, t, t / 500, 25, {conv, "invariants"});
    for (const auto &s : traj.states) {
      const auto &m = s.matrix();
      trace_dev = std::max(trace_dev, std::abs(trace(m) - 1.0));
      herm_dev = std::max(herm_dev, frobenius_norm(m - adjoint(m)));
      min_eig = std::min(min_eig, hermitian_eig(detail::hermitian_part(m)).values.front());
      ++samples;
    }
  }
}

Criterion invariant_suite() {
  Criterion c{"C6", "invariant suite", {}, {}};
  testing::Random rng(20260502);
  constexpr double kTraceTol = 1e-9;
  constexpr double kHermTol = 1e-9;
  constexpr double kEigFloor = -1e-8;
  constexpr int kTrajectories = 1000;

  double trace_dev = 0.0;
  double herm_dev = 0.0;
  double min_eig = 1.0;
  std::size_t samples = 0;
  try {
    trajectory_invariants<2>(rng, kTrajectories / 2, trace_dev, herm_dev, min_eig, samples);
    trajectory_invariants<4>(rng, kTrajectories / 2, trace_dev, herm_dev, min_eig, samples);
  } catch (const InvariantViolation &e) {
    c.check(false, std::string("trajectory aborted: ") + e.what());
  }
  c.check(trace_dev < kTraceTol, fmt("%d trajectories, %zu samples: max |Tr rho - 1| %.2e < %.0e", kTrajectories,
                                     samples, trace_dev, kTraceTol));
  c.check(herm_dev < kHermTol, fmt("max |rho - rho^dag|_F %.2e < %.0e", herm_dev, kHermTol));
  c.check(min_eig >= kEigFloor, fmt("min eigenvalue %.2e >= %.0e", min_eig, kEigFloor));

  constexpr int kStates = 200;
  constexpr double kConcTol = 1e-9;
  constexpr double kFidTol = 1e-10;
  double conc_dev = 0.0;
  double fid_dev = 0.0;
  for (int n = 0; n < kStates; ++n) {
    const DensityOperator<4> rho(rng.density<4>());
    const auto u = kron(rng.unitary<2>(), rng.unitary<2>());
    const DensityOperator<4> rotated(detail::hermitian_part(Matrix<4>(u * rho.matrix() * adjoint(u))));
    conc_dev = std::max(conc_dev, std::abs(concurrence(rotated) - concurrence(rho)));

    const DensityOperator<4> a(rng.density<4>());
    const DensityOperator<4> b(rng.density<4>());
    fid_dev = std::max(fid_dev, std::abs(fidelity(a, b) - fidelity(b, a)));
  }
  c.check(conc_dev < kConcTol, fmt("concurrence local-unitary invariance over %d states: %.2e < %.0e", kStates,
                                   conc_dev, kConcTol));
  c.check(fid_dev < kFidTol, fmt("fidelity symmetry over %d pairs: %.2e < %.0e", kStates, fid_dev, kFidTol));
  return c;
}

// --- 7 ----------------------------------------------------------------------

Criterion worked_states() {
  Criterion c{"C7", "entangling worked examples", {}, {}};
  constexpr double kTol = 1e-10;
  const Complex g = std::exp(kI * (kPi / 4));

  const auto psi0 = product_state(clockwise_state(), anticlockwise_state());
  const Vector<4> cphase_expected{0.5 * g, -0.5 * g, 0.5 * g, 0.5 * g};
  const double d1 = vec_dev(apply(cphase_unitary(kPi / 4), psi0).amplitudes(), cphase_expected);
  c.check(d1 < kTol, fmt("CPHASE |cw>|acw> (closed form): %.2e < %.0e", d1, kTol));
  const auto evolved = expm_hermitian_scaled(cphase_hamiltonian(1.0), kPi / 4);
  const double d2 = vec_dev(apply(evolved, psi0).amplitudes(), cphase_expected);
  c.check(d2 < kTol, fmt("CPHASE |cw>|acw> (Hamiltonian evolution): %.2e < %.0e", d2, kTol));
  const double conc = concurrence(DensityOperator<4>(TwoQubitState(cphase_expected)));
  c.note(fmt("concurrence of the CPHASE output %.12f", conc));

  const double r = 1.0 / std::sqrt(2.0);
  const auto after = apply(cnot_via_pulses(kPi / 2),
                           apply(cphase_unitary(kPi / 4), product_state(clockwise_state(), QubitState::basis(1))));
  const Vector<4> cnot_expected{0.0, -g * r, kI * g * r, 0.0};
  const double d3 = vec_dev(after.amplitudes(), cnot_expected);
  c.check(d3 < kTol, fmt("pulsed CNOT after CPHASE on |cw>|1>: %.2e < %.0e", d3, kTol));
  c.note(fmt("concurrence of that state %.12f", concurrence(DensityOperator<4>(after))));
  return c;
}

}  // namespace

int main() {
  std::printf("polariton acceptance suite, version %s\n", kVersion);
  const Clock total;
  std::vector<Criterion> results;
  for (auto run : {gate_algebra, bloch_norms, cphase_decoherence, single_qubit_sweeps, oracle_suite,
                   invariant_suite, worked_states}) {
    try {
      results.push_back(run());
    } catch (const std::exception &e) {
      Criterion c{"C?", "aborted", {}, {}};
      c.check(false, e.what());
      results.push_back(c);
    }
    results.back().print();
    std::fflush(stdout);
  }
  int failed = 0;
  for (const auto &r : results) failed += r.passed() ? 0 : 1;
  std::printf("%zu criteria, %d failed, %.1f s\n", results.size(), failed, total.seconds());
  return failed == 0 ? 0 : 1;
}
