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

// Scenario runners for the gate-under-decoherence studies: Hadamard Bloch
// trajectories, single-qubit and CPHASE rate sweeps, the two-rate
// concurrence map and the gate regression table.
//
// Time units: single-qubit runs use |P| = 1 (Hadamard takes tau = pi/2);
// two-qubit runs use J12 = 1 (CPHASE takes tau = pi/4). Rates share these
// units.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "polariton/gates.hpp"
#include "polariton/hamiltonians.hpp"
#include "polariton/linalg.hpp"
#include "polariton/lindblad.hpp"
#include "polariton/metrics.hpp"
#include "polariton/version.hpp"

namespace polariton {

using json = nlohmann::ordered_json;

/// Invalid scenario configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Scenario { hadamard_bloch, single_qubit_sweep, cphase_sweep, concurrence_map, gate_table };

inline std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::hadamard_bloch: return "hadamard-bloch";
    case Scenario::single_qubit_sweep: return "single-qubit-sweep";
    case Scenario::cphase_sweep: return "cphase-sweep";
    case Scenario::concurrence_map: return "concurrence-map";
    case Scenario::gate_table: return "gate-table";
  }
  return "gate-table";
}

namespace detail {

inline std::string normalize_token(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '_') c = '-';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace detail

inline Scenario parse_scenario(std::string_view name) {
  const std::string n = detail::normalize_token(name);
  for (auto s : {Scenario::hadamard_bloch, Scenario::single_qubit_sweep, Scenario::cphase_sweep,
                 Scenario::concurrence_map, Scenario::gate_table}) {
    if (n == to_string(s)) return s;
  }
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

inline LoweringConvention parse_lowering_convention(std::string_view name) {
  const std::string n = detail::normalize_token(name);
  if (n == "unnormalized") return LoweringConvention::unnormalized;
  if (n == "conventional") return LoweringConvention::conventional;
  throw ConfigError("unknown lowering convention '" + std::string(name) + "'");
}

enum class Spacing { linear, log };
enum class Channel { dephasing, relaxation };
enum class OutputFormat { csv, json };

inline std::string_view to_string(Spacing s) { return s == Spacing::log ? "log" : "linear"; }
inline std::string_view to_string(Channel c) {
  return c == Channel::dephasing ? "dephasing" : "relaxation";
}
inline std::string_view to_string(OutputFormat f) { return f == OutputFormat::json ? "json" : "csv"; }

/// Rate axis. A log axis starting at zero keeps 0 as its first point and
/// spaces the remaining count - 1 points geometrically from log_floor * max
/// to max.
struct SweepRange {
  double min = 0.0;
  double max = 0.4;
  std::size_t count = 21;
  Spacing spacing = Spacing::linear;
  double log_floor = 1e-3;

  void validate(std::string_view name) const {
    const std::string n(name);
    if (count < 2) throw ConfigError(n + ": count must be >= 2");
    if (!std::isfinite(min) || !std::isfinite(max) || min < 0.0 || max < 0.0) {
      throw ConfigError(n + ": range must be finite and non-negative");
    }
    if (max <= min) throw ConfigError(n + ": max must exceed min");
    if (spacing == Spacing::log && !(log_floor > 0.0 && log_floor < 1.0)) {
      throw ConfigError(n + ": log_floor must lie in (0, 1)");
    }
  }

  std::vector<double> points() const {
    std::vector<double> p(count);
    if (spacing == Spacing::linear) {
      for (std::size_t i = 0; i < count; ++i) {
        p[i] = min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
      }
    } else {
      std::size_t first = 0;
      double lo = min;
      if (min == 0.0) {
        p[0] = 0.0;
        first = 1;
        lo = max * log_floor;
      }
      const std::size_t n = count - first;
      for (std::size_t i = 0; i < n; ++i) {
        const double f = n == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        p[first + i] = lo * std::pow(max / lo, f);
      }
    }
    p.back() = max;
    return p;
  }
};

/// Initial state given either by label ("0", "1", "cw", "acw"; two qubits
/// as "control,target") or by explicit amplitudes, normalized on use.
struct InitialState {
  std::string label;
  std::vector<Complex> amplitudes;
};

struct IntegratorConfig {
  std::optional<double> dt;  // default: gate time / 2000
  std::size_t sample_every = 20;
};

struct OutputConfig {
  std::string path;  // empty: stdout
  OutputFormat format = OutputFormat::csv;
};

struct ScenarioConfig {
  Scenario scenario = Scenario::hadamard_bloch;
  InitialState initial_state;
  DecoherenceRates rates;
  Channel channel = Channel::dephasing;
  SweepRange sweep;
  SweepRange map_gamma_d;
  SweepRange map_gamma_r;
  double map_threshold = 0.90;
  PulseParams pulse;
  CouplingConfig coupling;
  TrapConfig trap1;
  TrapConfig trap2;
  std::optional<double> tau_two;  // default: pi / (4 jz)
  IntegratorConfig integrator;
  LoweringConvention lowering = kDefaultLoweringConvention;
  OutputConfig output;
  std::size_t threads = 0;  // 0: hardware concurrency
};

/// Hadamard pulse: |P| = 1, theta = 0, phi = pi/4, tau = pi/2.
inline PulseParams hadamard_pulse_params() {
  return PulseParams::from_axis(1.0, 0.0, std::numbers::pi / 4, std::numbers::pi / 2);
}

inline ScenarioConfig default_config(Scenario s) {
  ScenarioConfig c;
  c.scenario = s;
  c.pulse = hadamard_pulse_params();
  c.coupling = CouplingConfig::ising(1.0);
  c.trap1 = c.trap2 = TrapConfig{-2.0, 0.0, 0.0};
  c.map_gamma_d = SweepRange{0.0, 0.4, 41, Spacing::linear};
  c.map_gamma_r = SweepRange{0.0, 0.4, 41, Spacing::linear};
  switch (s) {
    case Scenario::hadamard_bloch:
      c.initial_state.label = "0";
      break;
    case Scenario::single_qubit_sweep:
      c.initial_state.label = "1";
      c.sweep = SweepRange{0.0, 0.4, 21, Spacing::log};
      break;
    case Scenario::cphase_sweep:
      c.initial_state.label = "cw,acw";
      c.sweep = SweepRange{0.0, 0.4, 21, Spacing::log};
      break;
    case Scenario::concurrence_map:
      c.initial_state.label = "cw,acw";
      break;
    case Scenario::gate_table:
      c.output.format = OutputFormat::json;
      break;
  }
  return c;
}

inline bool is_two_qubit(Scenario s) {
  return s == Scenario::cphase_sweep || s == Scenario::concurrence_map;
}

inline double two_qubit_gate_time(const ScenarioConfig &c) {
  if (c.tau_two) return *c.tau_two;
  return std::numbers::pi / (4.0 * c.coupling.jz);
}

inline double gate_time(const ScenarioConfig &c) {
  return is_two_qubit(c.scenario) ? two_qubit_gate_time(c) : c.pulse.tau;
}

inline double step_size(const ScenarioConfig &c) {
  return c.integrator.dt.value_or(gate_time(c) / 2000.0);
}

inline QubitState resolve_qubit_label(std::string_view label) {
  auto s = qubit_state_from_label(label);
  if (!s) throw ConfigError("unknown single-qubit state label '" + std::string(label) + "'");
  return *s;
}

template <std::size_t N>
PureState<N> resolve_initial_state(const InitialState &init) {
  if (!init.amplitudes.empty()) {
    if (init.amplitudes.size() != N) {
      throw ConfigError("initial_state: expected " + std::to_string(N) + " amplitudes, got " +
                        std::to_string(init.amplitudes.size()));
    }
    Vector<N> v{};
    std::copy(init.amplitudes.begin(), init.amplitudes.end(), v.begin());
    try {
      return PureState<N>::normalized(v);
    } catch (const std::invalid_argument &e) {
      throw ConfigError(std::string("initial_state: ") + e.what());
    }
  }
  if constexpr (N == 2) {
    return resolve_qubit_label(init.label);
  } else {
    const auto comma = init.label.find(',');
    if (comma == std::string::npos) {
      throw ConfigError("initial_state: two-qubit label must read 'control,target'");
    }
    return product_state(resolve_qubit_label(init.label.substr(0, comma)),
                         resolve_qubit_label(init.label.substr(comma + 1)));
  }
}

inline void validate(const ScenarioConfig &c) {
  auto finite = [](double x) { return std::isfinite(x); };
  try {
    c.rates.validate();
  } catch (const std::invalid_argument &e) {
    throw ConfigError(e.what());
  }
  if (c.integrator.dt && !(*c.integrator.dt > 0.0 && finite(*c.integrator.dt))) {
    throw ConfigError("integrator.dt must be > 0");
  }
  if (c.integrator.sample_every == 0) throw ConfigError("integrator.sample_every must be >= 1");
  if (!(c.map_threshold >= 0.0 && c.map_threshold <= 1.0)) {
    throw ConfigError("map.threshold must lie in [0, 1]");
  }
  switch (c.scenario) {
    case Scenario::hadamard_bloch:
    case Scenario::single_qubit_sweep:
      if (!(c.pulse.p0 >= 0.0) || !(c.pulse.tau >= 0.0) || !finite(c.pulse.theta) ||
          !finite(c.pulse.delta_eps) || !finite(c.pulse.p0) || !finite(c.pulse.tau)) {
        throw ConfigError("pulse: p0 and tau must be finite and non-negative");
      }
      resolve_initial_state<2>(c.initial_state);
      if (c.scenario == Scenario::single_qubit_sweep) c.sweep.validate("sweep");
      break;
    case Scenario::cphase_sweep:
    case Scenario::concurrence_map:
      if (!finite(c.coupling.jx) || !finite(c.coupling.jy) || !finite(c.coupling.jz)) {
        throw ConfigError("coupling: strengths must be finite");
      }
      if (!c.tau_two && !(c.coupling.jz > 0.0)) {
        throw ConfigError("coupling.jz must be > 0 unless tau is given explicitly");
      }
      if (c.tau_two && !(*c.tau_two >= 0.0 && finite(*c.tau_two))) {
        throw ConfigError("tau must be finite and non-negative");
      }
      resolve_initial_state<4>(c.initial_state);
      if (c.scenario == Scenario::cphase_sweep) {
        c.sweep.validate("sweep");
      } else {
        c.map_gamma_d.validate("map.gamma_d");
        c.map_gamma_r.validate("map.gamma_r");
      }
      break;
    case Scenario::gate_table:
      break;
  }
}

// --- JSON config --------------------------------------------------------------

namespace detail {

inline void check_keys(const json &j, std::initializer_list<std::string_view> allowed,
                       std::string_view where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto &item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ConfigError(std::string(where) + ": unknown key '" + item.key() + "'");
    }
  }
}

template <typename T>
void read(const json &j, const char *key, T &out, std::string_view where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception &) {
    throw ConfigError(std::string(where) + "." + key + ": wrong type");
  }
}

inline void read_range(const json &j, SweepRange &r, std::string_view where) {
  check_keys(j, {"min", "max", "count", "spacing", "log_floor"}, where);
  read(j, "min", r.min, where);
  read(j, "max", r.max, where);
  read(j, "count", r.count, where);
  read(j, "log_floor", r.log_floor, where);
  if (j.contains("spacing")) {
    std::string s;
    read(j, "spacing", s, where);
    if (s == "linear") {
      r.spacing = Spacing::linear;
    } else if (s == "log") {
      r.spacing = Spacing::log;
    } else {
      throw ConfigError(std::string(where) + ".spacing must be 'linear' or 'log'");
    }
  }
}

inline json range_json(const SweepRange &r) {
  return {{"min", r.min},
          {"max", r.max},
          {"count", r.count},
          {"spacing", to_string(r.spacing)},
          {"log_floor", r.log_floor}};
}

inline void read_trap(const json &j, TrapConfig &t, std::string_view where) {
  check_keys(j, {"delta_eps", "px", "py"}, where);
  read(j, "delta_eps", t.delta_eps, where);
  read(j, "px", t.px, where);
  read(j, "py", t.py, where);
}

inline json trap_json(const TrapConfig &t) {
  return {{"delta_eps", t.delta_eps}, {"px", t.px}, {"py", t.py}};
}

}  // namespace detail

/// Applies the fields present in j on top of base. Unknown keys are errors.
inline ScenarioConfig apply_json(const json &j, ScenarioConfig c) {
  using detail::check_keys;
  using detail::read;
  check_keys(j,
             {"scenario", "initial_state", "rates", "sweep", "map", "pulse", "coupling", "traps",
              "tau", "integrator", "lowering_convention", "output", "threads"},
             "config");
  if (j.contains("scenario")) {
    std::string s;
    read(j, "scenario", s, "config");
    if (parse_scenario(s) != c.scenario) {
      throw ConfigError("config: scenario '" + s + "' does not match '" +
                        std::string(to_string(c.scenario)) + "'");
    }
  }
  if (j.contains("initial_state")) {
    const json &s = j.at("initial_state");
    if (s.is_string()) {
      c.initial_state = {s.get<std::string>(), {}};
    } else if (s.is_object()) {
      check_keys(s, {"amplitudes"}, "initial_state");
      std::vector<Complex> amps;
      try {
        for (const auto &a : s.at("amplitudes")) {
          if (a.is_number()) {
            amps.emplace_back(a.get<double>(), 0.0);
          } else {
            amps.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
          }
        }
      } catch (const json::exception &) {
        throw ConfigError("initial_state.amplitudes: expected numbers or [re, im] pairs");
      }
      c.initial_state = {"", std::move(amps)};
    } else {
      throw ConfigError("initial_state: expected a label or {\"amplitudes\": [...]}");
    }
  }
  if (j.contains("rates")) {
    check_keys(j.at("rates"), {"gamma_r", "gamma_d"}, "rates");
    read(j.at("rates"), "gamma_r", c.rates.gamma_r, "rates");
    read(j.at("rates"), "gamma_d", c.rates.gamma_d, "rates");
  }
  if (j.contains("sweep")) {
    json s = j.at("sweep");
    if (!s.is_object()) throw ConfigError("sweep: expected an object");
    if (s.contains("channel")) {
      std::string ch;
      read(s, "channel", ch, "sweep");
      if (ch == "dephasing" || ch == "gamma_d") {
        c.channel = Channel::dephasing;
      } else if (ch == "relaxation" || ch == "gamma_r") {
        c.channel = Channel::relaxation;
      } else {
        throw ConfigError("sweep.channel must be 'dephasing' or 'relaxation'");
      }
      s.erase("channel");
    }
    detail::read_range(s, c.sweep, "sweep");
  }
  if (j.contains("map")) {
    const json &m = j.at("map");
    check_keys(m, {"gamma_d", "gamma_r", "threshold"}, "map");
    if (m.contains("gamma_d")) detail::read_range(m.at("gamma_d"), c.map_gamma_d, "map.gamma_d");
    if (m.contains("gamma_r")) detail::read_range(m.at("gamma_r"), c.map_gamma_r, "map.gamma_r");
    read(m, "threshold", c.map_threshold, "map");
  }
  if (j.contains("pulse")) {
    const json &p = j.at("pulse");
    check_keys(p, {"p0", "theta", "delta_eps", "tau", "p_norm", "phi"}, "pulse");
    if (p.contains("p_norm") || p.contains("phi")) {
      if (p.contains("p0") || p.contains("delta_eps")) {
        throw ConfigError("pulse: give either (p0, delta_eps) or (p_norm, phi), not both");
      }
      double pn = c.pulse.norm();
      double phi = c.pulse.phi();
      double theta = c.pulse.theta;
      double tau = c.pulse.tau;
      read(p, "p_norm", pn, "pulse");
      read(p, "phi", phi, "pulse");
      read(p, "theta", theta, "pulse");
      read(p, "tau", tau, "pulse");
      c.pulse = PulseParams::from_axis(pn, theta, phi, tau);
    } else {
      read(p, "p0", c.pulse.p0, "pulse");
      read(p, "theta", c.pulse.theta, "pulse");
      read(p, "delta_eps", c.pulse.delta_eps, "pulse");
      read(p, "tau", c.pulse.tau, "pulse");
    }
  }
  if (j.contains("coupling")) {
    const json &k = j.at("coupling");
    check_keys(k, {"jx", "jy", "jz", "ising", "xy"}, "coupling");
    if (k.contains("ising")) c.coupling = CouplingConfig::ising(k.at("ising").get<double>());
    if (k.contains("xy")) c.coupling = CouplingConfig::xy(k.at("xy").get<double>());
    read(k, "jx", c.coupling.jx, "coupling");
    read(k, "jy", c.coupling.jy, "coupling");
    read(k, "jz", c.coupling.jz, "coupling");
  }
  if (j.contains("traps")) {
    const json &t = j.at("traps");
    if (!t.is_array() || t.size() != 2) throw ConfigError("traps: expected two trap objects");
    detail::read_trap(t.at(0), c.trap1, "traps[0]");
    detail::read_trap(t.at(1), c.trap2, "traps[1]");
  }
  if (j.contains("tau")) {
    double tau = 0.0;
    read(j, "tau", tau, "config");
    c.tau_two = tau;
  }
  if (j.contains("integrator")) {
    const json &in = j.at("integrator");
    check_keys(in, {"dt", "sample_every"}, "integrator");
    if (in.contains("dt")) {
      double dt = 0.0;
      read(in, "dt", dt, "integrator");
      c.integrator.dt = dt;
    }
    read(in, "sample_every", c.integrator.sample_every, "integrator");
  }
  if (j.contains("lowering_convention")) {
    std::string s;
    read(j, "lowering_convention", s, "config");
    c.lowering = parse_lowering_convention(s);
  }
  if (j.contains("output")) {
    const json &o = j.at("output");
    check_keys(o, {"path", "format"}, "output");
    read(o, "path", c.output.path, "output");
    if (o.contains("format")) {
      std::string f;
      read(o, "format", f, "output");
      if (f == "csv") {
        c.output.format = OutputFormat::csv;
      } else if (f == "json") {
        c.output.format = OutputFormat::json;
      } else {
        throw ConfigError("output.format must be 'csv' or 'json'");
      }
    }
  }
  read(j, "threads", c.threads, "config");
  return c;
}

inline json to_json(const ScenarioConfig &c) {
  json init;
  if (c.initial_state.amplitudes.empty()) {
    init = c.initial_state.label;
  } else {
    json amps = json::array();
    for (const auto &a : c.initial_state.amplitudes) amps.push_back({a.real(), a.imag()});
    init = {{"amplitudes", amps}};
  }
  json j = {
      {"scenario", to_string(c.scenario)},
      {"initial_state", init},
      {"rates", {{"gamma_r", c.rates.gamma_r}, {"gamma_d", c.rates.gamma_d}}},
  };
  if (c.scenario == Scenario::single_qubit_sweep || c.scenario == Scenario::cphase_sweep) {
    json s = detail::range_json(c.sweep);
    s["channel"] = to_string(c.channel);
    j["sweep"] = s;
  }
  if (c.scenario == Scenario::concurrence_map) {
    j["map"] = {{"gamma_d", detail::range_json(c.map_gamma_d)},
                {"gamma_r", detail::range_json(c.map_gamma_r)},
                {"threshold", c.map_threshold}};
  }
  if (is_two_qubit(c.scenario)) {
    j["coupling"] = {{"jx", c.coupling.jx}, {"jy", c.coupling.jy}, {"jz", c.coupling.jz}};
    j["traps"] = {detail::trap_json(c.trap1), detail::trap_json(c.trap2)};
    j["tau"] = two_qubit_gate_time(c);
  } else {
    j["pulse"] = {{"p0", c.pulse.p0},
                  {"theta", c.pulse.theta},
                  {"delta_eps", c.pulse.delta_eps},
                  {"tau", c.pulse.tau}};
  }
  j["integrator"] = {{"dt", step_size(c)}, {"sample_every", c.integrator.sample_every}};
  j["lowering_convention"] = to_string(c.lowering);
  j["output"] = {{"path", c.output.path}, {"format", to_string(c.output.format)}};
  j["threads"] = c.threads;
  return j;
}

// --- Parallel helper ----------------------------------------------------------

/// Evaluates fn(i) for i in [0, count) on a small worker pool; results are
/// stored by index so the output order never depends on scheduling.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t count, std::size_t threads, F &&fn) {
  std::vector<std::optional<T>> slots(count);
  std::size_t workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = std::min(workers, std::max<std::size_t>(count, 1));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<T> out;
  out.reserve(count);
  for (auto &s : slots) out.push_back(std::move(*s));
  return out;
}

// --- Scenario runners ---------------------------------------------------------

struct BlochSample {
  double t;
  BlochVector u;
  double purity;
};

struct HadamardBlochResult {
  Trajectory<2> trajectory;
  std::vector<BlochSample> samples;

  const BlochSample &final_sample() const { return samples.back(); }
};

struct SweepPoint {
  double gamma_d = 0.0;
  double gamma_r = 0.0;
  double fidelity = 0.0;
  double entropy = 0.0;
  double concurrence = std::numeric_limits<double>::quiet_NaN();  // two-qubit only
  double bloch_norm = std::numeric_limits<double>::quiet_NaN();   // one-qubit only
  double purity = 0.0;
};

struct SweepResult {
  Scenario scenario;
  Channel channel;
  std::vector<SweepPoint> points;
};

struct MapResult {
  std::vector<double> gamma_d;
  std::vector<double> gamma_r;
  std::vector<double> concurrence;  // row-major: index i * gamma_r.size() + j
  double threshold;

  double at(std::size_t i, std::size_t j) const { return concurrence[i * gamma_r.size() + j]; }
};

inline ComplexMatrix2 single_qubit_hamiltonian(const ScenarioConfig &c) {
  return single_qubit_h(c.pulse.trap());
}

inline ComplexMatrix4 two_qubit_hamiltonian(const ScenarioConfig &c) {
  return two_qubit_h(c.trap1, c.trap2, c.coupling);
}

template <std::size_t N>
DensityOperator<N> final_state(const Matrix<N> &h, const DensityOperator<N> &rho0,
                               const DecoherenceRates &rates, double t, const ScenarioConfig &c) {
  const double dt = step_size(c);
  const auto steps = static_cast<std::size_t>(std::ceil(t / dt - 1e-9));
  return evolve(h, rho0, rates, t, dt, std::max<std::size_t>(steps, 1),
                {c.lowering, std::string(to_string(c.scenario))})
      .final_state();
}

inline HadamardBlochResult run_hadamard_bloch(const ScenarioConfig &c) {
  validate(c);
  const DensityOperator<2> rho0(resolve_initial_state<2>(c.initial_state));
  HadamardBlochResult r{evolve(single_qubit_hamiltonian(c), rho0, c.rates, c.pulse.tau,
                               step_size(c), c.integrator.sample_every,
                               {c.lowering, std::string(to_string(c.scenario))}),
                        {}};
  r.samples.reserve(r.trajectory.size());
  for (std::size_t k = 0; k < r.trajectory.size(); ++k) {
    const auto &rho = r.trajectory.states[k];
    r.samples.push_back({r.trajectory.times[k], bloch_vector(rho), purity(rho)});
  }
  return r;
}

inline DecoherenceRates swept_rates(const ScenarioConfig &c, double gamma) {
  DecoherenceRates r = c.rates;
  (c.channel == Channel::dephasing ? r.gamma_d : r.gamma_r) = gamma;
  return r;
}

inline SweepResult run_single_qubit_sweep(const ScenarioConfig &c) {
  validate(c);
  const auto h = single_qubit_hamiltonian(c);
  const DensityOperator<2> rho0(resolve_initial_state<2>(c.initial_state));
  const auto ideal = final_state(h, rho0, DecoherenceRates{}, c.pulse.tau, c);
  const auto axis = c.sweep.points();
  SweepResult out{c.scenario, c.channel, {}};
  out.points = parallel_map<SweepPoint>(axis.size(), c.threads, [&](std::size_t i) {
    const auto rates = swept_rates(c, axis[i]);
    const auto rho = final_state(h, rho0, rates, c.pulse.tau, c);
    SweepPoint p;
    p.gamma_d = rates.gamma_d;
    p.gamma_r = rates.gamma_r;
    p.fidelity = fidelity(ideal, rho);
    p.entropy = vn_entropy(rho);
    p.bloch_norm = bloch_vector(rho).norm();
    p.purity = purity(rho);
    return p;
  });
  return out;
}

inline SweepResult run_cphase_sweep(const ScenarioConfig &c) {
  validate(c);
  const auto h = two_qubit_hamiltonian(c);
  const double tau = two_qubit_gate_time(c);
  const DensityOperator<4> rho0(resolve_initial_state<4>(c.initial_state));
  const auto ideal = final_state(h, rho0, DecoherenceRates{}, tau, c);
  const auto axis = c.sweep.points();
  SweepResult out{c.scenario, c.channel, {}};
  out.points = parallel_map<SweepPoint>(axis.size(), c.threads, [&](std::size_t i) {
    const auto rates = swept_rates(c, axis[i]);
    const auto rho = final_state(h, rho0, rates, tau, c);
    SweepPoint p;
    p.gamma_d = rates.gamma_d;
    p.gamma_r = rates.gamma_r;
    p.fidelity = fidelity(ideal, rho);
    p.entropy = vn_entropy(rho);
    p.concurrence = concurrence(rho);
    p.purity = purity(rho);
    return p;
  });
  return out;
}

inline MapResult run_concurrence_map(const ScenarioConfig &c) {
  validate(c);
  const auto h = two_qubit_hamiltonian(c);
  const double tau = two_qubit_gate_time(c);
  const DensityOperator<4> rho0(resolve_initial_state<4>(c.initial_state));
  MapResult m{c.map_gamma_d.points(), c.map_gamma_r.points(), {}, c.map_threshold};
  const std::size_t cols = m.gamma_r.size();
  m.concurrence = parallel_map<double>(m.gamma_d.size() * cols, c.threads, [&](std::size_t k) {
    const DecoherenceRates rates{m.gamma_r[k % cols], m.gamma_d[k / cols]};
    return concurrence(final_state(h, rho0, rates, tau, c));
  });
  return m;
}

// --- Gate table ---------------------------------------------------------------

namespace detail {

template <std::size_t N>
json amplitudes_json(const Vector<N> &v) {
  json a = json::array();
  for (const auto &z : v) a.push_back({z.real(), z.imag()});
  return a;
}

template <std::size_t N>
json gate_row(std::string_view gate, std::string_view construction, const Matrix<N> &built,
              const Matrix<N> &golden, const Matrix<N> &canonical) {
  return {{"gate", gate},
          {"construction", construction},
          {"unitary", is_unitary(built, 1e-12)},
          {"max_abs_deviation", phase_aligned_deviation(built, golden)},
          {"raw_max_abs_deviation", max_abs_diff(built, golden)},
          {"equals_canonical_up_to_phase", equal_up_to_global_phase(built, canonical, 1e-12)}};
}

}  // namespace detail

/// Regression report: every gate built from pulse or coupling parameters,
/// compared against its stored matrix after global-phase alignment.
inline json run_gate_table(const ScenarioConfig & = default_config(Scenario::gate_table)) {
  using detail::gate_row;
  const double pi = std::numbers::pi;
  json rows = json::array();

  rows.push_back(gate_row("X_PI", "pulse_unitary(P tau=pi/2, theta=0, phi=pi/2)",
                          pulse_unitary(1.0, 0.0, pi / 2, pi / 2), golden::x_pi_pulse(),
                          canonical::x_pi()));
  rows.push_back(gate_row("Y_PI", "pulse_unitary(P tau=pi/2, theta=pi/2, phi=pi/2)",
                          pulse_unitary(1.0, pi / 2, pi / 2, pi / 2), golden::y_pi_pulse(),
                          canonical::y_pi()));
  rows.push_back(gate_row("Z_PI", "pulse_unitary(P tau=pi/2, theta=0, phi=pi)",
                          pulse_unitary(1.0, 0.0, pi, pi / 2), golden::z_pi_pulse(),
                          canonical::z_pi()));
  rows.push_back(gate_row("HADAMARD", "pulse_unitary(P tau=pi/2, theta=0, phi=pi/4)",
                          pulse_unitary(1.0, 0.0, pi / 4, pi / 2), golden::hadamard_pulse(),
                          canonical::hadamard()));
  {
    const auto p = hadamard_pulse_params();
    rows.push_back(gate_row("HADAMARD", "expm(-i H tau), trap Hamiltonian",
                            expm_hermitian_scaled(single_qubit_h(p.trap()), p.tau),
                            golden::hadamard_pulse(), canonical::hadamard()));
  }
  rows.push_back(gate_row("CPHASE", "cphase_unitary(J tau=pi/4)", cphase_unitary(pi / 4),
                          golden::cphase_coupled(), canonical::cphase()));
  rows.push_back(gate_row("CPHASE", "expm(-i H tau), Ising working point",
                          expm_hermitian_scaled(cphase_hamiltonian(1.0), pi / 4),
                          golden::cphase_coupled(), canonical::cphase()));
  {
    json row = gate_row("ISWAP", "iswap_unitary(J tau=pi/4)", iswap_unitary(pi / 4),
                        golden::iswap_coupled(), canonical::iswap());
    const auto out = apply(iswap_unitary(pi / 4), TwoQubitState::basis(1));
    row["input"] = "|01>";
    row["output_amplitudes"] = detail::amplitudes_json(out.amplitudes());
    rows.push_back(row);
  }
  rows.push_back(gate_row("ISWAP", "expm(-i H tau), XY working point",
                          expm_hermitian_scaled(iswap_hamiltonian(1.0), pi / 4),
                          golden::iswap_coupled(), canonical::iswap()));
  rows.push_back(gate_row("CNOT", "(1 x H) CPHASE (1 x H)", cnot_composed(), canonical::cnot(),
                          canonical::cnot()));
  rows.push_back(gate_row("CNOT", "cnot_via_pulses(phi2=pi/2)", cnot_via_pulses(pi / 2),
                          golden::cnot_pulsed(), golden::cnot_pulsed()));
  return {{"gates", rows}};
}

// --- Output -------------------------------------------------------------------

/// 12 significant digits, as used in every CSV column.
inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

namespace detail {

inline void csv_row(std::ostringstream &os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << format_number(v);
    first = false;
  }
  os << '\n';
}

}  // namespace detail

inline std::string bloch_csv(const HadamardBlochResult &r) {
  std::ostringstream os;
  os << "t,x,y,z,norm,purity\n";
  for (const auto &s : r.samples) {
    detail::csv_row(os, {s.t, s.u.x, s.u.y, s.u.z, s.u.norm(), s.purity});
  }
  return os.str();
}

inline std::string sweep_csv(const SweepResult &r) {
  std::ostringstream os;
  if (r.scenario == Scenario::cphase_sweep) {
    os << "gamma_d,gamma_r,fidelity,concurrence,entropy,purity\n";
    for (const auto &p : r.points) {
      detail::csv_row(os, {p.gamma_d, p.gamma_r, p.fidelity, p.concurrence, p.entropy, p.purity});
    }
  } else {
    os << "gamma_d,gamma_r,fidelity,entropy,bloch_norm,purity\n";
    for (const auto &p : r.points) {
      detail::csv_row(os, {p.gamma_d, p.gamma_r, p.fidelity, p.entropy, p.bloch_norm, p.purity});
    }
  }
  return os.str();
}

/// Grid rows in gamma_d-major order; above_threshold marks the cells inside
/// the concurrence >= threshold contour.
inline std::string map_csv(const MapResult &m) {
  std::ostringstream os;
  os << "gamma_d,gamma_r,concurrence,above_threshold\n";
  for (std::size_t i = 0; i < m.gamma_d.size(); ++i) {
    for (std::size_t j = 0; j < m.gamma_r.size(); ++j) {
      const double c = m.at(i, j);
      detail::csv_row(os, {m.gamma_d[i], m.gamma_r[j], c, c >= m.threshold ? 1.0 : 0.0});
    }
  }
  return os.str();
}

inline json bloch_json(const HadamardBlochResult &r) {
  json rows = json::array();
  for (const auto &s : r.samples) {
    rows.push_back({{"t", s.t},
                    {"x", s.u.x},
                    {"y", s.u.y},
                    {"z", s.u.z},
                    {"norm", s.u.norm()},
                    {"purity", s.purity}});
  }
  return {{"samples", rows}};
}

inline json sweep_json(const SweepResult &r) {
  json rows = json::array();
  for (const auto &p : r.points) {
    json row = {{"gamma_d", p.gamma_d}, {"gamma_r", p.gamma_r}, {"fidelity", p.fidelity}};
    if (r.scenario == Scenario::cphase_sweep) row["concurrence"] = p.concurrence;
    row["entropy"] = p.entropy;
    if (r.scenario == Scenario::single_qubit_sweep) row["bloch_norm"] = p.bloch_norm;
    row["purity"] = p.purity;
    rows.push_back(row);
  }
  return {{"channel", to_string(r.channel)}, {"points", rows}};
}

inline json map_json(const MapResult &m) {
  json cells = json::array();
  json contour = json::array();
  for (std::size_t i = 0; i < m.gamma_d.size(); ++i) {
    for (std::size_t j = 0; j < m.gamma_r.size(); ++j) {
      cells.push_back({{"gamma_d", m.gamma_d[i]}, {"gamma_r", m.gamma_r[j]}, {"concurrence", m.at(i, j)}});
      if (m.at(i, j) >= m.threshold) contour.push_back({m.gamma_d[i], m.gamma_r[j]});
    }
  }
  return {{"threshold", m.threshold}, {"cells", cells}, {"above_threshold", contour}};
}

/// Scenario output plus a metadata document (version, config echo, summary).
struct RunOutput {
  std::string body;
  json metadata;
};

inline RunOutput run_scenario(const ScenarioConfig &c) {
  validate(c);
  RunOutput out;
  out.metadata = {{"version", kVersion}, {"scenario", to_string(c.scenario)}, {"config", to_json(c)}};
  const bool as_json = c.output.format == OutputFormat::json;
  switch (c.scenario) {
    case Scenario::hadamard_bloch: {
      const auto r = run_hadamard_bloch(c);
      out.body = as_json ? bloch_json(r).dump(2) + "\n" : bloch_csv(r);
      const auto &f = r.final_sample();
      out.metadata["summary"] = {{"final_bloch", {f.u.x, f.u.y, f.u.z}},
                                 {"final_norm", f.u.norm()},
                                 {"final_purity", f.purity}};
      break;
    }
    case Scenario::single_qubit_sweep:
    case Scenario::cphase_sweep: {
      const auto r = c.scenario == Scenario::cphase_sweep ? run_cphase_sweep(c)
                                                          : run_single_qubit_sweep(c);
      out.body = as_json ? sweep_json(r).dump(2) + "\n" : sweep_csv(r);
      out.metadata["summary"] = {{"points", r.points.size()}};
      break;
    }
    case Scenario::concurrence_map: {
      const auto m = run_concurrence_map(c);
      out.body = as_json ? map_json(m).dump(2) + "\n" : map_csv(m);
      const auto above = std::count_if(m.concurrence.begin(), m.concurrence.end(),
                                       [&m](double x) { return x >= m.threshold; });
      out.metadata["summary"] = {{"cells", m.concurrence.size()}, {"above_threshold", above}};
      break;
    }
    case Scenario::gate_table:
      out.body = run_gate_table(c).dump(2) + "\n";
      break;
  }
  return out;
}

}  // namespace polariton
