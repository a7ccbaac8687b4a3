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

// sim <scenario> [--config file.json] [flags...]
//
// Exit codes: 0 success, 2 configuration error, 3 invariant violation
// during integration.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "polariton/polariton.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

polariton::json load_json(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw polariton::ConfigError("cannot open config file '" + path + "'");
  try {
    return polariton::json::parse(in);
  } catch (const polariton::json::parse_error &e) {
    throw polariton::ConfigError("config file '" + path + "': " + e.what());
  }
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw polariton::ConfigError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char **argv) {
  using namespace polariton;

  CLI::App app{"Polariton-condensate qubit gate simulator"};
  app.set_version_flag("--version", std::string(kVersion));

  std::string scenario_name;
  std::string config_path;
  std::optional<double> gamma_d, gamma_r, dt, sweep_max;
  std::optional<std::size_t> sample_every, threads, count;
  std::optional<std::string> output, format, lowering, initial_state, channel, spacing;
  std::string metadata_path;

  app.add_option("scenario", scenario_name,
                 "hadamard-bloch | single-qubit-sweep | cphase-sweep | concurrence-map | gate-table")
      ->required();
  app.add_option("--config", config_path, "JSON scenario configuration")->check(CLI::ExistingFile);
  app.add_option("--gamma-d", gamma_d, "pure dephasing rate (fixed background in sweeps)");
  app.add_option("--gamma-r", gamma_r, "spontaneous relaxation rate (fixed background in sweeps)");
  app.add_option("--dt", dt, "RK4 step (default: gate time / 2000)");
  app.add_option("--sample-every", sample_every, "trajectory sampling stride in steps");
  app.add_option("--initial-state", initial_state, "state label: 0, 1, cw, acw or control,target");
  app.add_option("--channel", channel, "swept channel: dephasing | relaxation");
  app.add_option("--count", count, "number of sweep points");
  app.add_option("--sweep-max", sweep_max, "upper end of the sweep range");
  app.add_option("--spacing", spacing, "sweep spacing: linear | log");
  app.add_option("--lowering-convention", lowering, "unnormalized | conventional");
  app.add_option("--output", output, "output file (default: stdout)");
  app.add_option("--format", format, "csv | json");
  app.add_option("--metadata", metadata_path,
                 "run metadata JSON (default: <output>.meta.json when --output is set)");
  app.add_option("--threads", threads, "worker threads for sweeps (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const Scenario scenario = parse_scenario(scenario_name);
    ScenarioConfig cfg = default_config(scenario);
    if (!config_path.empty()) cfg = apply_json(load_json(config_path), cfg);

    if (gamma_d) cfg.rates.gamma_d = *gamma_d;
    if (gamma_r) cfg.rates.gamma_r = *gamma_r;
    if (dt) cfg.integrator.dt = *dt;
    if (sample_every) cfg.integrator.sample_every = *sample_every;
    if (initial_state) cfg.initial_state = {*initial_state, {}};
    if (count) cfg.sweep.count = *count;
    if (sweep_max) cfg.sweep.max = *sweep_max;
    if (threads) cfg.threads = *threads;
    if (lowering) cfg.lowering = parse_lowering_convention(*lowering);
    if (output) cfg.output.path = *output;
    json patch = json::object();
    if (channel) patch["sweep"]["channel"] = *channel;
    if (spacing) patch["sweep"]["spacing"] = *spacing;
    if (format) patch["output"]["format"] = *format;
    if (!patch.empty()) cfg = apply_json(patch, cfg);

    const auto start = std::chrono::steady_clock::now();
    RunOutput result = run_scenario(cfg);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    result.metadata["wall_clock_seconds"] = elapsed.count();

    if (cfg.output.path.empty()) {
      std::cout << result.body;
    } else {
      write_file(cfg.output.path, result.body);
    }
    if (metadata_path.empty() && !cfg.output.path.empty()) {
      metadata_path = cfg.output.path + ".meta.json";
    }
    if (!metadata_path.empty()) write_file(metadata_path, result.metadata.dump(2) + "\n");
    return 0;
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvariantViolation &e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::invalid_argument &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
