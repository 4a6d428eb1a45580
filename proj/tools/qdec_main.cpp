// Copyright 2026 The qdec Authors
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

// qdec: run an experiment from a JSON config or from per-command flags.
//
//   qdec --config run.json
//   qdec decouple-run --fixture bell-identity --source clifford1q --seed 7

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdec/cli.hpp"

using nlohmann::json;

namespace {

// Collects flags that were actually given into a config object.
class Flags {
 public:
  explicit Flags(CLI::App* app) : app_(app) {}

  template <typename T>
  void add(const std::string& flag, const std::string& key, const std::string& help) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app_->add_option(flag, *value, help);
    writers_.push_back([opt, value, key](json& cfg) {
      if (opt->count() == 0) return;
      json* target = &cfg;
      std::string leaf = key;
      if (const auto dot = key.find('.'); dot != std::string::npos) {
        target = &cfg[key.substr(0, dot)];
        leaf = key.substr(dot + 1);
      }
      (*target)[leaf] = *value;
    });
  }

  void common() {
    add<std::string>("--json", "output.json", "Write the JSON report here");
    add<double>("--feas-tol", "tolerances.feas_tol", "SDP feasibility tolerance");
    add<double>("--gap-tol", "tolerances.gap_tol", "SDP relative gap tolerance");
    add<int>("--max-iter", "tolerances.max_iter", "SDP iteration limit");
    add<double>("--inequality-tol", "tolerances.inequality_tol", "Slack allowed in bound checks");
  }

  json config() const {
    json cfg{{"version", qdec::cli::kConfigVersion}, {"command", app_->get_name()}};
    for (const auto& w : writers_) w(cfg);
    return cfg;
  }

 private:
  CLI::App* app_;
  std::vector<std::function<void(json&)>> writers_;
};

void print_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decoupling experiments: entropies, design distances, circuit sweeps"};
  app.require_subcommand(0, 1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON experiment config");

  std::vector<std::pair<CLI::App*, std::unique_ptr<Flags>>> commands;
  auto command = [&](const std::string& name, const std::string& help) -> Flags& {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.emplace_back(sub, std::make_unique<Flags>(sub));
    commands.back().second->common();
    return *commands.back().second;
  };

  Flags& ent = command("entropy", "Min-entropies of an instance's state and Choi matrix");
  ent.add<std::string>("--fixture", "fixture", "Built-in instance");
  ent.add<std::string>("--instance", "instance", "Instance JSON file");
  ent.add<double>("--eps", "eps", "Smoothing parameter");

  Flags& dd = command("design-delta", "Certified distance of an ensemble from a 2-design");
  dd.add<std::string>("--source", "source.kind", "haar, identity, clifford1q or ensemble");
  dd.add<int>("--dim", "source.dim", "Dimension for haar and identity sources");
  dd.add<std::string>("--ensemble", "source.path", "Ensemble JSON file");
  dd.add<std::string>("--method", "method", "choi_trace_bounds or diamond");

  Flags& sw = command("circuit-sweep", "Design-distance proxy of random circuits against depth");
  sw.add<int>("--n-qubits", "n_qubits", "Number of qubits (2 or 3)");
  sw.add<std::string>("--gate-set", "gate_set", "haar_u4 or ht_cnot");
  sw.add<std::vector<int>>("--t-values", "t_values", "Depths");
  sw.add<long long>("--n-samples", "n_samples", "Circuits per depth");
  sw.add<int>("--batches", "batches", "Jackknife batches");
  sw.add<std::uint64_t>("--seed", "seed", "Random seed");
  sw.add<std::string>("--csv", "output.csv", "Write the sweep as CSV here");
  sw.add<std::string>("--svg", "output.svg", "Write an SVG plot here");

  Flags& dr = command("decouple-run", "Empirical decoupling error next to its bounds");
  dr.add<std::string>("--fixture", "fixture", "Built-in instance");
  dr.add<std::string>("--instance", "instance", "Instance JSON file");
  dr.add<std::string>("--source", "source.kind", "haar, identity, clifford1q, ensemble or circuit");
  dr.add<int>("--dim", "source.dim", "Dimension check for haar and identity sources");
  dr.add<std::string>("--ensemble", "source.path", "Ensemble JSON file");
  dr.add<int>("--n-qubits", "source.n_qubits", "Circuit qubits");
  dr.add<int>("--t", "source.t", "Circuit depth");
  dr.add<std::string>("--gate-set", "source.gate_set", "Circuit gate set");
  dr.add<long long>("--trials", "trials", "Monte Carlo trials");
  dr.add<std::uint64_t>("--seed", "seed", "Random seed");
  dr.add<double>("--eps", "eps", "Smoothing parameter");
  dr.add<double>("--delta", "delta", "Assumed design distance of a circuit source");
  dr.add<std::string>("--method", "method", "choi_trace_bounds or diamond");

  Flags& ic = command("identity-check", "Haar 2-norm identity, Monte Carlo against closed form");
  ic.add<int>("--d", "d", "Input dimension");
  ic.add<long long>("--trials", "trials", "Monte Carlo trials");
  ic.add<std::uint64_t>("--seed", "seed", "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    print_error("invalid_config", e.what());
    return qdec::cli::kExitInvalidConfig;
  }

  json config;
  const CLI::App* chosen = nullptr;
  for (const auto& [sub, flags] : commands)
    if (sub->parsed()) {
      chosen = sub;
      config = flags->config();
    }
  if (!config_path.empty()) {
    if (chosen) {
      print_error("invalid_config", "--config cannot be combined with a command");
      return qdec::cli::kExitInvalidConfig;
    }
    std::ifstream in(config_path);
    if (!in) {
      print_error("invalid_config", "cannot open config '" + config_path + "'");
      return qdec::cli::kExitInvalidConfig;
    }
    try {
      config = json::parse(in);
    } catch (const json::exception& e) {
      print_error("invalid_config", "config '" + config_path + "' is not valid JSON: " + e.what());
      return qdec::cli::kExitInvalidConfig;
    }
  } else if (!chosen) {
    std::cerr << app.help();
    return qdec::cli::kExitInvalidConfig;
  }
  return qdec::cli::run_and_emit(config, std::cout, std::cerr);
}
