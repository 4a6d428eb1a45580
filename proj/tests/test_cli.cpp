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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <sys/wait.h>

#include "qdec/cli.hpp"
#include "qdec/errors.hpp"
#include "qdec/serialize.hpp"

using namespace qdec;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run_config(const json& cfg) {
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run_and_emit(cfg, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qdec_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string strip_ws(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

// Tag balance check: every element is closed in order, nothing is left open.
bool well_formed_xml(const std::string& s) {
  std::vector<std::string> stack;
  const std::regex tag(R"(<(/?)([A-Za-z][\w:-]*)([^>]*?)(/?)>)");
  std::size_t pos = s.find("<svg");
  if (pos == std::string::npos) return false;
  for (std::sregex_iterator it(s.begin() + static_cast<long>(pos), s.end(), tag), end; it != end; ++it) {
    const auto& m = *it;
    if (m[4].length() > 0) continue;  // self-closing
    if (m[1].length() == 0) {
      stack.push_back(m[2]);
    } else {
      if (stack.empty() || stack.back() != m[2].str()) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

std::vector<circuits::SweepRow> rows_of(const std::vector<double>& deltas, double se) {
  std::vector<circuits::SweepRow> rows;
  int t = 0;
  for (double d : deltas) rows.push_back({t += 5, d, se, 100, 3});
  return rows;
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("exact Clifford run on the bell-identity fixture") {
  const auto o = run_config({{"command", "decouple-run"}, {"fixture", "bell-identity"}, {"source", "clifford1q"}, {"seed", 7}});
  REQUIRE(o.code == cli::kExitOk);
  CHECK(o.err.empty());
  const json r = json::parse(o.out).at("result");
  CHECK(r.at("empirical").at("exact") == true);
  CHECK(r.at("empirical").at("mean").get<double>() == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(r.at("bound_haar").at("value").get<double>() == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(r.at("delta").at("upper").get<double>() <= 1e-9);
  CHECK(r.at("check").at("passed") == true);
  CHECK(r.at("xi_square_trace_norm").at("exact").get<double>() == doctest::Approx(2.25));
}

TEST_CASE("config validation") {
  const json base{{"command", "decouple-run"}, {"fixture", "bell-identity"}, {"source", "haar"}, {"trials", 200}, {"seed", 1}};
  CHECK(run_config(base).code == cli::kExitOk);

  auto with = [&](const std::string& key, const json& v) {
    json c = base;
    c[key] = v;
    return run_config(c);
  };
  const auto one = with("trials", 1);
  CHECK(one.code == cli::kExitInvalidConfig);
  CHECK(json::parse(one.err).at("error") == "invalid_config");
  CHECK(one.out.empty());
  CHECK(with("bogus", 1).code == cli::kExitInvalidConfig);
  CHECK(with("version", 2).code == cli::kExitInvalidConfig);
  CHECK(with("delta", 0.1).code == cli::kExitInvalidConfig);
  CHECK(with("eps", 1.5).code == cli::kExitInvalidConfig);
  CHECK(with("seed", -3).code == cli::kExitInvalidConfig);
  CHECK(with("seed", "7").code == cli::kExitInvalidConfig);
  CHECK(with("output", json{{"csv", "x.csv"}}).code == cli::kExitInvalidConfig);
  CHECK(with("source", json{{"kind", "haar"}, {"t", 3}}).code == cli::kExitInvalidConfig);
  CHECK(with("source", json{{"kind", "haar"}, {"dim", 3}}).code == cli::kExitInvalidConfig);
  CHECK(with("tolerances", json{{"gap_tol", -1.0}}).code == cli::kExitInvalidConfig);
  CHECK(with("instance", "x.json").code == cli::kExitInvalidConfig);

  json no_seed = base;
  no_seed.erase("seed");
  CHECK(run_config(no_seed).code == cli::kExitInvalidConfig);
  json no_trials = base;
  no_trials.erase("trials");
  CHECK(run_config(no_trials).code == cli::kExitInvalidConfig);
  // Exact sources need no seed.
  CHECK(run_config({{"command", "decouple-run"}, {"fixture", "bell-identity"}, {"source", "clifford1q"}}).code ==
        cli::kExitOk);
  CHECK(run_config({{"command", "decouple-run"}, {"fixture", "bell-identity"}, {"source", "clifford1q"}, {"trials", 10}})
            .code == cli::kExitInvalidConfig);
  CHECK(run_config({{"command", "nope"}}).code == cli::kExitInvalidConfig);
  CHECK(run_config(json::array()).code == cli::kExitInvalidConfig);

  const json n = cli::normalize_config(base);
  CHECK(n.at("version") == cli::kConfigVersion);
  CHECK(n.at("tolerances").at("max_iter") == 200);
  CHECK(n.at("source") == json{{"kind", "haar"}});
  CHECK(cli::normalize_config(n) == n);
}

TEST_CASE("missing input files are config errors") {
  const auto o = run_config({{"command", "decouple-run"},
                             {"fixture", "bell-identity"},
                             {"source", {{"kind", "ensemble"}, {"path", "/nonexistent/e.json"}}}});
  CHECK(o.code == cli::kExitInvalidConfig);
  CHECK(o.err.find("/nonexistent/e.json") != std::string::npos);
}

TEST_CASE("exit code classification") {
  CHECK(cli::classify(NumericError("x")).second == cli::kExitNumeric);
  CHECK(cli::classify(ParameterError("x")).second == cli::kExitInvalidConfig);
  CHECK(cli::classify(LayoutError("x")).second == cli::kExitInvalidConfig);
  CHECK(cli::classify(DomainError("x")).second == cli::kExitInvalidConfig);
  CHECK(cli::classify(SizeError("x")).second == cli::kExitInvalidConfig);
  CHECK(cli::classify(std::runtime_error("x")).second == cli::kExitFailure);
}

TEST_CASE("identity check") {
  const auto o = run_config({{"command", "identity-check"}, {"d", 2}, {"trials", 20000}, {"seed", 1}});
  REQUIRE(o.code == cli::kExitOk);
  const json r = json::parse(o.out).at("result");
  CHECK(r.at("rhs").get<double>() == doctest::Approx(0.75));
  CHECK(r.at("lhs").at("mean").get<double>() == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(r.at("check").at("passed") == true);
  CHECK(run_config({{"command", "identity-check"}, {"d", 2}, {"trials", 1}, {"seed", 1}}).code == cli::kExitInvalidConfig);
}

TEST_CASE("fixtures") {
  for (const auto& name : cli::fixture_names()) {
    const auto inst = cli::fixture(name);
    CHECK(inst.channel().is_cp());
    CHECK(inst.channel().is_tp());
    const auto o = run_config({{"command", "decouple-run"}, {"fixture", name}, {"source", "clifford1q"}});
    if (name == "bell-trace") {
      // A is three qubits there, so a single-qubit ensemble does not fit.
      CHECK(o.code == cli::kExitInvalidConfig);
      continue;
    }
    CHECK(o.code == cli::kExitOk);
  }
  CHECK(cli::fixture("bell-trace").d_a() == 8);
  CHECK_THROWS_AS(cli::fixture("nope"), ParameterError);

  // The measurement instance: dephasing leaves a classical copy, H_min(A'|B) = 0.
  const auto o = run_config({{"command", "entropy"}, {"fixture", "measurement"}});
  REQUIRE(o.code == cli::kExitOk);
  const json r = json::parse(o.out).at("result");
  CHECK(r.at("choi").at("h_min").at("value").get<double>() == doctest::Approx(0.0).epsilon(1e-5));
  CHECK(r.at("rho").at("h_min").at("value").get<double>() == doctest::Approx(-1.0).epsilon(1e-5));
  CHECK(r.at("bound_haar").get<double>() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-5));
}

TEST_CASE("entropy and design-delta commands") {
  const auto o = run_config({{"command", "entropy"}, {"fixture", "product-mixed"}, {"eps", 0.05}});
  REQUIRE(o.code == cli::kExitOk);
  const json r = json::parse(o.out).at("result");
  CHECK(r.at("rho").at("h_min").at("value").get<double>() == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.at("rho").at("h_conditional").get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.at("rho").at("h_min_smooth").at("value").get<double>() >= 1.0 - 1e-5);
  CHECK(r.contains("bound_smoothed"));

  const auto id = run_config({{"command", "design-delta"}, {"source", {{"kind", "identity"}, {"dim", 2}}}});
  REQUIRE(id.code == cli::kExitOk);
  const json d = json::parse(id.out).at("result").at("delta");
  CHECK(d.at("lower").get<double>() > 0.5);
  CHECK(d.at("upper").get<double>() >= d.at("lower").get<double>());
  CHECK(run_config({{"command", "design-delta"}, {"source", "haar"}}).code == cli::kExitInvalidConfig);
}

TEST_CASE("instance and ensemble files") {
  const auto inst = cli::fixture("bell-identity");
  const json file{{"state", operator_to_json(inst.rho())},
                  {"channel",
                   {{"in", layout_to_json(inst.channel().in_layout())},
                    {"out", layout_to_json(inst.channel().out_layout())},
                    {"choi", operator_to_json(inst.channel().choi())}}}};
  const fs::path ip = scratch("instance.json");
  std::ofstream(ip) << file.dump();
  const fs::path ep = scratch("clifford.json");
  std::ofstream(ep) << designs::ensemble_to_json(designs::clifford1q_ensemble()).dump();

  const auto a = run_config({{"command", "decouple-run"},
                             {"instance", ip.string()},
                             {"source", {{"kind", "ensemble"}, {"path", ep.string()}}}});
  REQUIRE(a.code == cli::kExitOk);
  const auto b = run_config({{"command", "decouple-run"}, {"fixture", "bell-identity"}, {"source", "clifford1q"}});
  REQUIRE(b.code == cli::kExitOk);
  CHECK(json::parse(a.out).at("result").at("empirical") == json::parse(b.out).at("result").at("empirical"));

  std::ofstream(scratch("broken.json")) << "{\"state\": ";
  CHECK(run_config({{"command", "entropy"}, {"instance", scratch("broken.json").string()}}).code ==
        cli::kExitInvalidConfig);
}

TEST_CASE("reports are deterministic and round-trip") {
  const json cfg{{"command", "decouple-run"}, {"fixture", "measurement"}, {"source", "haar"},
                 {"trials", 300},             {"seed", 42},             {"eps", 0.05}};
  json c1 = cfg, c2 = cfg;
  c1["output"] = {{"json", scratch("a.json").string()}};
  c2["output"] = {{"json", scratch("b.json").string()}};
  const auto o1 = run_config(c1);
  const auto o2 = run_config(c2);
  REQUIRE(o1.code == cli::kExitOk);
  REQUIRE(o2.code == cli::kExitOk);
  CHECK(o1.out == o2.out);
  const std::string f1 = slurp(scratch("a.json"));
  CHECK(f1 == slurp(scratch("b.json")));
  CHECK(f1 == o1.out);
  CHECK(fs::exists(scratch("a.json.meta.json")));
  CHECK(!fs::exists(scratch("a.json.tmp")));
  CHECK(json::parse(slurp(scratch("a.json.meta.json"))).contains("timestamp"));
  CHECK(f1.find("timestamp") == std::string::npos);

  const json loaded = cli::load_report(scratch("a.json"));
  CHECK(strip_ws(loaded.dump()) == strip_ws(f1));

  json c3 = cfg;
  c3["seed"] = 43;
  CHECK(run_config(c3).out != o1.out);
}

TEST_CASE("rounding to 12 significant digits") {
  CHECK(cli::round_sig(0.0) == 0.0);
  CHECK(cli::round_sig(1.0 / 3.0) == 0.333333333333);
  CHECK(cli::round_sig(-2.0 / 3.0 * 1e-7) == -6.66666666667e-8);
  CHECK(json(cli::round_sig(0.1 + 0.2)).dump() == "0.3");
}

TEST_CASE("sweep CSV") {
  CHECK(cli::report_csv({}) == "t,delta_estimate,stderr,n_samples,seed\n");
  const std::string csv = cli::report_csv(rows_of({0.5, 0.25}, 0.01));
  CHECK(csv == "t,delta_estimate,stderr,n_samples,seed\n5,0.5,0.01,100,3\n10,0.25,0.01,100,3\n");
}

TEST_CASE("sweep plot") {
  const std::string svg = cli::plot_svg(rows_of({1.0, 0.5, 0.1, 0.01, 0.001}, 0.0));
  CHECK(well_formed_xml(svg));
  CHECK(count(svg, "class=\"marker\"") == 5);
  CHECK(count(svg, "errorbar") == 0);
  CHECK(svg.find("href") == std::string::npos);

  // Decreasing data plots as increasing SVG y.
  const std::smatch m = [&] {
    std::smatch mm;
    std::regex_search(svg, mm, std::regex("points=\"([^\"]*)\""));
    return mm;
  }();
  std::istringstream pts(m[1].str());
  std::string pair;
  double prev = -1.0;
  int n = 0;
  while (pts >> pair) {
    const double y = std::stod(pair.substr(pair.find(',') + 1));
    CHECK(y > prev);
    prev = y;
    ++n;
  }
  CHECK(n == 5);

  const std::string bars = cli::plot_svg(rows_of({0.5, 0.2, 0.1}, 0.01));
  CHECK(well_formed_xml(bars));
  CHECK(count(bars, "class=\"errorbar\"") == 3);
  CHECK_THROWS_AS(cli::plot_svg(rows_of({0.5}, 0.0)), ParameterError);
  CHECK(well_formed_xml(cli::plot_svg(rows_of({0.5, 0.0}, 0.0))));
}

TEST_CASE("circuit sweep command writes CSV and SVG") {
  const json cfg{{"command", "circuit-sweep"},
                 {"n_qubits", 2},
                 {"gate_set", "ht_cnot"},
                 {"t_values", {0, 1, 5}},
                 {"n_samples", 200},
                 {"seed", 5},
                 {"output", {{"csv", scratch("s.csv").string()}, {"svg", scratch("s.svg").string()}}}};
  const auto o = run_config(cfg);
  REQUIRE(o.code == cli::kExitOk);
  const json rows = json::parse(o.out).at("result").at("rows");
  REQUIRE(rows.size() == 3);
  const std::string csv = slurp(scratch("s.csv"));
  CHECK(count(csv, "\n") == 4);
  CHECK(csv.rfind("t,delta_estimate,stderr,n_samples,seed\n0,", 0) == 0);
  const std::string svg = slurp(scratch("s.svg"));
  CHECK(well_formed_xml(svg));
  CHECK(count(svg, "class=\"marker\"") == 3);

  json bad = cfg;
  bad["n_qubits"] = 4;
  CHECK(run_config(bad).code == cli::kExitInvalidConfig);
  bad = cfg;
  bad.erase("seed");
  CHECK(run_config(bad).code == cli::kExitInvalidConfig);
  bad = cfg;
  bad["t_values"] = {1, -2};
  CHECK(run_config(bad).code == cli::kExitInvalidConfig);
}

TEST_CASE("unwritable output is an I/O failure") {
  const auto o = run_config({{"command", "decouple-run"},
                             {"fixture", "bell-identity"},
                             {"source", "clifford1q"},
                             {"output", {{"json", "/nonexistent/dir/r.json"}}}});
  CHECK(o.code == cli::kExitFailure);
  CHECK(json::parse(o.err).at("error") == "io");
}

TEST_CASE("command line binary") {
  const std::string bin = QDEC_CLI_PATH;
  const std::string quiet = " >/dev/null 2>&1";
  CHECK(shell(bin + " decouple-run --fixture bell-identity --source clifford1q --seed 7" + quiet) == 0);
  CHECK(shell(bin + " identity-check --d 2 --trials 20000 --seed 1" + quiet) == 0);
  CHECK(shell(bin + " identity-check --d 2 --trials 1 --seed 1" + quiet) == 2);
  CHECK(shell(bin + " identity-check --d 2 --trials 100" + quiet) == 2);
  CHECK(shell(bin + " entropy --fixture bell-identity --unknown-flag" + quiet) == 2);
  CHECK(shell(bin + quiet) == 2);

  const fs::path cfg = scratch("run.json");
  std::ofstream(cfg) << json{{"version", 1}, {"command", "decouple-run"}, {"fixture", "bell-identity"},
                             {"source", "clifford1q"}, {"output", {{"json", scratch("cli.json").string()}}}}
                            .dump();
  CHECK(shell(bin + " --config " + cfg.string() + quiet) == 0);
  CHECK(json::parse(slurp(scratch("cli.json"))).at("result").at("empirical").at("mean") == 1.5);
  CHECK(shell(bin + " --config " + cfg.string() + " entropy --fixture bell-identity" + quiet) == 2);
  CHECK(shell(bin + " --config /nonexistent.json" + quiet) == 2);
}
