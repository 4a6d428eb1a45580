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

#include "qdec/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "qdec/entropy.hpp"
#include "qdec/errors.hpp"
#include "qdec/montecarlo.hpp"
#include "qdec/serialize.hpp"

#ifndef QDEC_BUILD_ID
#define QDEC_BUILD_ID "unknown"
#endif

namespace qdec::cli {

using nlohmann::json;

namespace {

// Failure to read or write a file named by the config.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("I/O error: " + what) {}
};

// Input files are part of the config, so failing to read one is a config error.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error("input error: " + what) {}
};

const std::vector<std::string> kCommands{"entropy", "design-delta", "circuit-sweep", "decouple-run", "identity-check"};

const std::map<std::string, std::set<std::string>> kCommandKeys{
    {"entropy", {"fixture", "instance", "eps"}},
    {"design-delta", {"source", "method"}},
    {"circuit-sweep", {"n_qubits", "gate_set", "t_values", "n_samples", "batches", "seed"}},
    {"decouple-run", {"fixture", "instance", "source", "trials", "seed", "eps", "delta", "method"}},
    {"identity-check", {"d", "trials", "seed"}},
};

const std::set<std::string> kCommonKeys{"version", "command", "tolerances", "output"};

const std::map<std::string, std::set<std::string>> kSourceKeys{
    {"haar", {"kind", "dim"}},
    {"identity", {"kind", "dim"}},
    {"clifford1q", {"kind"}},
    {"ensemble", {"kind", "path"}},
    {"circuit", {"kind", "n_qubits", "t", "gate_set"}},
};

// -- schema helpers ------------------------------------------------------------

void require_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.contains(key)) throw ParameterError("unknown field '" + key + "' in " + where);
}

long long get_int(const json& obj, const std::string& key, long long lo, long long hi) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ParameterError("'" + key + "' must be an integer");
  const long long x = v.get<long long>();
  if (x < lo || x > hi)
    throw ParameterError("'" + key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

double get_number(const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ParameterError("'" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParameterError("'" + key + "' must be finite");
  return x;
}

std::string get_string(const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_string()) throw ParameterError("'" + key + "' must be a string");
  return v.get<std::string>();
}

std::uint64_t get_seed(const json& obj) {
  const json& v = obj.at("seed");
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
  throw ParameterError("'seed' must be a nonnegative integer");
}

void check_choice(const std::string& value, const std::vector<std::string>& choices, const std::string& key) {
  if (std::find(choices.begin(), choices.end(), value) != choices.end()) return;
  std::string list;
  for (const auto& c : choices) list += (list.empty() ? "" : ", ") + c;
  throw ParameterError("'" + key + "' must be one of " + list + ", got '" + value + "'");
}

json normalize_source(const json& src, const std::string& command) {
  json s = src.is_string() ? json{{"kind", src}} : src;
  if (!s.is_object()) throw ParameterError("'source' must be a string or an object");
  if (!s.contains("kind")) throw ParameterError("'source' needs a 'kind'");
  const std::string kind = get_string(s, "kind");
  std::vector<std::string> kinds{"haar", "identity", "clifford1q", "ensemble"};
  if (command == "decouple-run") kinds.push_back("circuit");
  check_choice(kind, kinds, "source.kind");
  require_keys(s, kSourceKeys.at(kind), "source");
  if (s.contains("dim")) get_int(s, "dim", 2, 64);
  if ((kind == "haar" || kind == "identity") && command == "design-delta" && !s.contains("dim"))
    throw ParameterError("source kind '" + kind + "' needs 'dim' for design-delta");
  if (kind == "ensemble") {
    if (!s.contains("path")) throw ParameterError("source kind 'ensemble' needs 'path'");
    get_string(s, "path");
  }
  if (kind == "circuit") {
    if (!s.contains("n_qubits") || !s.contains("t")) throw ParameterError("source kind 'circuit' needs 'n_qubits' and 't'");
    get_int(s, "n_qubits", 2, circuits::kMaxSampleQubits);
    get_int(s, "t", 0, 1000000);
    if (!s.contains("gate_set")) s["gate_set"] = "haar_u4";
    check_choice(get_string(s, "gate_set"), {"haar_u4", "ht_cnot"}, "source.gate_set");
  }
  return s;
}

bool source_is_stochastic(const json& source) {
  const std::string kind = source.at("kind");
  return kind == "haar" || kind == "circuit";
}

sdp::Options sdp_options(const json& cfg) {
  const json& t = cfg.at("tolerances");
  sdp::Options o;
  o.feas_tol = t.at("feas_tol").get<double>();
  o.gap_tol = t.at("gap_tol").get<double>();
  o.max_iter = t.at("max_iter").get<int>();
  return o;
}

// -- inputs --------------------------------------------------------------------

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

decouple::Instance load_instance(const std::string& path) {
  const json j = read_json_file(path);
  require_keys(j, {"state", "channel"}, "instance file '" + path + "'");
  if (!j.contains("state") || !j.contains("channel")) throw ParameterError("instance file needs 'state' and 'channel'");
  const json& ch = j.at("channel");
  require_keys(ch, {"in", "out", "choi"}, "instance channel");
  return {operator_from_json(j.at("state")),
          Channel(layout_from_json(ch.at("in")), layout_from_json(ch.at("out")), operator_from_json(ch.at("choi")))};
}

decouple::Instance instance_of(const json& cfg) {
  if (cfg.contains("fixture")) return fixture(cfg.at("fixture").get<std::string>());
  return load_instance(cfg.at("instance").get<std::string>());
}

designs::UnitaryEnsemble ensemble_of(const json& source, int default_dim) {
  const std::string kind = source.at("kind");
  const int dim = source.contains("dim") ? source.at("dim").get<int>() : default_dim;
  if (kind == "haar") return designs::UnitaryEnsemble::haar(dim);
  if (kind == "identity") return designs::UnitaryEnsemble::uniform({Matrix::Identity(dim, dim)});
  if (kind == "clifford1q") return designs::clifford1q_ensemble();
  return designs::ensemble_from_json(read_json_file(source.at("path").get<std::string>()));
}

circuits::GateSet gate_set_of(const std::string& name) {
  return name == "ht_cnot" ? circuits::GateSet::from_ensemble(circuits::ht_cnot_gates()) : circuits::GateSet::haar_u4();
}

std::string method_name(designs::DeltaMethod m) {
  return m == designs::DeltaMethod::Diamond ? "diamond" : "choi_trace_bounds";
}

designs::DeltaMethod method_of(const json& cfg) {
  return cfg.at("method") == "diamond" ? designs::DeltaMethod::Diamond : designs::DeltaMethod::ChoiTraceBounds;
}

// -- report pieces -------------------------------------------------------------

json entropy_json(const entropy::EntropyResult& r) {
  json j{{"value", r.value}, {"certificate_gap", r.certificate_gap}, {"upper_bound", r.upper_bound},
         {"sdp_iterations", r.sdp_iterations}};
  return j;
}

json bound_json(const decouple::BoundTerms& b) {
  return json{{"value", b.value},     {"h_omega", b.h_omega},   {"h_rho", b.h_rho},
              {"factor", b.factor},   {"additive", b.additive}, {"delta", b.spec.delta},
              {"eps", b.spec.eps}};
}

json instance_json(const decouple::Instance& inst) {
  return json{{"d_a", inst.d_a()},
              {"d_b", inst.channel().out_dim()},
              {"d_r", inst.r_layout().total_dim()},
              {"a_labels", inst.a_labels()},
              {"rho_trace", inst.rho().matrix().trace().real()}};
}

json sweep_row_json(const circuits::SweepRow& r) {
  return json{{"t", r.t},
              {"delta_estimate", r.delta_estimate},
              {"stderr", r.stderr_estimate},
              {"n_samples", r.n_samples},
              {"seed", r.seed}};
}

void round_numbers(json& j) {
  if (j.is_number_float()) {
    j = round_sig(j.get<double>());
  } else if (j.is_structured()) {
    for (auto& v : j) round_numbers(v);
  }
}

std::string format_g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// -- commands ------------------------------------------------------------------

ExperimentReport run_entropy(const json& cfg) {
  const auto opts = sdp_options(cfg);
  const decouple::Instance inst = instance_of(cfg);
  const auto a = inst.a_labels();
  const auto ap = inst.a_prime_labels();
  const Operator& choi = inst.channel().choi();

  ExperimentReport rep;
  json& res = rep.body["result"];
  res["instance"] = instance_json(inst);
  const auto h_rho = entropy::min_entropy(inst.rho(), a, opts);
  const auto h_omega = entropy::min_entropy(choi, ap, opts);
  res["rho"]["h_min"] = entropy_json(h_rho);
  res["choi"]["h_min"] = entropy_json(h_omega);
  if (std::abs(inst.rho().matrix().trace().real() - 1.0) < 1e-9)
    res["rho"]["h_conditional"] = entropy::vn_conditional_entropy(inst.rho(), a);
  if (std::abs(choi.matrix().trace().real() - 1.0) < 1e-9)
    res["choi"]["h_conditional"] = entropy::vn_conditional_entropy(choi, ap);
  res["bound_haar"] = decouple::bound_from_entropies(h_omega.value, h_rho.value, inst.d_a(), {}).value;
  if (cfg.contains("eps")) {
    const double eps = cfg.at("eps");
    const auto s_rho = entropy::smooth_min_entropy(inst.rho(), a, eps, opts);
    const auto s_omega = entropy::smooth_min_entropy(choi, ap, eps, opts);
    res["rho"]["h_min_smooth"] = entropy_json(s_rho);
    res["choi"]["h_min_smooth"] = entropy_json(s_omega);
    res["bound_smoothed"] = bound_json(decouple::bound_from_entropies(
        s_omega.value, s_rho.value, inst.d_a(), {decouple::BoundMode::Smooth, 0.0, eps}));
  }
  return rep;
}

ExperimentReport run_design_delta(const json& cfg) {
  const auto opts = sdp_options(cfg);
  const auto e = ensemble_of(cfg.at("source"), 2);
  const auto method = method_of(cfg);
  const auto delta = designs::design_delta(e, method, opts);
  const double d = e.dim();
  ExperimentReport rep;
  json& res = rep.body["result"];
  res["dim"] = e.dim();
  res["size"] = e.is_haar() ? json(nullptr) : json(e.size());
  res["method"] = method_name(method);
  res["delta"] = {{"lower", delta.lower}, {"upper", delta.upper}};
  res["bound_factor"] = std::sqrt(1.0 + 4.0 * delta.upper * d * d * d * d);
  return rep;
}

ExperimentReport run_circuit_sweep(const json& cfg) {
  const int n = cfg.at("n_qubits");
  std::vector<int> ts = cfg.at("t_values").get<std::vector<int>>();
  const std::uint64_t seed = get_seed(cfg);
  ExperimentReport rep;
  rep.rows = circuits::circuit_design_sweep(n, gate_set_of(cfg.at("gate_set")), ts, cfg.at("n_samples"), seed,
                                            cfg.at("batches"));
  const auto fit = circuits::fit_depth_constant(n, rep.rows);
  json& res = rep.body["result"];
  res["rows"] = json::array();
  for (const auto& r : rep.rows) {
    json row = sweep_row_json(r);
    // Depth the fitted model assigns to this delta.
    if (fit.points > 0 && r.delta_estimate > 0.0 && r.delta_estimate < 1.0)
      row["depth_model"] = decouple::circuit_depth(n, r.delta_estimate, fit.c);
    res["rows"].push_back(row);
  }
  res["depth_fit"] = {{"c", fit.c}, {"residual", fit.residual}, {"points", fit.points}};
  return rep;
}

ExperimentReport run_decouple(const json& cfg) {
  using decouple::BoundMode;
  const auto opts = sdp_options(cfg);
  const double tol = cfg.at("tolerances").at("inequality_tol");
  const decouple::Instance inst = instance_of(cfg);
  const json& src = cfg.at("source");
  const std::string kind = src.at("kind");
  const int d = inst.d_a();
  const long long trials = cfg.contains("trials") ? cfg.at("trials").get<long long>() : 0;
  const std::uint64_t seed = cfg.contains("seed") ? get_seed(cfg) : 0;
  if (src.contains("dim") && src.at("dim").get<int>() != d)
    throw LayoutError("source dimension differs from d_A = " + std::to_string(d));

  ExperimentReport rep;
  json& res = rep.body["result"];
  res["instance"] = instance_json(inst);

  // Source and the delta its bound is evaluated with.
  std::optional<decouple::Source> source;
  std::optional<double> delta;
  bool certified = false;
  json delta_json = nullptr;
  if (kind == "circuit") {
    circuits::CircuitModel m{src.at("n_qubits"), gate_set_of(src.at("gate_set")), src.at("t")};
    source = decouple::Source::circuit(m, trials);
    if (cfg.contains("delta")) {
      delta = cfg.at("delta").get<double>();
      delta_json = {{"value", *delta}, {"origin", "config"}};
    }
  } else if (kind == "haar") {
    source = decouple::Source::haar(trials);
    delta = 0.0;
    certified = true;
    delta_json = {{"lower", 0.0}, {"upper", 0.0}, {"origin", "exact"}};
  } else {
    auto e = ensemble_of(src, d);
    if (e.dim() != d) throw LayoutError("ensemble dimension differs from d_A = " + std::to_string(d));
    if (e.size() <= decouple::kMaxExactEnsemble && trials > 0)
      throw ParameterError("'trials' does not apply to an ensemble averaged exactly");
    const auto method = method_of(cfg);
    const auto db = designs::design_delta(e, method, opts);
    delta = db.upper;
    certified = true;
    delta_json = {{"lower", db.lower}, {"upper", db.upper}, {"origin", method_name(method)}};
    source = decouple::Source::ensemble(std::move(e), trials);
  }
  res["source"] = src;
  res["delta"] = delta_json;

  const auto emp = decouple::empirical_decoupling_error(inst, *source, seed);
  res["empirical"] = {{"mean", emp.mean},   {"stderr", emp.stderr_mean}, {"mean_square", emp.mean_square},
                      {"n", emp.n},         {"exact", emp.exact}};

  const auto haar = decouple::decoupling_bound(inst, {BoundMode::Haar}, opts);
  res["bound_haar"] = bound_json(haar);
  std::optional<decouple::BoundTerms> approx;
  if (delta) {
    approx = decouple::bound_from_entropies(haar.h_omega, haar.h_rho, d, {BoundMode::Approx, *delta, 0.0});
    res["bound_approx_design"] = bound_json(*approx);
  } else {
    res["bound_approx_design"] = nullptr;
  }
  if (cfg.contains("eps")) {
    const auto sm =
        decouple::decoupling_bound(inst, {BoundMode::Smooth, delta.value_or(0.0), cfg.at("eps").get<double>()}, opts);
    res["bound_smoothed"] = bound_json(sm);
  }
  const double dd = d;
  res["xi_square_trace_norm"] = {{"used", 4.0}, {"exact", std::pow(2.0 * (1.0 - 1.0 / (dd * dd)), 2)}};

  // Only bounds evaluated with an exact or certified delta are audited.
  json check;
  if (certified && approx) {
    const double allowance = emp.exact ? tol : 3.0 * emp.stderr_mean + tol;
    check = {{"bound", approx->value}, {"allowance", allowance}, {"slack", approx->value - emp.mean}};
    if (emp.mean > approx->value + allowance) {
      rep.violation = true;
      rep.violation_message = "empirical decoupling error " + format_g12(emp.mean) + " exceeds the bound " +
                              format_g12(approx->value) + " beyond tolerance " + format_g12(allowance);
    }
    check["passed"] = !rep.violation;
  } else {
    check = {{"passed", nullptr}, {"reason", "delta of the source is not certified"}};
  }
  res["check"] = check;
  return rep;
}

ExperimentReport run_identity_check(const json& cfg) {
  const double tol = cfg.at("tolerances").at("inequality_tol");
  const int d = cfg.at("d");
  const auto id = decouple::haar_l2_identity(qmath::identity_channel(SystemLayout{{"A", d}}, SystemLayout{{"B", d}}),
                                             qmath::identity_channel(SystemLayout{{"A~", d}}, SystemLayout{{"R", d}}),
                                             cfg.at("trials"), get_seed(cfg));
  ExperimentReport rep;
  json& res = rep.body["result"];
  res["lhs"] = {{"mean", id.lhs.mean}, {"stderr", id.lhs.stderr_mean}, {"n", id.lhs.n}};
  res["rhs"] = id.rhs;
  // Identity maps make the sample constant, leaving only rounding noise in the stderr.
  if (id.lhs.stderr_mean > 1e-12 * std::max(1.0, std::abs(id.rhs)))
    res["z_score"] = (id.lhs.mean - id.rhs) / id.lhs.stderr_mean;
  else
    res["z_score"] = nullptr;
  const double allowance = 5.0 * id.lhs.stderr_mean + tol;
  if (std::abs(id.lhs.mean - id.rhs) > allowance) {
    rep.violation = true;
    rep.violation_message = "2-norm identity off by " + format_g12(id.lhs.mean - id.rhs) + ", more than " +
                            format_g12(allowance);
  }
  res["check"] = {{"allowance", allowance}, {"passed", !rep.violation}};
  return rep;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

// -- public --------------------------------------------------------------------

std::string build_id() { return QDEC_BUILD_ID; }

double round_sig(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  return std::stod(format_g12(x));
}

json normalize_config(const json& config) {
  if (!config.is_object()) throw ParameterError("config must be a JSON object");
  json cfg = config;
  if (cfg.contains("version")) {
    if (get_int(cfg, "version", 0, 1000) != kConfigVersion)
      throw ParameterError("unsupported config version, expected " + std::to_string(kConfigVersion));
  }
  cfg["version"] = kConfigVersion;
  if (!cfg.contains("command")) throw ParameterError("config needs a 'command'");
  const std::string command = get_string(cfg, "command");
  check_choice(command, kCommands, "command");

  std::set<std::string> allowed = kCommonKeys;
  allowed.insert(kCommandKeys.at(command).begin(), kCommandKeys.at(command).end());
  require_keys(cfg, allowed, "config for '" + command + "'");

  json tol{{"feas_tol", 1e-8}, {"gap_tol", 1e-7}, {"max_iter", 200}, {"inequality_tol", 1e-9}};
  if (cfg.contains("tolerances")) {
    const json& t = cfg.at("tolerances");
    if (!t.is_object()) throw ParameterError("'tolerances' must be an object");
    require_keys(t, {"feas_tol", "gap_tol", "max_iter", "inequality_tol"}, "tolerances");
    for (const char* key : {"feas_tol", "gap_tol"})
      if (t.contains(key)) {
        if (!(get_number(t, key) > 0.0)) throw ParameterError(std::string("'") + key + "' must be positive");
        tol[key] = t.at(key);
      }
    if (t.contains("max_iter")) tol["max_iter"] = get_int(t, "max_iter", 1, 100000);
    if (t.contains("inequality_tol")) {
      if (!(get_number(t, "inequality_tol") >= 0.0)) throw ParameterError("'inequality_tol' must be nonnegative");
      tol["inequality_tol"] = t.at("inequality_tol");
    }
  }
  cfg["tolerances"] = tol;

  json out = json::object();
  if (cfg.contains("output")) {
    const json& o = cfg.at("output");
    if (!o.is_object()) throw ParameterError("'output' must be an object");
    require_keys(o, command == "circuit-sweep" ? std::set<std::string>{"json", "csv", "svg"} : std::set<std::string>{"json"},
                 "output for '" + command + "'");
    for (const auto& [key, value] : o.items()) {
      if (!value.is_string() || value.get<std::string>().empty())
        throw ParameterError("output path '" + key + "' must be a nonempty string");
      out[key] = value;
    }
  }
  cfg["output"] = out;

  if (cfg.contains("fixture") && cfg.contains("instance"))
    throw ParameterError("give either 'fixture' or 'instance', not both");
  if (command == "entropy" || command == "decouple-run") {
    if (!cfg.contains("fixture") && !cfg.contains("instance"))
      throw ParameterError("'" + command + "' needs a 'fixture' or an 'instance' path");
    if (cfg.contains("fixture")) check_choice(get_string(cfg, "fixture"), fixture_names(), "fixture");
    if (cfg.contains("instance")) get_string(cfg, "instance");
  }
  if (cfg.contains("eps")) {
    const double eps = get_number(cfg, "eps");
    if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("'eps' must lie in (0, 1)");
  }
  if (cfg.contains("source") || command == "design-delta" || command == "decouple-run") {
    if (!cfg.contains("source")) throw ParameterError("'" + command + "' needs a 'source'");
    cfg["source"] = normalize_source(cfg.at("source"), command);
  }
  if (command == "design-delta" || command == "decouple-run") {
    if (!cfg.contains("method")) cfg["method"] = "choi_trace_bounds";
    check_choice(get_string(cfg, "method"), {"choi_trace_bounds", "diamond"}, "method");
  }
  if (cfg.contains("trials")) get_int(cfg, "trials", 2, 100000000);
  if (cfg.contains("seed")) get_seed(cfg);

  bool stochastic = command == "circuit-sweep" || command == "identity-check";
  if (command == "decouple-run") {
    stochastic = source_is_stochastic(cfg.at("source"));
    if (stochastic && !cfg.contains("trials"))
      throw ParameterError("Monte Carlo source '" + cfg.at("source").at("kind").get<std::string>() + "' needs 'trials'");
    if (cfg.contains("delta")) {
      if (cfg.at("source").at("kind") != "circuit")
        throw ParameterError("'delta' may only be given for a circuit source; other sources certify their own");
      if (!(get_number(cfg, "delta") >= 0.0)) throw ParameterError("'delta' must be nonnegative");
    }
  }
  if (stochastic && !cfg.contains("seed")) throw ParameterError("'" + command + "' is stochastic and needs a 'seed'");

  if (command == "circuit-sweep") {
    for (const char* key : {"n_qubits", "t_values", "n_samples"})
      if (!cfg.contains(key)) throw ParameterError(std::string("'circuit-sweep' needs '") + key + "'");
    get_int(cfg, "n_qubits", 2, circuits::kMaxSweepQubits);
    if (!cfg.contains("gate_set")) cfg["gate_set"] = "haar_u4";
    check_choice(get_string(cfg, "gate_set"), {"haar_u4", "ht_cnot"}, "gate_set");
    const json& ts = cfg.at("t_values");
    if (!ts.is_array() || ts.empty()) throw ParameterError("'t_values' must be a nonempty array");
    for (const auto& t : ts)
      if (!t.is_number_integer() || t.get<long long>() < 0 || t.get<long long>() > 1000000)
        throw ParameterError("'t_values' entries must be integers in [0, 1000000]");
    get_int(cfg, "n_samples", 2, 10000000);
    if (!cfg.contains("batches")) cfg["batches"] = 10;
    get_int(cfg, "batches", 2, 1000);
  }
  if (command == "identity-check") {
    if (!cfg.contains("d") || !cfg.contains("trials")) throw ParameterError("'identity-check' needs 'd' and 'trials'");
    get_int(cfg, "d", 2, 16);
  }
  return cfg;
}

std::vector<std::string> fixture_names() { return {"bell-identity", "bell-trace", "product-mixed", "measurement"}; }

decouple::Instance fixture(const std::string& name) {
  const SystemLayout a{{"A", 2}};
  const SystemLayout b{{"B", 2}};
  const SystemLayout r{{"R", 2}};
  if (name == "bell-identity") return {qmath::max_entangled(2, "A", "R"), qmath::identity_channel(a, b)};
  if (name == "product-mixed")
    return {qmath::tensor(qmath::completely_mixed(a), qmath::completely_mixed(r)), qmath::identity_channel(a, b)};
  if (name == "measurement") return {qmath::max_entangled(2, "A", "R"), qmath::dephasing_channel(a, b)};
  if (name == "bell-trace") {
    const SystemLayout as_ae{{"AS", 2}, {"AE", 4}};
    const std::vector<std::string> traced{"AE"};
    const Operator rho = qmath::tensor(qmath::max_entangled(2, "AS", "R"), qmath::completely_mixed(SystemLayout{{"AE", 4}}));
    return {qmath::align(rho, SystemLayout{{"AS", 2}, {"AE", 4}, {"R", 2}}),
            qmath::partial_trace_channel(as_ae, traced, b)};
  }
  check_choice(name, fixture_names(), "fixture");
  throw ParameterError("unknown fixture");
}

ExperimentReport run(const json& config) {
  const json cfg = normalize_config(config);
  const std::string command = cfg.at("command");
  ExperimentReport rep;
  if (command == "entropy") rep = run_entropy(cfg);
  else if (command == "design-delta") rep = run_design_delta(cfg);
  else if (command == "circuit-sweep") rep = run_circuit_sweep(cfg);
  else if (command == "decouple-run") rep = run_decouple(cfg);
  else rep = run_identity_check(cfg);

  json embedded = cfg;
  embedded.erase("output");  // output paths do not change the result
  json body{{"command", command}, {"build_id", build_id()}, {"config", embedded},
            {"result", rep.body.at("result")}, {"violation", rep.violation}};
  round_numbers(body);
  rep.body = std::move(body);
  for (auto& r : rep.rows) {
    r.delta_estimate = round_sig(r.delta_estimate);
    r.stderr_estimate = round_sig(r.stderr_estimate);
  }
  return rep;
}

std::string report_json(const ExperimentReport& report) { return report.body.dump(2) + "\n"; }

std::string report_csv(const std::vector<circuits::SweepRow>& rows) {
  std::string s = "t,delta_estimate,stderr,n_samples,seed\n";
  for (const auto& r : rows)
    s += std::to_string(r.t) + "," + format_g12(r.delta_estimate) + "," + format_g12(r.stderr_estimate) + "," +
         std::to_string(r.n_samples) + "," + std::to_string(r.seed) + "\n";
  return s;
}

json load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open report '" + path.string() + "'");
  return json::parse(in);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
}

void emit_report(const ExperimentReport& report, Format format, const std::filesystem::path& path) {
  write_atomic(path, format == Format::Json ? report_json(report) : report_csv(report.rows));
}

std::string plot_svg(const std::vector<circuits::SweepRow>& input) {
  if (input.size() < 2) throw ParameterError("a sweep plot needs at least 2 rows");
  std::vector<circuits::SweepRow> rows = input;
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.t < b.t; });

  constexpr double kW = 640, kH = 400, kLeft = 70, kRight = 20, kTop = 20, kBottom = 50;
  constexpr double kFloor = 1e-16;  // log axis floor for zero estimates
  auto lg = [&](double v) { return std::log10(std::max(v, kFloor)); };
  double ylo = lg(rows.front().delta_estimate), yhi = ylo;
  for (const auto& r : rows) {
    ylo = std::min(ylo, lg(r.delta_estimate - r.stderr_estimate > 0 ? r.delta_estimate - r.stderr_estimate
                                                                     : r.delta_estimate));
    yhi = std::max(yhi, lg(r.delta_estimate + r.stderr_estimate));
  }
  ylo = std::floor(ylo);
  yhi = std::max(std::ceil(yhi), ylo + 1.0);
  const double tlo = rows.front().t, thi = std::max<double>(rows.back().t, tlo + 1.0);
  auto px = [&](double t) { return kLeft + (t - tlo) / (thi - tlo) * (kW - kLeft - kRight); };
  auto py = [&](double v) { return kTop + (yhi - lg(v)) / (yhi - ylo) * (kH - kTop - kBottom); };
  auto num = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return std::string(buf);
  };

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW
    << " " << kH << "\">\n"
    << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
  const double x0 = kLeft, x1 = kW - kRight, y0 = kTop, y1 = kH - kBottom;
  s << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
    << "<line x1=\"" << x0 << "\" y1=\"" << y1 << "\" x2=\"" << x1 << "\" y2=\"" << y1 << "\"/>\n"
    << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1 << "\"/>\n"
    << "</g>\n";
  s << "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = static_cast<int>(ylo); k <= static_cast<int>(yhi); ++k) {
    const double y = py(std::pow(10.0, k));
    s << "<line x1=\"" << x0 - 4 << "\" y1=\"" << num(y) << "\" x2=\"" << x0 << "\" y2=\"" << num(y)
      << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << x0 - 8 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">1e" << k << "</text>\n";
  }
  for (const auto& r : rows)
    s << "<text x=\"" << num(px(r.t)) << "\" y=\"" << y1 + 16 << "\" text-anchor=\"middle\">" << r.t << "</text>\n";
  s << "</g>\n";
  s << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kH - 10
    << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">depth t</text>\n"
    << "<text x=\"16\" y=\"" << (y0 + y1) / 2 << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\""
    << " transform=\"rotate(-90 16 " << (y0 + y1) / 2 << ")\">delta estimate</text>\n";

  s << "<polyline class=\"series\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t k = 0; k < rows.size(); ++k)
    s << (k ? " " : "") << num(px(rows[k].t)) << "," << num(py(rows[k].delta_estimate));
  s << "\"/>\n";
  for (const auto& r : rows) {
    if (!(r.stderr_estimate > 0.0)) continue;
    const double x = px(r.t);
    s << "<line class=\"errorbar\" x1=\"" << num(x) << "\" y1=\"" << num(py(r.delta_estimate - r.stderr_estimate))
      << "\" x2=\"" << num(x) << "\" y2=\"" << num(py(r.delta_estimate + r.stderr_estimate))
      << "\" stroke=\"gray\"/>\n";
  }
  for (const auto& r : rows)
    s << "<circle class=\"marker\" cx=\"" << num(px(r.t)) << "\" cy=\"" << num(py(r.delta_estimate))
      << "\" r=\"3\" fill=\"steelblue\"/>\n";
  s << "</svg>\n";
  return s.str();
}

void emit_plot(const std::vector<circuits::SweepRow>& rows, const std::filesystem::path& path) {
  write_atomic(path, plot_svg(rows));
}

std::pair<std::string, int> classify(const std::exception& e) {
  if (dynamic_cast<const ParameterError*>(&e) || dynamic_cast<const InputError*>(&e) ||
      dynamic_cast<const json::exception*>(&e))
    return {"invalid_config", kExitInvalidConfig};
  if (dynamic_cast<const LayoutError*>(&e)) return {"layout", kExitInvalidConfig};
  if (dynamic_cast<const DomainError*>(&e)) return {"domain", kExitInvalidConfig};
  if (dynamic_cast<const SizeError*>(&e)) return {"size", kExitInvalidConfig};
  if (dynamic_cast<const NumericError*>(&e)) return {"numeric", kExitNumeric};
  if (dynamic_cast<const IoError*>(&e)) return {"io", kExitFailure};
  return {"internal", kExitFailure};
}

int run_and_emit(const json& config, std::ostream& out, std::ostream& err) {
  try {
    const json cfg = normalize_config(config);
    const ExperimentReport rep = run(cfg);
    const json& o = cfg.at("output");
    if (o.contains("json")) {
      const std::filesystem::path path = o.at("json").get<std::string>();
      emit_report(rep, Format::Json, path);
      std::filesystem::path meta = path;
      meta += ".meta.json";
      const json m{{"timestamp", utc_timestamp()}, {"build_id", build_id()}, {"threads", thread_count()},
                   {"report", path.filename().string()}};
      write_atomic(meta, m.dump(2) + "\n");
    }
    if (o.contains("csv")) emit_report(rep, Format::Csv, o.at("csv").get<std::string>());
    if (o.contains("svg")) emit_plot(rep.rows, o.at("svg").get<std::string>());
    out << report_json(rep);
    if (rep.violation) {
      err << json{{"error", "inequality_violation"}, {"message", rep.violation_message}}.dump() << "\n";
      return kExitViolation;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    const auto [kind, code] = classify(e);
    err << json{{"error", kind}, {"message", e.what()}}.dump() << "\n";
    return code;
  }
}

}  // namespace qdec::cli
