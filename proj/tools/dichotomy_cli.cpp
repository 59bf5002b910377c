// Copyright 2026 The Dichotomy Authors
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


// Command-line driver. Talks to the library only through the C interface.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dichotomy/dichotomy.h"
#include "json.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Unwinds to main() with the process exit code.
struct Exit {
  int code;
  std::string message;
};

int exit_code(dq_status s) {
  switch (s) {
    case DQ_OK:
      return 0;
    case DQ_ERR_IO:
      return 2;  // unreadable or malformed input counts as a validation failure
    case DQ_ERR_INTERNAL:
      return 1;
    default:
      return static_cast<int>(s);
  }
}

void check(dq_status s, const std::string& context = {}) {
  if (s == DQ_OK) return;
  std::string msg = dq_last_error();
  if (!context.empty()) msg = context + ": " + msg;
  throw Exit{exit_code(s), msg};
}

[[noreturn]] void invalid(const std::string& msg) { throw Exit{2, msg}; }

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using State = std::unique_ptr<dq_state, Deleter<dq_state, dq_state_free>>;
using Pair = std::unique_ptr<dq_dichotomy, Deleter<dq_dichotomy, dq_dichotomy_free>>;
using Chan = std::unique_ptr<dq_channel, Deleter<dq_channel, dq_channel_free>>;
using Gibbs = std::unique_ptr<dq_gibbs, Deleter<dq_gibbs, dq_gibbs_free>>;

State load_state(const std::string& path) {
  dq_state* s = nullptr;
  check(dq_state_load(path.c_str(), &s), path);
  return State(s);
}

Pair load_pair(const std::string& path) {
  dq_dichotomy* d = nullptr;
  check(dq_dichotomy_load(path.c_str(), &d), path);
  return Pair(d);
}

Chan load_channel(const std::string& path) {
  dq_channel* c = nullptr;
  check(dq_channel_load(path.c_str(), &c), path);
  return Chan(c);
}

std::string take_string(char* s) {
  std::string out(s);
  dq_string_free(s);
  return out;
}

// Fixed formatting: 9 significant digits in files, 6 decimals for humans.
std::string fmt9(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string fmt_human(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// A JSON number rounded to 9 significant digits (shortest round-trip
// printing then reproduces those digits exactly).
ordered_json num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return std::strtod(fmt9(v).c_str(), nullptr);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) invalid("cannot open '" + path + "' for writing");
  out << text;
  if (!out) invalid("failed writing '" + path + "'");
}

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) t = std::strtoll(epoch, nullptr, 10);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct Manifest {
  std::string command;
  std::vector<std::string> inputs;
  ordered_json parameters = ordered_json::object();
  long long seed = 0;
  ordered_json results = ordered_json::object();

  ordered_json to_json() const {
    ordered_json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["parameters"] = parameters;
    j["seed"] = seed;
    j["version"] = dq_version();
    j["timestamp"] = timestamp();
    if (!results.empty()) j["results"] = results;
    return j;
  }
  void write(const std::string& path) const { write_file(path, to_json().dump(2) + "\n"); }
};

dq_metric parse_metric(const std::string& s) {
  if (s == "trace") return DQ_METRIC_TRACE;
  if (s == "purified") return DQ_METRIC_PURIFIED;
  invalid("--metric must be 'trace' or 'purified', got '" + s + "'");
}

// ---- divergence ----

struct DivergenceArgs {
  std::string kind;
  std::optional<double> alpha;
  std::optional<double> eps;
  std::string metric = "trace";
  std::string input;
  bool json = false;
  std::string manifest;
};

int cmd_divergence(const DivergenceArgs& a) {
  static const std::map<std::string, dq_divergence_kind> kinds = {
      {"relent", DQ_RELATIVE_ENTROPY}, {"petz", DQ_PETZ},
      {"sandwiched", DQ_SANDWICHED},   {"dmin", DQ_DMIN},
      {"dmax", DQ_DMAX},               {"var", DQ_VARIANCE},
      {"dh", DQ_HYPOTHESIS_TESTING},   {"smooth-dmax", DQ_SMOOTH_DMAX}};
  const dq_divergence_kind kind = kinds.at(a.kind);
  const bool needs_alpha = kind == DQ_PETZ || kind == DQ_SANDWICHED;
  const bool needs_eps = kind == DQ_HYPOTHESIS_TESTING || kind == DQ_SMOOTH_DMAX;
  if (needs_alpha && !a.alpha) invalid("--alpha is required for --kind " + a.kind);
  if (needs_eps && !a.eps) invalid("--eps is required for --kind " + a.kind);

  Pair pair = load_pair(a.input);
  dq_divergence_params p{a.alpha.value_or(1.0), a.eps.value_or(0.1), parse_metric(a.metric)};
  dq_value v{};
  check(dq_divergence(pair.get(), kind, &p, &v));

  ordered_json params = ordered_json::object();
  if (needs_alpha) params["alpha"] = num(p.alpha);
  if (needs_eps) params["eps"] = num(p.eps);
  if (kind == DQ_SMOOTH_DMAX) params["metric"] = a.metric;

  if (!a.manifest.empty()) {
    Manifest m{"divergence", {a.input}, params};
    m.parameters["kind"] = a.kind;
    m.results["bits"] = v.infinite ? ordered_json("inf") : num(v.bits);
    m.write(a.manifest);
  }
  if (a.json) {
    ordered_json out;
    out["kind"] = a.kind;
    out["bits"] = v.infinite ? ordered_json("inf") : num(v.bits);
    out["params"] = params;
    std::cout << out.dump() << "\n";
    return 0;
  }
  if (v.infinite) {
    std::cout << "inf\n";
    throw Exit{3, a.kind + " is infinite: the support condition fails for this pair"};
  }
  std::cout << fmt_human(v.bits) << "\n";
  return 0;
}

// ---- synthesize / verify ----

struct SynthesizeArgs {
  std::string mode = "exact";
  std::string src, dst, out;
  std::optional<double> eps1, eps2;
  std::string metric = "trace";
  bool json = false;
};

void print_report(const ordered_json& report, bool as_json) {
  if (as_json) {
    std::cout << report.dump() << "\n";
    return;
  }
  for (const auto& [key, value] : report.items()) {
    std::cout << key << " ";
    if (value.is_number()) std::cout << fmt9(value.get<double>());
    else std::cout << (value.is_string() ? value.get<std::string>() : value.dump());
    std::cout << "\n";
  }
}

int cmd_synthesize(const SynthesizeArgs& a) {
  Pair src = load_pair(a.src);
  Pair dst = load_pair(a.dst);
  const bool approx = a.mode == "approx";
  dq_metric metric = DQ_METRIC_TRACE;
  if (approx) {
    if (!a.eps1 || !a.eps2) invalid("approx mode requires --eps1 and --eps2");
    metric = parse_metric(a.metric);
  }

  dq_channel* raw = nullptr;
  dq_synthesis_info info{};
  if (approx) {
    check(dq_synthesize_approx(src.get(), dst.get(), *a.eps1, *a.eps2, metric, &raw, &info));
  } else {
    check(dq_synthesize_exact(src.get(), dst.get(), &raw, &info));
  }
  Chan ch(raw);
  double sigma_error = 0.0, rho_error = 0.0;
  check(dq_verify(ch.get(), src.get(), dst.get(), metric, &sigma_error, &rho_error));

  char* text = nullptr;
  check(dq_channel_to_json(ch.get(), &text));
  write_file(a.out, take_string(text) + "\n");

  ordered_json report;
  report["mode"] = a.mode;
  report["metric"] = metric == DQ_METRIC_TRACE ? "trace" : "purified";
  report["sigma_error"] = num(sigma_error);
  report["rho_error"] = num(rho_error);
  report["borderline"] = info.borderline != 0;
  if (approx) {
    report["certified_bound"] = num(info.certified_bound);
    report["dh_bits"] = num(info.dh_bits);
    report["dmax_bits"] = num(info.dmax_bits);
  }

  Manifest m{"synthesize", {a.src, a.dst}};
  m.parameters["mode"] = a.mode;
  if (approx) {
    m.parameters["eps1"] = num(*a.eps1);
    m.parameters["eps2"] = num(*a.eps2);
    m.parameters["metric"] = a.metric;
  }
  m.parameters["out"] = a.out;
  m.results = report;
  m.write(a.out + ".manifest.json");

  print_report(report, a.json);
  if (info.borderline) std::cerr << "warning: a condition held only within numerical slack\n";
  return 0;
}

struct VerifyArgs {
  std::string channel, src, dst;
  std::string metric = "trace";
  bool json = false;
};

int cmd_verify(const VerifyArgs& a) {
  Chan ch = load_channel(a.channel);
  Pair src = load_pair(a.src);
  Pair dst = load_pair(a.dst);
  double sigma_error = 0.0, rho_error = 0.0;
  check(dq_verify(ch.get(), src.get(), dst.get(), parse_metric(a.metric), &sigma_error,
                  &rho_error));
  ordered_json report;
  report["metric"] = a.metric;
  report["sigma_error"] = num(sigma_error);
  report["rho_error"] = num(rho_error);
  print_report(report, a.json);
  return 0;
}

// ---- sweep ----

struct SweepArgs {
  std::string src, dst, out;
  double eps = 0.1;
  double split = 0.5;
  std::string metric = "trace";
  std::optional<double> rate;
  int n_max = 0;
  std::vector<int> ns;
  bool classical = false;
};

int cmd_sweep(const SweepArgs& a) {
  Pair src = load_pair(a.src);
  Pair dst = load_pair(a.dst);
  dq_experiment cfg{parse_metric(a.metric), a.eps, a.split, a.n_max, a.classical ? 1 : 0};
  const int* ns = a.ns.empty() ? nullptr : a.ns.data();

  Manifest m{"sweep", {a.src, a.dst}};
  m.parameters["eps"] = num(a.eps);
  m.parameters["split"] = num(a.split);
  m.parameters["metric"] = a.metric;
  m.parameters["n_max"] = a.n_max;
  m.parameters["classical"] = a.classical;
  if (!a.ns.empty()) m.parameters["ns"] = a.ns;
  m.parameters["out"] = a.out;

  std::ostringstream csv;
  if (!a.rate) {
    dq_record* recs = nullptr;
    size_t count = 0;
    check(dq_rate_curve(src.get(), dst.get(), &cfg, ns, a.ns.size(), &recs, &count));
    std::unique_ptr<dq_record, Deleter<dq_record, dq_records_free>> guard(recs);
    csv << "n,m,rate,eps1,eps2,achieved_error,certified,dh_bits,dmax_bits\n";
    for (size_t i = 0; i < count; ++i) {
      const dq_record& r = recs[i];
      csv << r.n << "," << (r.unbounded ? std::string("inf") : std::to_string(r.m)) << ","
          << (r.unbounded ? "inf" : fmt9(r.rate)) << "," << fmt9(r.eps1) << ","
          << fmt9(r.eps2) << "," << fmt9(r.achieved_error) << "," << r.certified << ","
          << fmt9(r.dh_bits) << "," << fmt9(r.dmax_bits) << "\n";
    }
    if (count > 0) {
      const dq_record& last = recs[count - 1];
      m.results["final_n"] = last.n;
      m.results["final_rate"] = last.unbounded ? ordered_json("inf") : num(last.rate);
    }
    write_file(a.out, csv.str());
    m.write(a.out + ".manifest.json");
    std::cout << "wrote " << count << " rows to " << a.out << "\n";
    return 0;
  }

  m.parameters["rate"] = num(*a.rate);
  dq_exponent_fit fit{};
  dq_exponent_point* pts = nullptr;
  size_t count = 0;
  const dq_status s =
      dq_error_exponent_sweep(src.get(), dst.get(), &cfg, *a.rate, ns, a.ns.size(), &fit,
                              &pts, &count);
  std::unique_ptr<dq_exponent_point, Deleter<dq_exponent_point, dq_points_free>> guard(pts);
  if (s == DQ_ERR_NEAR_CRITICAL) {
    std::cerr << "lambda1 " << fmt9(fit.lambda1) << "\nlambda2 " << fmt9(fit.lambda2)
              << "\ncritical_rate " << fmt9(fit.critical_rate) << "\n";
  }
  check(s);
  const bool decay = fit.regime == DQ_ERROR_DECAY;
  csv << "n,m,eps," << (decay ? "log2_eps" : "log2_one_minus_eps") << "\n";
  for (size_t i = 0; i < count; ++i) {
    csv << pts[i].n << "," << pts[i].m << "," << fmt9(pts[i].eps) << ","
        << fmt9(pts[i].log2_value) << "\n";
  }
  write_file(a.out, csv.str());

  ordered_json f;
  f["regime"] = decay ? "error-decay" : "strong-converse";
  f["slope_bits_per_n"] = num(fit.slope_bits_per_n);
  f["intercept"] = num(fit.intercept);
  f["r_squared"] = num(fit.r_squared);
  f["fit_start_n"] = fit.fit_start_n;
  f["critical_rate"] = num(fit.critical_rate);
  f["lambda1"] = num(fit.lambda1);
  f["lambda2"] = num(fit.lambda2);
  m.results = f;
  m.write(a.out + ".manifest.json");
  std::cout << f["regime"].get<std::string>() << " slope " << fmt9(fit.slope_bits_per_n)
            << " bits per copy (r^2 " << fmt9(fit.r_squared) << ")\n";
  return 0;
}

// ---- resource ----

struct AthermalityArgs {
  std::string rho1, rho2, hamiltonian;
  std::optional<double> beta;
};

// Accepts a bare Hermitian matrix or {"hamiltonian": ..., "beta": ...}.
Gibbs load_gibbs(const std::string& path, std::optional<double> beta) {
  std::ifstream in(path);
  if (!in) invalid(path + ": cannot open file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    invalid(path + ": invalid JSON: " + e.what());
  }
  if (j.is_object()) {
    if (beta) j["beta"] = *beta;
    dq_gibbs* g = nullptr;
    check(dq_gibbs_from_json(j.dump().c_str(), &g), path);
    return Gibbs(g);
  }
  if (!beta) invalid("--beta is required when the Hamiltonian file holds a bare matrix");
  ordered_json wrapped;
  wrapped["hamiltonian"] = j;
  wrapped["beta"] = *beta;
  dq_gibbs* g = nullptr;
  check(dq_gibbs_from_json(wrapped.dump().c_str(), &g), path);
  return Gibbs(g);
}

const char* verdict_name(dq_athermality_verdict v) {
  switch (v) {
    case DQ_ATHERMALITY_FEASIBLE:
      return "asymptotically-feasible";
    case DQ_ATHERMALITY_STRONG_CONVERSE:
      return "strong-converse";
    case DQ_ATHERMALITY_NEAR_CRITICAL:
      return "near-critical";
  }
  return "unknown";
}

int cmd_athermality(const AthermalityArgs& a) {
  State r1 = load_state(a.rho1);
  State r2 = load_state(a.rho2);
  Gibbs g = load_gibbs(a.hamiltonian, a.beta);
  dq_athermality_report rep{};
  check(dq_athermality(r1.get(), r2.get(), g.get(), &rep));
  ordered_json out;
  out["verdict"] = verdict_name(rep.verdict);
  out["lambda1"] = num(rep.lambda1);
  out["lambda2"] = num(rep.lambda2);
  out["free_energy1"] = num(rep.free_energy1);
  out["free_energy2"] = num(rep.free_energy2);
  std::cout << out.dump() << "\n";
  return 0;
}

struct CoherenceArgs {
  std::string rho;
  std::string sigma;
};

int cmd_coherence(const CoherenceArgs& a) {
  State rho = load_state(a.rho);
  ordered_json out;
  if (a.sigma.empty()) {
    double rate = 0.0;
    check(dq_coherence_rate(rho.get(), &rate));
    out["quantity"] = "distillation";
    out["rate"] = num(rate);
  } else {
    State sigma = load_state(a.sigma);
    double rate = 0.0;
    int unbounded = 0;
    check(dq_dio_rate(rho.get(), sigma.get(), &rate, &unbounded));
    out["quantity"] = "dio-transformation";
    out["rate"] = unbounded ? ordered_json("inf") : num(rate);
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Quantum dichotomy toolkit: divergences, channel synthesis and rate sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dq_version()));

  DivergenceArgs div;
  auto* c_div = app.add_subcommand("divergence", "Evaluate a divergence of a pair in bits");
  c_div->add_option("--kind", div.kind, "Divergence to evaluate")
      ->required()
      ->check(CLI::IsMember(
          {"relent", "petz", "sandwiched", "dmin", "dmax", "var", "dh", "smooth-dmax"}));
  c_div->add_option("--alpha", div.alpha, "Renyi order");
  c_div->add_option("--eps", div.eps, "Smoothing parameter");
  c_div->add_option("--metric", div.metric, "trace or purified")->capture_default_str();
  c_div->add_option("--input", div.input, "Pair JSON file")->required();
  c_div->add_flag("--json", div.json, "Machine-readable output");
  c_div->add_option("--manifest", div.manifest, "Write a run manifest to this file");

  SynthesizeArgs syn;
  auto* c_syn = app.add_subcommand("synthesize", "Build a test-and-prepare channel");
  c_syn->add_option("--mode", syn.mode)->check(CLI::IsMember({"exact", "approx"}))
      ->capture_default_str();
  c_syn->add_option("--src", syn.src, "Source pair JSON")->required();
  c_syn->add_option("--dst", syn.dst, "Target pair JSON")->required();
  c_syn->add_option("--eps1", syn.eps1, "Hypothesis-test error budget");
  c_syn->add_option("--eps2", syn.eps2, "Smoothing radius");
  c_syn->add_option("--metric", syn.metric, "trace or purified")->capture_default_str();
  c_syn->add_option("--out", syn.out, "Channel JSON output")->required();
  c_syn->add_flag("--json", syn.json, "Machine-readable report");

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "Measure how well a channel maps src to dst");
  c_ver->add_option("--channel", ver.channel)->required();
  c_ver->add_option("--src", ver.src)->required();
  c_ver->add_option("--dst", ver.dst)->required();
  c_ver->add_option("--metric", ver.metric)->capture_default_str();
  c_ver->add_flag("--json", ver.json);

  SweepArgs sw;
  auto* c_sw = app.add_subcommand("sweep", "Tensor-power rate curve or error-exponent sweep");
  c_sw->add_option("--src", sw.src)->required();
  c_sw->add_option("--dst", sw.dst)->required();
  c_sw->add_option("--eps", sw.eps, "Total error budget")->capture_default_str();
  c_sw->add_option("--split", sw.split, "Share of --eps given to the hypothesis test")
      ->capture_default_str();
  c_sw->add_option("--metric", sw.metric)->capture_default_str();
  c_sw->add_option("--rate", sw.rate, "Fixed rate m/n for an error-exponent sweep");
  c_sw->add_option("--n-max", sw.n_max, "Largest number of source copies")->required();
  c_sw->add_option("--ns", sw.ns, "Explicit list of n values")->delimiter(',');
  c_sw->add_flag("--classical", sw.classical, "Log-domain route for diagonal pairs");
  c_sw->add_option("--out", sw.out, "CSV output")->required();

  auto* c_res = app.add_subcommand("resource", "Resource-theory rates and verdicts");
  c_res->require_subcommand(1);
  AthermalityArgs ath;
  auto* c_ath = c_res->add_subcommand("athermality", "Thermal-operation feasibility verdict");
  c_ath->add_option("--rho1", ath.rho1)->required();
  c_ath->add_option("--rho2", ath.rho2)->required();
  c_ath->add_option("--hamiltonian", ath.hamiltonian)->required();
  c_ath->add_option("--beta", ath.beta, "Inverse temperature");
  CoherenceArgs coh;
  auto* c_coh = c_res->add_subcommand("coherence", "Coherence distillation or DIO rate");
  c_coh->add_option("--rho", coh.rho)->required();
  c_coh->add_option("--sigma", coh.sigma, "Target state for the DIO transformation rate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (c_div->parsed()) return cmd_divergence(div);
  if (c_syn->parsed()) return cmd_synthesize(syn);
  if (c_ver->parsed()) return cmd_verify(ver);
  if (c_sw->parsed()) return cmd_sweep(sw);
  if (c_ath->parsed()) return cmd_athermality(ath);
  if (c_coh->parsed()) return cmd_coherence(coh);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Exit& e) {
    if (!e.message.empty()) std::cerr << "error: " << e.message << "\n";
    return e.code;
  }
}
