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


// Acceptance runner. Prints one PASS/FAIL line per criterion followed by the
// measured numbers. With --known-red the process succeeds only when the set of
// failing criteria equals the listed set exactly, so an unexpected failure or
// an unexpected pass both turn the run red.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dichotomy/asymptotics.hpp"
#include "dichotomy/channels.hpp"
#include "dichotomy/divergences.hpp"
#include "dichotomy/error.hpp"
#include "dichotomy/json_io.hpp"
#include "dichotomy/oneshot.hpp"
#include "dichotomy/resource.hpp"
#include "helpers.hpp"

using namespace dichotomy;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Random dichotomy with a full-rank sigma and a rho of random rank.
Dichotomy random_instance(int t, std::uint64_t base) {
  const Eigen::Index d = 2 + t % 3;
  const Eigen::Index rank = 1 + (t / 3) % d;
  return Dichotomy(random_density(d, rank, base + 2 * t), random_density(d, d, base + 2 * t + 1));
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

Dichotomy load_pair(const std::string& name) {
  return dichotomy_from_json(read_text_file(testing_util::fixture(name)));
}

// Moves rho2 toward sigma2 until the accept predicate holds.
template <class Accept>
std::optional<Dichotomy> shrink_target(const DensityMatrix& rho2, const DensityMatrix& sigma2,
                                       Accept accept) {
  for (double t = 1.0; t > 1e-4; t *= 0.6) {
    Dichotomy dst(DensityMatrix(sigma2.hermitian() * (1 - t) + rho2.hermitian() * t), sigma2);
    if (accept(dst)) return dst;
  }
  return std::nullopt;
}

Outcome renyi_bounds() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 1e300;
  for (int t = 0; t < 100; ++t) {
    const Dichotomy d = random_instance(t, 10000);
    for (double eps : {0.1, 0.3})
      for (double lo : {0.5, 0.75})
        for (double hi : {1.5, 2.0}) {
          const RenyiBoundReport r = check_prop_renyi_bounds(d, eps, lo, hi);
          worst = std::min({worst, r.slack_dh, r.slack_trace, r.slack_purified});
        }
  }
  const double secs = seconds_since(t0);
  return {worst >= -1e-6 && secs < 120.0,
          "min slack " + fmt("%.3e", worst) + ", " + fmt("%.1f", secs) + " s"};
}

Outcome dh_dmax_chain() {
  double worst = 1e300;
  for (int t = 0; t < 50; ++t) {
    const DhDmaxReport r = check_prop_dh_dmax(random_instance(t, 20000), 0.36, 0.1);
    worst = std::min({worst, r.slack_upper, r.slack_lower});
  }
  return {worst >= -1e-6, "min slack " + fmt("%.3e", worst)};
}

Outcome approx_contract() {
  int found = 0;
  double worst = 1e300;  // smallest margin to the allowed error
  for (int t = 0; t < 400 && found < 50; ++t) {
    const Eigen::Index d = 2 + t % 3;
    const Dichotomy src(random_density(d, 1 + t % (d - 1), 30000 + t),
                        random_density(d, d, 31000 + t));
    const Eigen::Index d2 = 2 + (t / 3) % 2;
    const DensityMatrix rho2 = random_density(d2, d2, 32000 + t);
    const DensityMatrix sigma2 = random_density(d2, d2, 33000 + t);
    const double e1 = 0.05 + 0.05 * (t % 3), e2 = 0.05 + 0.05 * ((t / 2) % 3);
    bool any = false;
    for (Metric m : {Metric::TraceDistance, Metric::PurifiedDistance}) {
      std::optional<ApproxSynthesis> a;
      shrink_target(rho2, sigma2, [&](const Dichotomy& dst) {
        try {
          a.emplace(synthesize_approx(src, dst, e1, e2, m));
        } catch (const PreconditionError&) {
          return false;
        }
        const VerificationReport v = verify_transformation(a->result.channel, src, dst, m);
        const double allowed =
            (m == Metric::TraceDistance ? e1 : std::sqrt(e1)) + e2 + 1e-8;
        worst = std::min({worst, 1e-8 - v.sigma_error, allowed - v.rho_error});
        return true;
      });
      any = any || a.has_value();
    }
    if (any) ++found;
  }
  return {found == 50 && worst >= 0.0,
          std::to_string(found) + " instances, min margin " + fmt("%.3e", worst)};
}

Outcome exact_and_refusal() {
  double worst = 0.0;
  int refused = 0, qubit_exact = 0, general_exact = 0;
  for (int t = 0; t < 50; ++t) {
    const testing_util::BinaryInstance inst = testing_util::satisfiable_binary_instance(40000 + t);
    const BinaryDistribution p(inst.p), q(inst.q);
    const SynthesisResult r = synthesize_exact_qubit(p, q, inst.dst);
    worst = std::max({worst, max_abs(apply(r.channel, p.embed()).matrix() - inst.dst.rho.matrix()),
                      max_abs(apply(r.channel, q.embed()).matrix() - inst.dst.sigma.matrix())});
    ++qubit_exact;
  }
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index d = 2 + t % 3;
    const Dichotomy src(random_density(d, 1 + t % (d - 1), 41000 + t),
                        random_density(d, d, 42000 + t));
    const double dmin = d_min(src).value();
    const Eigen::Index d2 = 2 + (t / 3) % 2;
    const auto dst = shrink_target(random_density(d2, d2, 43000 + t),
                                   random_density(d2, d2, 44000 + t), [&](const Dichotomy& x) {
                                     return d_max(x).value() <= dmin - 1e-6;
                                   });
    if (!dst) continue;
    const SynthesisResult r = synthesize_exact(src, *dst);
    worst = std::max({worst, max_abs(apply(r.channel, src.rho).matrix() - dst->rho.matrix()),
                      max_abs(apply(r.channel, src.sigma).matrix() - dst->sigma.matrix())});
    ++general_exact;
  }
  for (int t = 0; t < 50; ++t) {
    // Full-rank sources have D_min = 0, so any distinct target is out of reach.
    const Dichotomy src = testing_util::random_pair(2 + t % 3, 45000 + t);
    const Dichotomy dst = testing_util::random_pair(2 + (t / 3) % 2, 46000 + t);
    try {
      synthesize_exact(src, dst);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Precondition && static_cast<int>(e.code()) == 4) ++refused;
    }
  }
  return {worst <= 1e-9 && qubit_exact == 50 && general_exact == 50 && refused == 50,
          std::to_string(qubit_exact) + "+" + std::to_string(general_exact) + " exact, max error " +
              fmt("%.3e", worst) + ", " + std::to_string(refused) + "/50 refused"};
}

ExperimentConfig benchmark() {
  ExperimentConfig cfg{load_pair("pair_classical_src.json"), load_pair("pair_classical_dst.json")};
  cfg.eps_total = 0.1;
  cfg.classical_fast_path = true;
  return cfg;
}

Outcome rate_at_1000() {
  // Relative entropies of the benchmark in closed form.
  const double l1 = 0.9 * std::log2(1.8) + 0.1 * std::log2(0.2);
  const double l2 = 0.75 * std::log2(1.5) + 0.25 * std::log2(0.5);
  const double limit = l1 / l2;
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg = benchmark();
  cfg.n_max = 1000;
  const ExperimentRecord r = rate_curve(cfg, {1000}).back();
  const double secs = seconds_since(t0);
  const double rel = std::abs(r.rate - limit) / limit;
  return {rel <= 0.05 && secs < 60.0,
          "rate " + fmt("%.6f", r.rate) + " (m " + std::to_string(r.m) + ") vs limit " +
              fmt("%.6f", limit) + ", off by " + fmt("%.1f", 100 * rel) + "%, " +
              fmt("%.1f", secs) + " s"};
}

Outcome exponent(double rate, Regime want) {
  ExperimentConfig cfg = benchmark();
  cfg.n_max = 2000;
  std::vector<int> ns;
  for (int n = 200; n <= 2000; n += 200) ns.push_back(n);
  const ExponentFit f = error_exponent_sweep(cfg, rate, ns);
  std::vector<double> x, y;
  for (const ExponentPoint& p : f.points) {
    x.push_back(p.n);
    y.push_back(p.log2_value);
  }
  const oracle::Line line = oracle::fit_line(x, y);
  return {f.regime == want && x.size() == ns.size() && line.slope < 0 && line.r2 >= 0.9,
          std::string(to_string(f.regime)) + ", slope " + fmt("%.5f", line.slope) + " bits/n, r2 " +
              fmt("%.4f", line.r2)};
}

Outcome np_vs_sdp() {
  double diff = 0.0, gap = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Dichotomy d = random_instance(t, 50000);
    const HypothesisTestResult r = hypothesis_testing(d, 0.05 + 0.05 * (t % 6), true);
    if (!r.sdp) return {false, "no cross-check on instance " + std::to_string(t)};
    diff = std::max(diff, std::abs(r.value.bits - r.sdp->value_bits));
    gap = std::max({gap, std::abs(r.sdp->duality_gap), std::abs(r.duality_gap)});
  }
  return {diff <= 1e-6 && gap <= 1e-7,
          "max diff " + fmt("%.3e", diff) + ", max gap " + fmt("%.3e", gap)};
}

Outcome qaep_trend() {
  const Dichotomy d = load_pair("pair_qaep.json");
  const double rel = relative_entropy(d).value();
  auto gap = [&](int n) {
    return std::abs(
        smooth_dmax(BlockDichotomy::tensor_power(d, n), 0.1, Metric::TraceDistance).value.bits / n -
        rel);
  };
  const double g2 = gap(2), g6 = gap(6);
  return {g6 < g2, "|rate - D| " + fmt("%.5f", g2) + " at n=2, " + fmt("%.5f", g6) + " at n=6"};
}

Outcome data_processing() {
  double worst = 1e300;
  auto check = [&](const DivergenceValue& before, const DivergenceValue& after) {
    if (after.infinite && !before.infinite) worst = -1e300;
    if (!after.infinite && !before.infinite) worst = std::min(worst, before.bits - after.bits);
  };
  for (int t = 0; t < 10; ++t) {
    const Dichotomy x = testing_util::random_pair(2 + t % 2, 60000 + t);
    const double relx = relative_entropy(x).value();
    const double vx = hypothesis_testing(x, 0.1, false).value.bits;
    const double tx = smooth_dmax(x, 0.1, Metric::TraceDistance).value.bits;
    const double px = smooth_dmax(x, 0.1, Metric::PurifiedDistance).value.bits;
    for (int c = 0; c < 20; ++c) {
      const Channel ch = random_channel(x.dim(), 2 + c % 2, 2 + c % 2, 61000 + 100 * t + c);
      const Dichotomy y(apply(ch, x.rho), apply(ch, x.sigma));
      worst = std::min(worst, relx - relative_entropy(y).value());
      for (double a : {0.5, 0.8, 1.5, 2.0}) {
        check(petz_renyi(x, a), petz_renyi(y, a));
        check(sandwiched_renyi(x, a), sandwiched_renyi(y, a));
      }
      check(d_min(x), d_min(y));
      check(d_max(x), d_max(y));
      worst = std::min(worst, vx - hypothesis_testing(y, 0.1, false).value.bits);
      worst = std::min(worst, tx - smooth_dmax(y, 0.1, Metric::TraceDistance).value.bits);
      worst = std::min(worst, px - smooth_dmax(y, 0.1, Metric::PurifiedDistance).value.bits);
    }
  }
  return {worst >= -1e-6, "10 instances x 20 channels, min slack " + fmt("%.3e", worst)};
}

Outcome resource_checks() {
  const DensityMatrix plus = DensityMatrix::pure(CVector::Constant(2, Complex(1.0, 0.0)));
  const double rate = coherence_distillation_rate(plus);
  double residual = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index d = 2 + t % 3;
    const GibbsSpec g{HermitianMatrix(random_density(d, d, 70000 + t).hermitian() * 3.0),
                      0.5 + 0.25 * (t % 5)};
    residual = std::max(residual,
                        free_energy_report(random_density(d, 1 + t % d, 71000 + t), g).residual);
  }
  bool dio = true;
  for (Eigen::Index d = 2; d <= 4; ++d) dio = dio && is_dio(Channel(dephasing_channel(d)));
  return {std::abs(rate - 1.0) <= 1e-9 && residual <= 1e-8 && dio,
          "coherence " + fmt("%.12f", rate) + ", max residual " + fmt("%.3e", residual) +
              ", dephasing DIO " + (dio ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> known_red, only;
  app.add_option("--known-red", known_red, "Criteria expected to fail");
  app.add_option("--only", only, "Run a subset of criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Renyi bounds on smoothed one-shot divergences", renyi_bounds},
      {"hypothesis-testing / smooth max chain", dh_dmax_chain},
      {"approximate synthesis contract", approx_contract},
      {"exact synthesis and refusals", exact_and_refusal},
      {"benchmark rate at n=1000", rate_at_1000},
      {"error decay below the critical rate", [] { return exponent(2.0, Regime::ErrorDecay); }},
      {"strong converse above the critical rate",
       [] { return exponent(3.5, Regime::StrongConverse); }},
      {"Neyman-Pearson vs SDP", np_vs_sdp},
      {"smoothed rate approaches relative entropy", qaep_trend},
      {"data processing", data_processing},
      {"resource checks", resource_checks},
  };

  std::set<int> failed;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) failed.insert(id);
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }

  std::set<int> expected;
  for (int id : known_red)
    if (only.empty() || std::find(only.begin(), only.end(), id) != only.end()) expected.insert(id);
  if (failed != expected) {
    std::printf("failing set differs from the known-red set\n");
    return 1;
  }
  return 0;
}
