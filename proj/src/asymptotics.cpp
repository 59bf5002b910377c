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

#include "dichotomy/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

#include "dichotomy/classical.hpp"
#include "dichotomy/error.hpp"

namespace dichotomy {
namespace {

constexpr double kConditionSlack = 1e-8;
constexpr double kNearCriticalBand = 0.02;
constexpr long kMaxM = 100000000;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> to_vector(const RVector& v) { return {v.data(), v.data() + v.size()}; }

// One-shot quantities on tensor powers, either on type classes or in
// block form.
class Engine {
 public:
  virtual ~Engine() = default;
  virtual DivergenceValue dh(int n, double eps) = 0;
  virtual double dmax(long m, double eps) = 0;
};

class ClassicalEngine : public Engine {
 public:
  ClassicalEngine(const ExperimentConfig& cfg, Metric metric)
      : p1_(to_vector(cfg.src.rho.hermitian().diagonal())),
        q1_(to_vector(cfg.src.sigma.hermitian().diagonal())),
        p2_(to_vector(cfg.dst.rho.hermitian().diagonal())),
        q2_(to_vector(cfg.dst.sigma.hermitian().diagonal())),
        metric_(metric) {}

  DivergenceValue dh(int n, double eps) override {
    return classical_dh(ClassicalPair::tensor_power(p1_, q1_, n), eps);
  }
  double dmax(long m, double eps) override {
    if (m == 0) return 0.0;
    const ClassicalPair pair = ClassicalPair::tensor_power(p2_, q2_, static_cast<int>(m));
    const ClassicalSmoothing s = metric_ == Metric::TraceDistance ? classical_dmax_trace(pair, eps)
                                                                  : classical_dmax_purified(pair, eps);
    return s.value.value();
  }
  ClassicalPair source(int n) const { return ClassicalPair::tensor_power(p1_, q1_, n); }
  ClassicalPair target(long m) const {
    return ClassicalPair::tensor_power(p2_, q2_, static_cast<int>(m));
  }

 private:
  std::vector<double> p1_, q1_, p2_, q2_;
  Metric metric_;
};

class MatrixEngine : public Engine {
 public:
  MatrixEngine(const ExperimentConfig& cfg, Metric metric)
      : src_(cfg.src), dst_(cfg.dst), metric_(metric) {}

  DivergenceValue dh(int n, double eps) override { return test(n, eps).value; }
  double dmax(long m, double eps) override {
    if (m == 0) return 0.0;
    return smooth(m, eps).value.value();
  }

  const BlockHypothesisTest& test(int n, double eps) {
    auto key = std::make_pair(n, eps);
    auto it = tests_.find(key);
    if (it == tests_.end()) {
      it = tests_.emplace(key, hypothesis_testing(BlockDichotomy::tensor_power(src_, n), eps)).first;
    }
    return it->second;
  }
  const BlockSmoothMax& smooth(long m, double eps) {
    auto key = std::make_pair(m, eps);
    auto it = smooth_.find(key);
    if (it == smooth_.end()) {
      it = smooth_
               .emplace(key, smooth_dmax(BlockDichotomy::tensor_power(dst_, static_cast<int>(m)),
                                         eps, metric_))
               .first;
    }
    return it->second;
  }
  const BlockDichotomy& target(long m) {
    auto it = targets_.find(m);
    if (it == targets_.end()) {
      it = targets_.emplace(m, BlockDichotomy::tensor_power(dst_, static_cast<int>(m))).first;
    }
    return it->second;
  }

 private:
  Dichotomy src_, dst_;
  Metric metric_;
  std::map<std::pair<int, double>, BlockHypothesisTest> tests_;
  std::map<std::pair<long, double>, BlockSmoothMax> smooth_;
  std::map<long, BlockDichotomy> targets_;
};

std::unique_ptr<Engine> make_engine(const ExperimentConfig& cfg) {
  if (cfg.classical_fast_path) return std::make_unique<ClassicalEngine>(cfg, cfg.metric);
  return std::make_unique<MatrixEngine>(cfg, cfg.metric);
}

bool same_state(const DensityMatrix& a, const DensityMatrix& b) { return trace_distance(a, b) <= 1e-12; }

AchievableM search_m(Engine& engine, const ExperimentConfig& cfg, int n, long m_start) {
  AchievableM out;
  if (same_state(cfg.dst.rho, cfg.dst.sigma)) {
    out.unbounded = true;
    return out;
  }
  const DivergenceValue dh = engine.dh(n, cfg.eps1());
  out.dh_bits = dh.value();
  if (dh.infinite) {
    out.unbounded = true;
    out.dmax_bits = kInf;
    return out;
  }
  std::map<long, double> cache;
  auto value = [&](long m) {
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, engine.dmax(m, cfg.eps2())).first;
    return it->second;
  };
  auto ok = [&](long m) { return value(m) <= dh.bits + kConditionSlack; };

  long good = std::max(0L, m_start);
  if (!ok(good)) {
    long lo = 0, hi = good;  // ok(0) always holds: dmax of a trivial pair is 0
    while (hi - lo > 1) {
      const long mid = lo + (hi - lo) / 2;
      (ok(mid) ? lo : hi) = mid;
    }
    good = lo;
  } else {
    long step = 1;
    while (ok(good + step)) {
      good += step;
      step *= 2;
      if (good > kMaxM) throw NumericalError("achievable_m: search did not terminate");
    }
    long lo = good, hi = good + step;
    while (hi - lo > 1) {
      const long mid = lo + (hi - lo) / 2;
      (ok(mid) ? lo : hi) = mid;
    }
    good = lo;
  }
  out.m = good;
  out.dmax_bits = value(good);
  return out;
}

// Distance of the synthesized channel's output on rho1^n from rho2^m,
// evaluated in block form without materializing the channel.
double measured_error(MatrixEngine& engine, const ExperimentConfig& cfg, int n, long m) {
  if (m == 0) return 0.0;
  const BlockHypothesisTest& t = engine.test(n, cfg.eps1());
  const BlockSmoothMax& s = engine.smooth(m, cfg.eps2());
  const BlockDichotomy& target = engine.target(m);
  const double accept = 1.0 - t.type1;
  BlockOperator out;
  if (1.0 - t.type2 <= 1e-12) {
    out = target.sigma * t.type1 - s.witness * (-accept);
  } else {
    const double w = t.type1 / (1.0 - t.type2);
    out = target.sigma * w - s.witness * (w * t.type2 - accept);
  }
  if (cfg.metric == Metric::TraceDistance) return trace_distance(out, target.rho);
  return std::sqrt(std::max(0.0, 1.0 - std::clamp(fidelity(out, target.rho), 0.0, 1.0)));
}

double certified_bound(const ExperimentConfig& cfg) {
  return cfg.metric == Metric::TraceDistance ? cfg.eps1() + cfg.eps2()
                                             : std::sqrt(cfg.eps1()) + cfg.eps2();
}

struct Fit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double k = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / k;
    my += y[i] / k;
  }
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  Fit f;
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  if (syy > 0.0) {
    double res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = y[i] - f.intercept - f.slope * x[i];
      res += e * e;
    }
    f.r2 = std::clamp(1.0 - res / syy, 0.0, 1.0);
  }
  return f;
}

// Smallest x in [lo, hi] with pred(x), pred monotone (false then true).
// Returns lo if pred(lo), hi if !pred(hi).
double bisect(const std::function<bool(double)>& pred, double lo, double hi) {
  if (pred(lo)) return lo;
  if (!pred(hi)) return hi;
  for (int it = 0; it < 64 && hi - lo > 1e-9 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!(eps_total > 0.0 && eps_total < 1.0)) throw ValidationError("eps_total must lie in (0,1)");
  if (!(eps_split > 0.0 && eps_split < 1.0)) throw ValidationError("eps_split must lie in (0,1)");
  if (n_max < 1) throw ValidationError("n_max must be at least 1");
  if (classical_fast_path && !(src.is_classical() && dst.is_classical())) {
    throw ValidationError("classical fast path needs diagonal states in both pairs");
  }
}

AchievableM achievable_m(const ExperimentConfig& cfg, int n, long m_start) {
  cfg.validate();
  if (n < 1 || n > cfg.n_max) throw ValidationError("achievable_m: n must lie in [1, n_max]");
  auto engine = make_engine(cfg);
  return search_m(*engine, cfg, n, m_start);
}

std::vector<int> geometric_grid(int n_max) {
  std::vector<int> ns;
  double x = 1.0;
  while (static_cast<int>(std::lround(x)) < n_max) {
    const int n = static_cast<int>(std::lround(x));
    if (ns.empty() || ns.back() != n) ns.push_back(n);
    x = std::max(x * 1.5, x + 1.0);
  }
  ns.push_back(n_max);
  return ns;
}

std::vector<int> linear_grid(int n_max, int points) {
  std::vector<int> ns;
  for (int k = 1; k <= points; ++k) {
    const int n = std::max(1, static_cast<int>(std::lround(static_cast<double>(n_max) * k / points)));
    if (ns.empty() || ns.back() != n) ns.push_back(n);
  }
  return ns;
}

std::vector<ExperimentRecord> rate_curve(const ExperimentConfig& cfg, std::vector<int> ns) {
  cfg.validate();
  if (ns.empty()) ns = geometric_grid(cfg.n_max);
  std::sort(ns.begin(), ns.end());
  auto engine = make_engine(cfg);
  std::vector<ExperimentRecord> records;
  long previous = 0;
  for (int n : ns) {
    if (n < 1 || n > cfg.n_max) throw ValidationError("rate_curve: n outside [1, n_max]");
    const AchievableM a = search_m(*engine, cfg, n, previous);
    ExperimentRecord r;
    r.n = n;
    r.m = a.m;
    r.unbounded = a.unbounded;
    r.rate = a.unbounded ? kInf : static_cast<double>(a.m) / n;
    r.eps1 = cfg.eps1();
    r.eps2 = cfg.eps2();
    r.dh_bits = a.dh_bits;
    r.dmax_bits = a.dmax_bits;
    if (cfg.classical_fast_path || a.unbounded) {
      r.certified = true;
      r.achieved_error = a.unbounded ? 0.0 : certified_bound(cfg);
    } else {
      r.achieved_error = measured_error(static_cast<MatrixEngine&>(*engine), cfg, n, a.m);
    }
    previous = a.m;
    records.push_back(r);
  }
  return records;
}

const char* to_string(Regime r) {
  return r == Regime::ErrorDecay ? "error-decay" : "strong-converse";
}

ExponentFit error_exponent_sweep(const ExperimentConfig& cfg, double rate, std::vector<int> ns) {
  cfg.validate();
  if (!(rate > 0.0) || !std::isfinite(rate)) throw ValidationError("rate must be positive and finite");
  ExponentFit fit;
  fit.lambda1 = relative_entropy(cfg.src).value();
  fit.lambda2 = relative_entropy(cfg.dst).value();
  fit.critical_rate = fit.lambda2 > 0.0 ? fit.lambda1 / fit.lambda2 : kInf;
  if (std::isfinite(fit.critical_rate) &&
      std::abs(rate - fit.critical_rate) <= kNearCriticalBand * fit.critical_rate) {
    std::ostringstream msg;
    msg.precision(9);
    msg << "rate " << rate << " is within 2% of the critical rate " << fit.critical_rate
        << " (lambda1 = " << fit.lambda1 << ", lambda2 = " << fit.lambda2 << ")";
    throw NearCriticalError(msg.str(), fit.lambda1, fit.lambda2);
  }
  fit.regime = rate < fit.critical_rate ? Regime::ErrorDecay : Regime::StrongConverse;
  if (ns.empty()) ns = linear_grid(cfg.n_max);
  std::sort(ns.begin(), ns.end());

  auto engine = make_engine(cfg);
  // Floors below which eps is not resolved: the SDP route stops near 1e-12.
  const double floor_log2 = cfg.classical_fast_path ? -1000.0 : -40.0;
  for (int n : ns) {
    if (n < 1 || n > cfg.n_max) throw ValidationError("error_exponent_sweep: n outside [1, n_max]");
    ExponentPoint pt;
    pt.n = n;
    pt.m = static_cast<long>(std::ceil(rate * n - 1e-9));
    auto feasible = [&](double eps) {
      const DivergenceValue dh = engine->dh(n, cfg.eps_split * eps);
      if (dh.infinite) return true;
      return engine->dmax(pt.m, (1.0 - cfg.eps_split) * eps) <= dh.bits + kConditionSlack;
    };
    if (fit.regime == Regime::ErrorDecay) {
      pt.log2_value = bisect([&](double x) { return feasible(std::exp2(x)); }, floor_log2,
                             std::log2(1.0 - 1e-12));
      pt.eps = std::exp2(pt.log2_value);
    } else if (cfg.classical_fast_path) {
      auto& ce = static_cast<ClassicalEngine&>(*engine);
      pt.log2_value = lorenz_converse_log2_complement(ce.source(n), ce.target(pt.m));
      pt.eps = -std::expm1(pt.log2_value * std::log(2.0));
    } else {
      // feasible(1 - 2^y) is monotone decreasing in y.
      const double y = bisect([&](double y) { return !feasible(-std::expm1(y * std::log(2.0))); },
                              floor_log2, std::log2(1e-12));
      pt.log2_value = y;
      pt.eps = -std::expm1(y * std::log(2.0));
    }
    fit.points.push_back(pt);
  }

  const std::size_t start = fit.points.size() / 2 >= 2 ? fit.points.size() - (fit.points.size() + 1) / 2 : 0;
  std::vector<double> xs, ys;
  for (std::size_t i = start; i < fit.points.size(); ++i) {
    if (!std::isfinite(fit.points[i].log2_value)) continue;
    xs.push_back(fit.points[i].n);
    ys.push_back(fit.points[i].log2_value);
  }
  fit.fit_start_n = start < fit.points.size() ? fit.points[start].n : 0;
  if (xs.size() >= 2) {
    const Fit f = least_squares(xs, ys);
    fit.slope_bits_per_n = f.slope;
    fit.intercept = f.intercept;
    fit.r_squared = f.r2;
  }
  return fit;
}

SequenceConditionReport check_sequence_condition(const Dichotomy& src, const Dichotomy& dst,
                                                 const std::vector<double>& alpha_grid,
                                                 double rate) {
  SequenceConditionReport rep;
  auto curve = [](const Dichotomy& d, double a) {
    return std::abs(a - 1.0) < 1e-12 ? relative_entropy(d) : sandwiched_renyi(d, a);
  };
  for (double a : alpha_grid) {
    // The sandwiched family is only defined from 1/2 upward.
    if (!(a >= 0.5) || !std::isfinite(a)) continue;
    rep.alphas.push_back(a);
    rep.src_curve.push_back(curve(src, a));
    rep.dst_curve.push_back(curve(dst, a));
  }
  auto find = [&](double a) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < rep.alphas.size(); ++i) {
      if (std::abs(rep.alphas[i] - a) < 1e-9) return static_cast<std::ptrdiff_t>(i);
    }
    return -1;
  };
  for (std::size_t i = 0; i < rep.alphas.size(); ++i) {
    const double delta = 1.0 - rep.alphas[i];
    if (!(delta > 1e-12)) continue;
    const std::ptrdiff_t j = find(1.0 + delta);
    if (j < 0) continue;
    SequenceConditionRow row;
    row.delta = delta;
    row.src_lo = rep.src_curve[i].value();
    row.dst_hi = rate * rep.dst_curve[static_cast<std::size_t>(j)].value();
    row.gap = (std::isinf(row.src_lo) && std::isinf(row.dst_hi)) ? -kInf : row.src_lo - row.dst_hi;
    row.gamma = row.gap > 0.0 ? row.gap * delta / 8.0 : 0.0;
    if (row.gap > 0.0 && (!rep.found || row.gamma > rep.gamma)) {
      rep.found = true;
      rep.delta = delta;
      rep.kappa = row.gap;
      rep.gamma = row.gamma;
    }
    rep.rows.push_back(row);
  }
  std::sort(rep.rows.begin(), rep.rows.end(),
            [](const SequenceConditionRow& a, const SequenceConditionRow& b) { return a.delta < b.delta; });
  return rep;
}

}  // namespace dichotomy
