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

#pragma once

#include <vector>

#include "dichotomy/oneshot.hpp"

namespace dichotomy {

struct ExperimentConfig {
  Dichotomy src;
  Dichotomy dst;
  Metric metric = Metric::TraceDistance;
  double eps_total = 0.1;
  /// Fraction of eps_total assigned to the hypothesis test.
  double eps_split = 0.5;
  int n_max = 1;
  /// Use the log-domain type-class route; both pairs must be diagonal.
  bool classical_fast_path = false;

  void validate() const;
  double eps1() const { return eps_split * eps_total; }
  double eps2() const { return (1.0 - eps_split) * eps_total; }
};

struct AchievableM {
  long m = 0;
  /// Any m works (rho2 = sigma2, or the source is perfectly distinguishable).
  bool unbounded = false;
  double dh_bits = 0.0;
  double dmax_bits = 0.0;  // at m
};

/// Largest m with D_h^{eps1}(src^n) >= D_max^{eps2}(dst^m) (slack 1e-8),
/// searched upward from m_start.
AchievableM achievable_m(const ExperimentConfig& cfg, int n, long m_start = 0);

struct ExperimentRecord {
  int n = 0;
  long m = 0;
  bool unbounded = false;
  double rate = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double achieved_error = 0.0;
  /// True when achieved_error is the certified bound rather than measured.
  bool certified = false;
  double dh_bits = 0.0;
  double dmax_bits = 0.0;
};

/// One record per n in `ns` (default: geometric grid up to n_max). The
/// matrix route measures the error of the synthesized channel on rho1^n;
/// the classical route reports the certified bound.
std::vector<ExperimentRecord> rate_curve(const ExperimentConfig& cfg, std::vector<int> ns = {});

std::vector<int> geometric_grid(int n_max);
/// n_max/10, 2 n_max/10, ..., n_max (deduplicated, at least 1).
std::vector<int> linear_grid(int n_max, int points = 10);

enum class Regime { ErrorDecay, StrongConverse };
const char* to_string(Regime r);

struct ExponentPoint {
  int n = 0;
  long m = 0;
  double eps = 0.0;
  double log2_value = 0.0;  // log2(eps) or log2(1 - eps)
};

struct ExponentFit {
  double slope_bits_per_n = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  Regime regime = Regime::ErrorDecay;
  double critical_rate = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::vector<ExponentPoint> points;
  int fit_start_n = 0;
};

/// Error at fixed rate R with m = ceil(R n). Below lambda1/lambda2 the
/// error is the smallest eps_total meeting the synthesis condition; above
/// it the classical route reports the relative-majorization lower bound on
/// any channel's error, and the matrix route the same smallest eps_total.
/// Throws NearCriticalError within 2% of lambda1/lambda2.
ExponentFit error_exponent_sweep(const ExperimentConfig& cfg, double rate, std::vector<int> ns = {});

struct SequenceConditionRow {
  double delta = 0.0;
  double src_lo = 0.0;  // sandwiched D_{1-delta}(rho1||sigma1)
  double dst_hi = 0.0;  // rate * sandwiched D_{1+delta}(rho2||sigma2)
  double gap = 0.0;     // kappa at this delta
  double gamma = 0.0;   // kappa delta / 8 when kappa > 0
};

struct SequenceConditionReport {
  std::vector<double> alphas;
  std::vector<DivergenceValue> src_curve;
  std::vector<DivergenceValue> dst_curve;
  std::vector<SequenceConditionRow> rows;
  bool found = false;
  double delta = 0.0;
  double kappa = 0.0;
  double gamma = 0.0;
};

/// Sandwiched Renyi curves of both pairs on alpha_grid and, for each delta
/// with 1 +- delta on the grid, the margin kappa and the exponent it buys.
SequenceConditionReport check_sequence_condition(const Dichotomy& src, const Dichotomy& dst,
                                                 const std::vector<double>& alpha_grid,
                                                 double rate = 1.0);

}  // namespace dichotomy
