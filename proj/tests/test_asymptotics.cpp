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


#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "dichotomy/asymptotics.hpp"
#include "dichotomy/error.hpp"
#include "helpers.hpp"

using namespace dichotomy;
using testing_util::diag_state;

namespace {

const std::vector<double> kP{0.9, 0.1}, kQ{0.5, 0.5}, kR{0.75, 0.25};
const DensityMatrix kMixed = DensityMatrix::maximally_mixed(2);

ExperimentConfig benchmark() {
  ExperimentConfig c{Dichotomy(diag_state(kP), diag_state(kQ)),
                     Dichotomy(diag_state(kR), diag_state(kQ))};
  c.eps_total = 0.1;
  c.n_max = 2000;
  c.classical_fast_path = true;
  return c;
}

double limit() { return oracle::relent(kP, kQ) / oracle::relent(kR, kQ); }

std::vector<int> range(int from, int to, int step) {
  std::vector<int> v;
  for (int n = from; n <= to; n += step) v.push_back(n);
  return v;
}

}  // namespace

TEST(Config, Validation) {
  ExperimentConfig c = benchmark();
  c.eps_total = 1.5;
  EXPECT_THROW(c.validate(), ValidationError);
  c = benchmark();
  c.eps_split = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = benchmark();
  c.src = Dichotomy(random_density(2, 2, 1), random_density(2, 2, 2));
  EXPECT_THROW(c.validate(), ValidationError);  // fast path needs diagonal pairs
  EXPECT_NEAR(benchmark().eps1(), 0.05, 1e-15);
  EXPECT_NEAR(benchmark().eps2(), 0.05, 1e-15);
}

TEST(Grids, GeometricAndLinear) {
  const std::vector<int> g = geometric_grid(1000);
  ASSERT_FALSE(g.empty());
  EXPECT_EQ(g.front(), 1);
  EXPECT_EQ(g.back(), 1000);
  for (size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
  const std::vector<int> l = linear_grid(2000, 10);
  EXPECT_EQ(l.size(), 10u);
  EXPECT_EQ(l.back(), 2000);
}

TEST(AchievableM, EqualTargetIsUnbounded) {
  ExperimentConfig c = benchmark();
  c.dst = Dichotomy(kMixed, kMixed);
  EXPECT_TRUE(achievable_m(c, 10).unbounded);
  const auto recs = rate_curve(c, {1, 10});
  for (const auto& r : recs) EXPECT_TRUE(r.unbounded);
}

TEST(AchievableM, SingleCopyMatchesOneShotValues) {
  const DensityMatrix zero = DensityMatrix::basis(2, 0);
  const DensityMatrix plus = DensityMatrix::pure(CVector::Constant(2, Complex(1.0, 0.0)));
  ExperimentConfig c{Dichotomy(zero, kMixed), Dichotomy(plus, kMixed)};
  c.eps_total = 0.2;
  const AchievableM a = achievable_m(c, 1);
  ASSERT_FALSE(a.unbounded);
  EXPECT_GE(a.m, 0);
  const double dh = hypothesis_testing(c.src, c.eps1(), false).value.bits;
  EXPECT_NEAR(a.dh_bits, dh, 1e-9);
  auto dmax_at = [&](long m) {
    const BlockDichotomy b = BlockDichotomy::tensor_power(c.dst, static_cast<int>(m));
    return smooth_dmax(b, c.eps2(), c.metric).value.bits;
  };
  if (a.m > 0) EXPECT_GE(dh - dmax_at(a.m), -1e-8);
  EXPECT_LT(dh, dmax_at(a.m + 1));
}

TEST(RateCurve, ClassicalBenchmarkIncreasesTowardLimit) {
  const auto recs = rate_curve(benchmark(), {10, 100, 1000});
  ASSERT_EQ(recs.size(), 3u);
  for (size_t i = 1; i < recs.size(); ++i) EXPECT_GT(recs[i].rate, recs[i - 1].rate);
  EXPECT_LT(recs.back().rate, limit());
  EXPECT_GT(recs.back().rate, 0.75 * limit());
  for (const auto& r : recs) {
    EXPECT_TRUE(r.certified);
    EXPECT_LE(r.achieved_error, 0.1 + 1e-12);
    EXPECT_GE(r.dh_bits - r.dmax_bits, -1e-8);
  }
}

TEST(RateCurve, MatrixPathMeasuresError) {
  ExperimentConfig c{Dichotomy(DensityMatrix::basis(2, 0), kMixed),
                     Dichotomy(diag_state(kR), kMixed)};
  c.eps_total = 0.2;
  c.n_max = 3;
  const auto recs = rate_curve(c, {1, 2, 3});
  for (const auto& r : recs) {
    EXPECT_FALSE(r.certified);
    EXPECT_LE(r.achieved_error, 0.2 + 1e-8);
  }
}

TEST(RateCurve, EqualPairsApproachOneFromBelow) {
  ExperimentConfig c = benchmark();
  c.dst = c.src;
  const auto recs = rate_curve(c, {10, 100, 1000});
  for (size_t i = 1; i < recs.size(); ++i) EXPECT_GE(recs[i].rate, recs[i - 1].rate);
  EXPECT_LE(recs.back().rate, 1.0);
  EXPECT_GT(recs.back().rate, 0.8);
}

TEST(ExponentSweep, BelowCriticalRateErrorDecays) {
  const ExponentFit f = error_exponent_sweep(benchmark(), 2.0, range(200, 2000, 200));
  EXPECT_EQ(f.regime, Regime::ErrorDecay);
  EXPECT_LT(f.slope_bits_per_n, 0.0);
  EXPECT_GE(f.r_squared, 0.9);
  EXPECT_NEAR(f.critical_rate, limit(), 1e-9);
  std::vector<double> x, y;
  for (const auto& p : f.points) {
    x.push_back(p.n);
    y.push_back(p.log2_value);
    EXPECT_NEAR(p.log2_value, std::log2(p.eps), 1e-9);
  }
  const oracle::Line line = oracle::fit_line(x, y);
  EXPECT_LT(line.slope, 0.0);
  EXPECT_GE(line.r2, 0.9);
}

TEST(ExponentSweep, AboveCriticalRateSuccessVanishes) {
  const ExponentFit f = error_exponent_sweep(benchmark(), 3.5, range(200, 2000, 200));
  EXPECT_EQ(f.regime, Regime::StrongConverse);
  EXPECT_LT(f.slope_bits_per_n, 0.0);
  EXPECT_GE(f.r_squared, 0.9);
  for (const auto& p : f.points) EXPECT_NEAR(p.log2_value, std::log2(1.0 - p.eps), 1e-6);
}

TEST(ExponentSweep, NearCriticalRateIsRefused) {
  try {
    error_exponent_sweep(benchmark(), limit(), range(100, 300, 100));
    FAIL() << "expected a near-critical refusal";
  } catch (const NearCriticalError& e) {
    EXPECT_NEAR(e.lambda1(), oracle::relent(kP, kQ), 1e-9);
    EXPECT_NEAR(e.lambda2(), oracle::relent(kR, kQ), 1e-9);
  }
  EXPECT_THROW(error_exponent_sweep(benchmark(), 1.01 * limit(), range(100, 300, 100)),
               NearCriticalError);
}

TEST(ExponentSweep, EqualPairsAtHalfRateDecay) {
  ExperimentConfig c = benchmark();
  c.dst = c.src;
  const ExponentFit f = error_exponent_sweep(c, 0.5, {100, 400, 800, 1200});
  EXPECT_EQ(f.regime, Regime::ErrorDecay);
  EXPECT_LT(f.points.back().eps, f.points.front().eps);
}

TEST(SequenceCondition, StrongerSourceHasMargin) {
  const std::vector<double> grid{0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 1.05, 1.1, 1.2, 1.5, 2.0};
  const ExperimentConfig c = benchmark();
  const SequenceConditionReport r = check_sequence_condition(c.src, c.dst, grid, 2.0);
  ASSERT_TRUE(r.found);
  EXPECT_GT(r.kappa, 0.0);
  EXPECT_GT(r.gamma, 0.0);
  EXPECT_NEAR(r.gamma, r.kappa * r.delta / 8.0, 1e-12);
  const ExponentFit f = error_exponent_sweep(c, 2.0, range(200, 2000, 200));
  EXPECT_GE(-f.slope_bits_per_n, r.gamma);
}

TEST(SequenceCondition, IdenticalPairsHaveNoMargin) {
  const std::vector<double> grid{0.5, 0.7, 0.9, 1.1, 1.3, 2.0};
  const Dichotomy d = testing_util::random_pair(2, 3);
  const SequenceConditionReport r = check_sequence_condition(d, d, grid, 1.0);
  EXPECT_FALSE(r.found);
  for (const auto& row : r.rows) EXPECT_LE(row.gap, 1e-12);
}

// ---- invariants ----

TEST(AsymptoticsProperty, AchievableMMonotone) {
  ExperimentConfig c = benchmark();
  long prev = -1;
  for (int n : {5, 10, 20, 40, 80, 160}) {
    const long m = achievable_m(c, n).m;
    EXPECT_GE(m, prev);
    prev = m;
  }
  prev = -1;
  for (double e : {0.02, 0.05, 0.1, 0.2, 0.4}) {
    c.eps_total = e;
    const long m = achievable_m(c, 100).m;
    EXPECT_GE(m, prev);
    prev = m;
  }
}

TEST(AsymptoticsProperty, ClassicalAndMatrixPathsAgree) {
  ExperimentConfig fast = benchmark();
  fast.eps_total = 0.3;
  ExperimentConfig slow = fast;
  slow.classical_fast_path = false;
  for (int n = 1; n <= 6; ++n) {
    const AchievableM a = achievable_m(fast, n), b = achievable_m(slow, n);
    if (a.m > 6) continue;
    EXPECT_EQ(a.m, b.m) << "n=" << n;
    EXPECT_NEAR(a.dh_bits, b.dh_bits, 1e-6);
    if (a.m > 0) EXPECT_NEAR(a.dmax_bits, b.dmax_bits, 1e-6);
  }
}

TEST(AsymptoticsProperty, RegimeSignMatchesSideOfCriticalRate) {
  for (double rate : {1.5, 2.4, 3.2, 4.0}) {
    const ExponentFit f = error_exponent_sweep(benchmark(), rate, range(200, 1200, 200));
    EXPECT_EQ(f.regime, rate < limit() ? Regime::ErrorDecay : Regime::StrongConverse);
    EXPECT_LT(f.slope_bits_per_n, 0.0) << "rate " << rate;
  }
}
