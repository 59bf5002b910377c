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
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "dichotomy/channels.hpp"
#include "dichotomy/classical.hpp"
#include "dichotomy/error.hpp"
#include "dichotomy/oneshot.hpp"
#include "helpers.hpp"

using namespace dichotomy;
using testing_util::diag_state;
using testing_util::random_pair;
using testing_util::to_m2;

namespace {

const DensityMatrix kZero = DensityMatrix::basis(2, 0);
const DensityMatrix kMixed = DensityMatrix::maximally_mixed(2);
const std::vector<double> kP{0.9, 0.1}, kQ{0.5, 0.5};

Dichotomy classical() { return Dichotomy(diag_state(kP), diag_state(kQ)); }

// Smallest D_max over real qubit states within trace distance eps of rho,
// by a dense grid over the Bloch disc (x, z).
double dmax_trace_bloch_grid(const oracle::M2& rho, const oracle::M2& sigma, double eps) {
  double best = std::numeric_limits<double>::infinity();
  const int steps = 800;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j <= steps; ++j) {
      const double x = -1.0 + 2.0 * i / steps, z = -1.0 + 2.0 * j / steps;
      if (x * x + z * z > 1.0) continue;
      const oracle::M2 t = oracle::qubit(x, 0.0, z);
      if (oracle::trace_distance2(t, rho) > eps) continue;
      best = std::min(best, oracle::dmax2(t, sigma));
    }
  }
  return best;
}

}  // namespace

TEST(HypothesisTesting, SmallEpsRecoversDMin) {
  EXPECT_NEAR(hypothesis_testing(Dichotomy(kZero, kMixed), 1e-6).value.bits, 1.0, 1e-5);
}

TEST(HypothesisTesting, ClassicalExampleIsOneBit) {
  const auto r = hypothesis_testing(classical(), 0.1);
  EXPECT_NEAR(r.value.bits, 1.0, 1e-12);
  EXPECT_NEAR(r.value.bits, oracle::dh_bruteforce(kP, kQ, 0.1), 1e-12);
  EXPECT_NEAR(r.type1, 0.1, 1e-12);
  EXPECT_NEAR(r.optimizer.hermitian()(0, 0).real(), 1.0, 1e-12);
  ASSERT_TRUE(r.sdp.has_value());
  EXPECT_NEAR(r.sdp->value_bits, 1.0, 1e-6);
}

TEST(HypothesisTesting, EqualPairAtHalf) {
  const DensityMatrix r = random_density(3, 3, 31);
  const auto h = hypothesis_testing(Dichotomy(r, r), 0.5);
  EXPECT_NEAR(h.value.bits, 1.0, 1e-10);
  const std::vector<double> p{0.2, 0.3, 0.5};
  EXPECT_NEAR(oracle::dh_bruteforce(p, p, 0.5), 1.0, 1e-12);
}

TEST(HypothesisTesting, RejectsEpsOutsideUnitInterval) {
  EXPECT_THROW(hypothesis_testing(classical(), 0.0), ValidationError);
  EXPECT_THROW(hypothesis_testing(classical(), 1.0), ValidationError);
}

TEST(HypothesisTesting, MatchesBruteForceOnClassicalPairs) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 30; ++t) {
    const size_t d = 2 + t % 4;
    const auto p = testing_util::random_distribution(rng, d);
    const auto q = testing_util::random_distribution(rng, d);
    const double eps = 0.05 + 0.1 * (t % 5);
    const double ref = oracle::dh_bruteforce(p, q, eps);
    EXPECT_NEAR(hypothesis_testing(Dichotomy(diag_state(p), diag_state(q)), eps, false).value.bits,
                ref, 1e-10);
    EXPECT_NEAR(classical_oneshot(p, q, eps, ClassicalQuantity::Dh), ref, 1e-10);
  }
}

TEST(SmoothDMax, TinyEpsApproachesDMax) {
  for (int t = 0; t < 5; ++t) {
    const Dichotomy d = random_pair(2 + t % 2, 50 + t);
    for (Metric m : {Metric::TraceDistance, Metric::PurifiedDistance})
      EXPECT_NEAR(smooth_dmax(d, 1e-4, m).value.bits, d_max(d).bits, 2e-3);
  }
}

TEST(SmoothDMax, PureVersusMixedAgainstBlochGrid) {
  const Dichotomy d(kZero, kMixed);
  const SmoothMaxResult r = smooth_dmax(d, 0.1, Metric::TraceDistance);
  EXPECT_LT(r.value.bits, 1.0);
  EXPECT_LE(r.achieved_distance, 0.1 + 1e-9);
  const double grid = dmax_trace_bloch_grid(to_m2(kZero), to_m2(kMixed), 0.1);
  EXPECT_LE(r.value.bits, grid + 1e-7);
  EXPECT_NEAR(r.value.bits, grid, 5e-3);
  // Lower end of the one-shot chain: D_h at the complementary level.
  const double dh = hypothesis_testing(d, 1.0 - 0.1 - 0.05, false).value.bits;
  EXPECT_GE(r.value.bits, dh - std::log2(4.0 / (0.05 * 0.05)) - 1e-6);
}

TEST(SmoothDMax, EqualPairIsZero) {
  const DensityMatrix r = random_density(3, 3, 77);
  for (Metric m : {Metric::TraceDistance, Metric::PurifiedDistance}) {
    const SmoothMaxResult s = smooth_dmax(Dichotomy(r, r), 0.2, m);
    EXPECT_NEAR(s.value.bits, 0.0, 1e-7);
    EXPECT_LT((s.smoothed_state.matrix() - r.matrix()).norm(), 1e-4);
  }
}

TEST(SmoothDMax, ClassicalTraceExample) {
  EXPECT_NEAR(classical_oneshot(kP, kQ, 0.1, ClassicalQuantity::DmaxT), std::log2(1.6), 1e-7);
  EXPECT_NEAR(oracle::dmax_trace_binary_grid(0.9, kQ, 0.1), std::log2(1.6), 1e-5);
  EXPECT_NEAR(smooth_dmax(classical(), 0.1, Metric::TraceDistance).value.bits, std::log2(1.6),
              1e-7);
  EXPECT_NEAR(smooth_dmax(classical(), 0.1, Metric::TraceDistance, true).value.bits,
              std::log2(1.6), 1e-6);
}

TEST(SmoothDMax, ClassicalAndMatrixPathsAgree) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 10; ++t) {
    const size_t d = 2 + t % 3;
    const auto p = testing_util::random_distribution(rng, d);
    const auto q = testing_util::random_distribution(rng, d);
    const Dichotomy x(diag_state(p), diag_state(q));
    for (Metric m : {Metric::TraceDistance, Metric::PurifiedDistance}) {
      EXPECT_NEAR(smooth_dmax(x, 0.15, m).value.bits, smooth_dmax(x, 0.15, m, true).value.bits,
                  1e-6);
    }
  }
}

TEST(SmoothDMax, WitnessStaysInBall) {
  for (int t = 0; t < 10; ++t) {
    const Dichotomy d = random_pair(2 + t % 3, 120 + t);
    for (Metric m : {Metric::TraceDistance, Metric::PurifiedDistance}) {
      const SmoothMaxResult s = smooth_dmax(d, 0.2, m);
      EXPECT_LE(distance(s.smoothed_state, d.rho, m), 0.2 + 1e-9);
      EXPECT_NEAR(d_max(Dichotomy(s.smoothed_state, d.sigma)).bits, s.value.bits, 1e-5);
    }
  }
}

TEST(SmoothDMax, RejectsRankDeficientSigma) {
  EXPECT_THROW(smooth_dmax(Dichotomy(kMixed, kZero), 0.1, Metric::TraceDistance), ValidationError);
}

TEST(PropositionChecks, EqualPair) {
  const DensityMatrix r = random_density(2, 2, 88);
  const DhDmaxReport a = check_prop_dh_dmax(Dichotomy(r, r), 0.5, 0.25);
  EXPECT_GE(a.slack_upper, -1e-6);
  EXPECT_GE(a.slack_lower, -1e-6);
  const RenyiBoundReport b = check_prop_renyi_bounds(Dichotomy(r, r), 0.2, 0.5, 2.0);
  EXPECT_NEAR(b.petz, 0.0, 1e-9);
  EXPECT_NEAR(b.sandwiched, 0.0, 1e-9);
  EXPECT_GE(b.slack_dh, -1e-6);
  EXPECT_GE(b.slack_trace, -1e-6);
  EXPECT_GE(b.slack_purified, -1e-6);
}

TEST(PropositionChecks, RandomQubitPair) {
  const DhDmaxReport a = check_prop_dh_dmax(random_pair(2, 5), 0.36, 0.1);
  EXPECT_GE(a.slack_upper, -1e-6);
  EXPECT_GE(a.slack_lower, -1e-6);
  const RenyiBoundReport b = check_prop_renyi_bounds(random_pair(2, 6), 0.2, 0.5, 2.0);
  EXPECT_GE(b.slack_dh, -1e-6);
  EXPECT_GE(b.slack_trace, -1e-6);
  EXPECT_GE(b.slack_purified, -1e-6);
}

TEST(PropositionChecks, ClassicalPairs) {
  const DhDmaxReport a = check_prop_dh_dmax(classical(), 0.25, 0.2);
  EXPECT_GE(a.slack_upper, -1e-6);
  EXPECT_GE(a.slack_lower, -1e-6);
  const Dichotomy d4(tensor_power(diag_state(kP), 4), tensor_power(diag_state(kQ), 4));
  const RenyiBoundReport b = check_prop_renyi_bounds(d4, 0.2, 0.5, 2.0);
  EXPECT_GE(b.slack_dh, -1e-6);
  EXPECT_GE(b.slack_trace, -1e-6);
  EXPECT_GE(b.slack_purified, -1e-6);
}

TEST(PropositionChecks, ValidatesParameters) {
  EXPECT_THROW(check_prop_dh_dmax(classical(), 0.5, 0.6), ValidationError);
  EXPECT_THROW(check_prop_renyi_bounds(classical(), 0.2, 1.0, 2.0), ValidationError);
  EXPECT_THROW(check_prop_renyi_bounds(classical(), 0.2, 0.5, 1.0), ValidationError);
}

TEST(BlockDichotomy, QubitTensorPowerMatchesDense) {
  const Dichotomy d = random_pair(2, 15);
  const BlockDichotomy b = BlockDichotomy::tensor_power(d, 3);
  const Dichotomy dense(tensor_power(d.rho, 3), tensor_power(d.sigma, 3));
  EXPECT_EQ(b.rho.total_dim(), 8);
  EXPECT_NEAR(hypothesis_testing(b, 0.2).value.bits, hypothesis_testing(dense, 0.2, false).value.bits,
              1e-9);
  EXPECT_NEAR(smooth_dmax(b, 0.2, Metric::TraceDistance).value.bits,
              smooth_dmax(dense, 0.2, Metric::TraceDistance).value.bits, 1e-6);
}

// ---- invariants ----

TEST(OneshotProperty, NeymanPearsonMatchesSdp) {
  for (int t = 0; t < 50; ++t) {
    const Dichotomy d(random_density(2 + t % 3, 1 + t % 2, 3000 + t),
                      random_density(2 + t % 3, 2 + t % 3, 4000 + t));
    const double eps = 0.05 + 0.05 * (t % 6);
    const HypothesisTestResult r = hypothesis_testing(d, eps, true);
    ASSERT_TRUE(r.sdp.has_value());
    EXPECT_NEAR(r.value.bits, r.sdp->value_bits, 1e-6) << "instance " << t;
    EXPECT_LE(std::abs(r.sdp->duality_gap), 1e-7) << "instance " << t;
    EXPECT_LE(std::abs(r.duality_gap), 1e-9) << "instance " << t;
  }
}

TEST(OneshotProperty, MonotoneInEps) {
  const std::vector<double> grid{0.05, 0.1, 0.2, 0.3, 0.4};
  for (int t = 0; t < 10; ++t) {
    const Dichotomy d = random_pair(2 + t % 2, 160 + t);
    double dh_prev = -1e300, dt_prev = 1e300, dp_prev = 1e300;
    for (double e : grid) {
      const double dh = hypothesis_testing(d, e, false).value.bits;
      const double dt = smooth_dmax(d, e, Metric::TraceDistance).value.bits;
      const double dp = smooth_dmax(d, e, Metric::PurifiedDistance).value.bits;
      EXPECT_GE(dh - dh_prev, -1e-9);
      EXPECT_LE(dt - dt_prev, 1e-7);
      EXPECT_LE(dp - dp_prev, 1e-7);
      dh_prev = dh;
      dt_prev = dt;
      dp_prev = dp;
    }
  }
}

TEST(OneshotProperty, DataProcessing) {
  for (int t = 0; t < 15; ++t) {
    const Eigen::Index d = 2 + t % 2;
    const Dichotomy x = random_pair(d, 180 + t);
    const Channel ch = random_channel(d, 2, 2, 190 + t);
    const Dichotomy y(apply(ch, x.rho), apply(ch, x.sigma));
    EXPECT_LE(hypothesis_testing(y, 0.1, false).value.bits,
              hypothesis_testing(x, 0.1, false).value.bits + 1e-6);
    for (Metric m : {Metric::TraceDistance, Metric::PurifiedDistance})
      EXPECT_LE(smooth_dmax(y, 0.1, m).value.bits, smooth_dmax(x, 0.1, m).value.bits + 1e-6);
  }
}

TEST(OneshotProperty, SmoothedRatesApproachRelativeEntropy) {
  // Fixed qubit instance: a rotated diag(0.7, 0.3) against diag(0.6, 0.4).
  const double c = std::cos(1.0), s = std::sin(1.0);
  CMatrix rot(2, 2);
  rot << c, -s, s, c;
  const CMatrix rho = rot * diag_state({0.7, 0.3}).matrix() * rot.adjoint();
  const Dichotomy d(DensityMatrix(HermitianMatrix(rho)), diag_state({0.6, 0.4}));
  const double rel = oracle::relent2(to_m2(d.rho), to_m2(d.sigma));
  auto gap = [&](int n) {
    const BlockSmoothMax r = smooth_dmax(BlockDichotomy::tensor_power(d, n), 0.1,
                                         Metric::TraceDistance);
    return std::abs(r.value.bits / n - rel);
  };
  EXPECT_LT(gap(6), gap(2));
}
