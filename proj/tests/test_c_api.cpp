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
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "dichotomy/dichotomy.h"

namespace {

std::string fixture(const char* name) { return std::string(DQ_FIXTURE_DIR) + "/" + name; }

dq_dichotomy* load(const char* name) {
  dq_dichotomy* d = nullptr;
  EXPECT_EQ(dq_dichotomy_load(fixture(name).c_str(), &d), DQ_OK) << dq_last_error();
  return d;
}

dq_state* load_state(const char* name) {
  dq_state* s = nullptr;
  EXPECT_EQ(dq_state_load(fixture(name).c_str(), &s), DQ_OK) << dq_last_error();
  return s;
}

}  // namespace

TEST(CApi, VersionAndErrorsStartEmpty) {
  EXPECT_STREQ(dq_version(), "0.1.0");
}

TEST(CApi, StateLifecycle) {
  const double entries[] = {0.75, 0, 0, 0, 0, 0, 0.25, 0};
  dq_state* s = nullptr;
  ASSERT_EQ(dq_state_create(2, entries, &s), DQ_OK);
  EXPECT_EQ(dq_state_dim(s), 2u);
  double back[8];
  ASSERT_EQ(dq_state_entries(s, back), DQ_OK);
  for (int i = 0; i < 8; ++i) EXPECT_EQ(back[i], entries[i]);
  char* json = nullptr;
  ASSERT_EQ(dq_state_to_json(s, &json), DQ_OK);
  dq_state* again = nullptr;
  ASSERT_EQ(dq_state_from_json(json, &again), DQ_OK);
  double dist = 1.0;
  ASSERT_EQ(dq_state_distance(s, again, DQ_METRIC_TRACE, &dist), DQ_OK);
  EXPECT_EQ(dist, 0.0);
  dq_string_free(json);
  dq_state_free(again);
  dq_state_free(s);
}

TEST(CApi, InvalidStateReportsValidation) {
  const double entries[] = {0.75, 0, 0, 0, 0, 0, 0.75, 0};
  dq_state* s = nullptr;
  EXPECT_EQ(dq_state_create(2, entries, &s), DQ_ERR_VALIDATION);
  EXPECT_EQ(s, nullptr);
  EXPECT_NE(std::string(dq_last_error()).find("trace"), std::string::npos) << dq_last_error();
  EXPECT_EQ(dq_state_create(2, nullptr, &s), DQ_ERR_VALIDATION);
}

TEST(CApi, MissingFileIsIoError) {
  dq_dichotomy* d = nullptr;
  EXPECT_EQ(dq_dichotomy_load("/nonexistent/pair.json", &d), DQ_ERR_IO);
}

TEST(CApi, Divergences) {
  dq_dichotomy* d = load("pair_classical_src.json");
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(dq_dichotomy_dim(d), 2u);
  EXPECT_EQ(dq_dichotomy_is_classical(d), 1);
  dq_value v{};
  ASSERT_EQ(dq_divergence(d, DQ_RELATIVE_ENTROPY, nullptr, &v), DQ_OK);
  EXPECT_NEAR(v.bits, 0.9 * std::log2(1.8) + 0.1 * std::log2(0.2), 1e-12);
  dq_divergence_params p{0.5, 0.1, DQ_METRIC_TRACE};
  ASSERT_EQ(dq_divergence(d, DQ_HYPOTHESIS_TESTING, &p, &v), DQ_OK);
  EXPECT_NEAR(v.bits, 1.0, 1e-12);
  ASSERT_EQ(dq_divergence(d, DQ_SMOOTH_DMAX, &p, &v), DQ_OK);
  EXPECT_NEAR(v.bits, std::log2(1.6), 1e-7);
  p.alpha = 1.0;
  EXPECT_EQ(dq_divergence(d, DQ_PETZ, &p, &v), DQ_ERR_VALIDATION);
  dq_dichotomy_free(d);

  dq_dichotomy* o = load("pair_orthogonal.json");
  ASSERT_EQ(dq_divergence(o, DQ_RELATIVE_ENTROPY, nullptr, &v), DQ_OK);
  EXPECT_EQ(v.infinite, 1);
  dq_dichotomy_free(o);
}

TEST(CApi, SynthesisAndVerification) {
  dq_dichotomy* src = load("pair_zero_mixed.json");
  dq_dichotomy* dst = load("pair_classical_dst.json");
  dq_channel* ch = nullptr;
  dq_synthesis_info info{};
  ASSERT_EQ(dq_synthesize_exact(src, dst, &ch, &info), DQ_OK) << dq_last_error();
  double se = 1, re = 1;
  ASSERT_EQ(dq_verify(ch, src, dst, DQ_METRIC_TRACE, &se, &re), DQ_OK);
  EXPECT_LE(se, 1e-9);
  EXPECT_LE(re, 1e-9);

  char* text = nullptr;
  ASSERT_EQ(dq_channel_to_json(ch, &text), DQ_OK);
  dq_channel* back = nullptr;
  ASSERT_EQ(dq_channel_from_json(text, &back), DQ_OK);
  ASSERT_EQ(dq_verify(back, src, dst, DQ_METRIC_TRACE, &se, &re), DQ_OK);
  EXPECT_LE(re, 1e-9);
  dq_string_free(text);
  dq_channel_free(back);
  dq_channel_free(ch);

  dq_dichotomy* full = load("pair_full_rank.json");
  EXPECT_EQ(dq_synthesize_exact(full, dst, &ch, &info), DQ_ERR_PRECONDITION);
  EXPECT_NE(std::string(dq_last_error()).find("D_min"), std::string::npos);

  dq_dichotomy* plus = load("pair_plus_mixed.json");
  ASSERT_EQ(dq_synthesize_approx(src, plus, 0.2, 0.1, DQ_METRIC_TRACE, &ch, &info), DQ_OK);
  EXPECT_NEAR(info.certified_bound, 0.3, 1e-15);
  ASSERT_EQ(dq_verify(ch, src, plus, DQ_METRIC_TRACE, &se, &re), DQ_OK);
  EXPECT_LE(se, 1e-8);
  EXPECT_LE(re, 0.3 + 1e-8);
  dq_channel_free(ch);
  dq_dichotomy_free(plus);
  dq_dichotomy_free(full);
  dq_dichotomy_free(src);
  dq_dichotomy_free(dst);
}

TEST(CApi, ChannelUtilities) {
  dq_channel* ch = nullptr;
  ASSERT_EQ(dq_channel_random(2, 2, 2, 42, &ch), DQ_OK);
  int dio = 1;
  ASSERT_EQ(dq_channel_is_dio(ch, &dio), DQ_OK);
  EXPECT_EQ(dio, 0);
  dq_state* plus = load_state("state_plus.json");
  dq_state* out = nullptr;
  ASSERT_EQ(dq_channel_apply(ch, plus, &out), DQ_OK);
  EXPECT_EQ(dq_state_dim(out), 2u);
  dq_state* deph = nullptr;
  ASSERT_EQ(dq_state_dephase(plus, &deph), DQ_OK);
  double e[8];
  dq_state_entries(deph, e);
  EXPECT_NEAR(e[0], 0.5, 1e-15);
  EXPECT_NEAR(e[2], 0.0, 1e-15);
  dq_state_free(deph);
  dq_state_free(out);
  dq_state_free(plus);
  dq_channel_free(ch);
}

TEST(CApi, RateCurveAndSweep) {
  dq_dichotomy* src = load("pair_classical_src.json");
  dq_dichotomy* dst = load("pair_classical_dst.json");
  dq_experiment cfg{DQ_METRIC_TRACE, 0.1, 0.5, 400, 1};
  const int ns[] = {10, 100, 400};
  dq_record* recs = nullptr;
  size_t count = 0;
  ASSERT_EQ(dq_rate_curve(src, dst, &cfg, ns, 3, &recs, &count), DQ_OK) << dq_last_error();
  ASSERT_EQ(count, 3u);
  EXPECT_EQ(recs[2].n, 400);
  EXPECT_GT(recs[2].rate, recs[0].rate);
  dq_records_free(recs);

  dq_exponent_fit fit{};
  dq_exponent_point* pts = nullptr;
  const int sweep_ns[] = {100, 200, 300, 400};
  ASSERT_EQ(dq_error_exponent_sweep(src, dst, &cfg, 2.0, sweep_ns, 4, &fit, &pts, &count), DQ_OK);
  EXPECT_EQ(fit.regime, DQ_ERROR_DECAY);
  EXPECT_LT(fit.slope_bits_per_n, 0.0);
  EXPECT_EQ(count, 4u);
  dq_points_free(pts);

  const double crit = fit.critical_rate;
  EXPECT_EQ(dq_error_exponent_sweep(src, dst, &cfg, crit, sweep_ns, 4, &fit, &pts, &count),
            DQ_ERR_NEAR_CRITICAL);
  EXPECT_GT(fit.lambda1, 0.0);
  EXPECT_GT(fit.lambda2, 0.0);
  EXPECT_EQ(pts, nullptr);

  cfg.eps_total = 2.0;
  EXPECT_EQ(dq_rate_curve(src, dst, &cfg, ns, 3, &recs, &count), DQ_ERR_VALIDATION);
  dq_dichotomy_free(src);
  dq_dichotomy_free(dst);
}

TEST(CApi, Resource) {
  dq_gibbs* g = nullptr;
  ASSERT_EQ(dq_gibbs_load(fixture("hamiltonian.json").c_str(), &g), DQ_OK);
  dq_state* gamma = nullptr;
  ASSERT_EQ(dq_gibbs_state(g, &gamma), DQ_OK);
  double f = 0, res = 1;
  ASSERT_EQ(dq_free_energy(gamma, g, &f, &res), DQ_OK);
  EXPECT_NEAR(f, -std::log2(1 + std::exp(-1.0)), 1e-12);
  EXPECT_LE(res, 1e-8);
  dq_state* excited = load_state("state_excited.json");
  dq_athermality_report rep{};
  ASSERT_EQ(dq_athermality(excited, gamma, g, &rep), DQ_OK);
  EXPECT_EQ(rep.verdict, DQ_ATHERMALITY_FEASIBLE);
  ASSERT_EQ(dq_athermality(excited, excited, g, &rep), DQ_OK);
  EXPECT_EQ(rep.verdict, DQ_ATHERMALITY_NEAR_CRITICAL);

  dq_state* plus = load_state("state_plus.json");
  double rate = 0;
  ASSERT_EQ(dq_coherence_rate(plus, &rate), DQ_OK);
  EXPECT_NEAR(rate, 1.0, 1e-9);
  int unbounded = 0;
  ASSERT_EQ(dq_dio_rate(plus, gamma, &rate, &unbounded), DQ_OK);
  EXPECT_EQ(unbounded, 1);

  const double h[] = {0, 0, 0, 0, 0, 0, 1, 0};
  dq_gibbs* g2 = nullptr;
  EXPECT_EQ(dq_gibbs_create(2, h, -1.0, &g2), DQ_ERR_VALIDATION);
  ASSERT_EQ(dq_gibbs_create(2, h, 1.0, &g2), DQ_OK);
  dq_gibbs_free(g2);
  dq_state_free(plus);
  dq_state_free(excited);
  dq_state_free(gamma);
  dq_gibbs_free(g);
}

TEST(CApi, LastErrorIsPerThread) {
  const double bad[] = {2, 0, 0, 0, 0, 0, 0, 0};
  dq_state* s = nullptr;
  ASSERT_EQ(dq_state_create(2, bad, &s), DQ_ERR_VALIDATION);
  const std::string mine = dq_last_error();
  std::string other = "unset";
  std::thread t([&] {
    dq_dichotomy* d = nullptr;
    dq_dichotomy_load("/nonexistent/x.json", &d);
    other = dq_last_error();
  });
  t.join();
  EXPECT_EQ(std::string(dq_last_error()), mine);
  EXPECT_NE(other, mine);
}
