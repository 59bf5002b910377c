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

#include <optional>

#include "dichotomy/conic.hpp"
#include "dichotomy/divergences.hpp"
#include "dichotomy/symmetric.hpp"

namespace dichotomy {

/// Test operator 0 <= Q <= 1 (checked to 1e-9).
class Effect {
 public:
  explicit Effect(const HermitianMatrix& m);
  const HermitianMatrix& hermitian() const { return mat_; }
  Eigen::Index dim() const { return mat_.dim(); }

 private:
  HermitianMatrix mat_;
};

/// A dichotomy in block form; a plain dichotomy is a single block.
struct BlockDichotomy {
  BlockOperator rho;
  BlockOperator sigma;

  static BlockDichotomy from(const Dichotomy& d);
  /// (rho, sigma)^(x)n. Qubits use the permutation-symmetric block
  /// decomposition; other dimensions build the Kronecker power (capped).
  static BlockDichotomy tensor_power(const Dichotomy& d, int n);
};

struct BlockHypothesisTest {
  DivergenceValue value;
  BlockOperator optimizer;
  double type1 = 0.0;
  double type2 = 0.0;
  double duality_gap = 0.0;  // type2 minus the best Lagrangian lower bound
};

/// Neyman-Pearson optimum of min tr(sigma Q) s.t. tr(rho Q) >= 1 - eps.
BlockHypothesisTest hypothesis_testing(const BlockDichotomy& d, double eps);

struct SdpCrossCheck {
  double value_bits = 0.0;
  double duality_gap = 0.0;
  SdpStatus status = SdpStatus::IterLimit;
};

/// The same optimum from the interior-point solver.
SdpCrossCheck hypothesis_testing_sdp(const BlockDichotomy& d, double eps);

struct HypothesisTestResult {
  DivergenceValue value;
  Effect optimizer;
  double type1 = 0.0;
  double type2 = 0.0;
  double duality_gap = 0.0;
  std::optional<SdpCrossCheck> sdp;
};

HypothesisTestResult hypothesis_testing(const Dichotomy& d, double eps, bool cross_check = true);

struct BlockSmoothMax {
  DivergenceValue value;
  BlockOperator witness;
  double achieved_distance = 0.0;
  double sdp_bits = 0.0;  // log2 of the SDP optimum
  SdpStatus status = SdpStatus::Optimal;
};

/// min over states r in the eps-ball around rho of D_max(r || sigma),
/// solved as one SDP. sigma must have full support.
BlockSmoothMax smooth_dmax(const BlockDichotomy& d, double eps, Metric metric);

struct SmoothMaxResult {
  DivergenceValue value;
  DensityMatrix smoothed_state;
  Metric metric;
  double achieved_distance = 0.0;
};

/// Diagonal inputs take the exact classical route unless force_sdp.
SmoothMaxResult smooth_dmax(const Dichotomy& d, double eps, Metric metric, bool force_sdp = false);

/// Two-sided chain between D_h^{1-eps}, D_max^{sqrt(eps),P} and
/// D_h^{1-eps-nu}.
struct DhDmaxReport {
  double dh_upper = 0.0;  // D_h^{1-eps}
  double dmax = 0.0;      // D_max^{sqrt eps, P}
  double dh_lower = 0.0;  // D_h^{1-eps-nu}
  double slack_upper = 0.0;
  double slack_lower = 0.0;
};
DhDmaxReport check_prop_dh_dmax(const Dichotomy& d, double eps, double nu);

/// Renyi bounds on both one-shot quantities. alpha_lo = 0 uses D_min and
/// alpha_hi = +inf uses D_max.
struct RenyiBoundReport {
  double dh = 0.0;
  double petz = 0.0;
  double slack_dh = 0.0;
  double sandwiched = 0.0;
  double dmax_trace = 0.0;
  double dmax_purified = 0.0;
  double slack_trace = 0.0;
  double slack_purified = 0.0;
};
RenyiBoundReport check_prop_renyi_bounds(const Dichotomy& d, double eps, double alpha_lo,
                                         double alpha_hi);

}  // namespace dichotomy
