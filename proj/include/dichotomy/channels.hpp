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

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dichotomy/oneshot.hpp"

namespace dichotomy {

/// X -> prep_accept tr(X E) + prep_reject tr(X (1 - E)).
struct TestAndPrepareChannel {
  Effect effect;
  DensityMatrix prep_accept;
  DensityMatrix prep_reject;

  TestAndPrepareChannel(Effect e, DensityMatrix accept, DensityMatrix reject);
  Eigen::Index dim_in() const { return effect.dim(); }
  Eigen::Index dim_out() const { return prep_accept.dim(); }
};

/// Kraus form; sum K^+ K = 1 checked to 1e-9.
struct GeneralChannel {
  std::vector<CMatrix> kraus;

  explicit GeneralChannel(std::vector<CMatrix> ops);
  Eigen::Index dim_in() const { return kraus.front().cols(); }
  Eigen::Index dim_out() const { return kraus.front().rows(); }
};

using Channel = std::variant<TestAndPrepareChannel, GeneralChannel>;

Eigen::Index dim_in(const Channel& ch);
Eigen::Index dim_out(const Channel& ch);

DensityMatrix apply(const Channel& ch, const DensityMatrix& x);
/// The channel's linear extension to arbitrary (non-Hermitian) inputs.
CMatrix apply_linear(const Channel& ch, const CMatrix& x);

GeneralChannel identity_channel(Eigen::Index dim);
GeneralChannel dephasing_channel(Eigen::Index dim);
/// Kraus operators G_k S^{-1/2} with S = sum G_k^+ G_k and G_k complex
/// Gaussian; env_dim = 1 with d_in = d_out gives a unitary channel.
GeneralChannel random_channel(Eigen::Index d_in, Eigen::Index d_out, Eigen::Index env_dim,
                              std::uint64_t seed);

struct SynthesisResult {
  TestAndPrepareChannel channel;
  /// Some condition held only within numerical slack.
  bool borderline = false;
  std::string route;
};

/// Exact map for the binary pair (p, 1-p), (q, 1-q) to dst, provided
/// D_max(p||q) >= D_max(rho2||sigma2) and D_max(q||p) >= D_max(sigma2||rho2).
SynthesisResult synthesize_exact_qubit(const BinaryDistribution& p, const BinaryDistribution& q,
                                       const Dichotomy& dst);

/// Exact map src -> dst when D_min(rho1||sigma1) >= D_max(rho2||sigma2),
/// or the same with both pairs swapped; measures the support projector
/// and then applies the binary construction.
SynthesisResult synthesize_exact(const Dichotomy& src, const Dichotomy& dst);

struct ApproxSynthesis {
  SynthesisResult result;
  double dh_bits = 0.0;
  double dmax_bits = 0.0;
  double accept_sigma = 0.0;  // tr(sigma1 Q*)
  /// Certified distance bound: eps1 + eps2 (trace) or sqrt(eps1) + eps2.
  double certified_bound = 0.0;
};

/// Sends sigma1 to sigma2 exactly and rho1 close to rho2, provided
/// D_h^{eps1}(rho1||sigma1) >= D_max^{eps2}(rho2||sigma2) (slack 1e-8).
ApproxSynthesis synthesize_approx(const Dichotomy& src, const Dichotomy& dst, double eps1,
                                  double eps2, Metric metric);

struct VerificationReport {
  double sigma_error = 0.0;
  double rho_error = 0.0;
};

VerificationReport verify_transformation(const Channel& ch, const Dichotomy& src,
                                         const Dichotomy& dst, Metric metric);

}  // namespace dichotomy
