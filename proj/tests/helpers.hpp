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


// Shared helpers for the test binaries.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dichotomy/divergences.hpp"
#include "dichotomy/states.hpp"
#include "oracles.hpp"

namespace testing_util {

inline std::string fixture(const std::string& name) {
  return std::string(DQ_FIXTURE_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline oracle::M2 to_m2(const dichotomy::DensityMatrix& d) {
  return d.matrix().topLeftCorner<2, 2>();
}

inline dichotomy::DensityMatrix from_m2(const oracle::M2& m) {
  return dichotomy::DensityMatrix(dichotomy::HermitianMatrix(dichotomy::CMatrix(m)));
}

inline dichotomy::DensityMatrix diag_state(const std::vector<double>& p) {
  return dichotomy::classical_embed(p);
}

// Full-rank random dichotomy of the given dimension.
inline dichotomy::Dichotomy random_pair(Eigen::Index dim, std::uint64_t seed) {
  return dichotomy::Dichotomy(dichotomy::random_density(dim, dim, 2 * seed + 1),
                              dichotomy::random_density(dim, dim, 2 * seed + 2));
}

inline std::vector<double> random_distribution(std::mt19937_64& rng, size_t d) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> p(d);
  double s = 0.0;
  for (auto& x : p) s += (x = u(rng));
  for (auto& x : p) x /= s;
  return p;
}

// A binary source (p, q) and a target pair satisfying both exact-synthesis
// conditions. The target is a small perturbation of a random sigma2, shrunk
// until the max-divergence bounds fit.
struct BinaryInstance {
  double p, q;
  dichotomy::Dichotomy dst;
};

inline BinaryInstance satisfiable_binary_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  double p = u(rng), q = u(rng);
  while (std::abs(p - q) < 0.1) q = u(rng);
  const Eigen::Index d = 2 + static_cast<Eigen::Index>(seed % 2);
  const dichotomy::DensityMatrix sigma = dichotomy::random_density(d, d, 7 * seed + 3);
  const dichotomy::DensityMatrix tau = dichotomy::random_density(d, 1 + seed % 2, 7 * seed + 5);
  const double hi = std::log2(std::max(p / q, q / p));
  const double lo = std::log2(std::max((1 - q) / (1 - p), (1 - p) / (1 - q)));
  for (double t = 0.9;; t *= 0.7) {
    const dichotomy::HermitianMatrix mix = sigma.hermitian() * (1 - t) + tau.hermitian() * t;
    dichotomy::Dichotomy dst(dichotomy::DensityMatrix(mix), sigma);
    // Orient the target so that the larger likelihood ratio of the source
    // faces the same way.
    const double fwd = dichotomy::d_max(dst).value();
    const double bwd = dichotomy::d_max(dst.swapped()).value();
    const double need_fwd = p > q ? hi : lo, need_bwd = p > q ? lo : hi;
    if (fwd <= need_fwd - 1e-6 && bwd <= need_bwd - 1e-6) return {p, q, dst};
  }
}

}  // namespace testing_util
