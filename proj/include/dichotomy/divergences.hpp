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

#include <string>

#include "dichotomy/states.hpp"

namespace dichotomy {

/// A divergence in bits; `infinite` marks +inf (support condition failed).
struct DivergenceValue {
  double bits = 0.0;
  bool infinite = false;

  static DivergenceValue finite(double b) { return {b, false}; }
  static DivergenceValue inf() { return {0.0, true}; }

  /// +inf as a double, for arithmetic in bound checks.
  double value() const;
  std::string str() const;
};

/// tr((1 - P_sigma) rho) <= 1e-10 where P_sigma projects on supp(sigma).
bool support_contained(const HermitianMatrix& rho, const HermitianMatrix& sigma);

DivergenceValue relative_entropy(const Dichotomy& d);
DivergenceValue petz_renyi(const Dichotomy& d, double alpha);
DivergenceValue sandwiched_renyi(const Dichotomy& d, double alpha);
DivergenceValue d_min(const Dichotomy& d);
DivergenceValue d_max(const Dichotomy& d);
double relative_entropy_variance(const Dichotomy& d);

// Same quantities on raw PSD matrices (no normalization checks).
DivergenceValue relative_entropy(const HermitianMatrix& rho, const HermitianMatrix& sigma);
DivergenceValue petz_renyi(const HermitianMatrix& rho, const HermitianMatrix& sigma,
                           double alpha);
DivergenceValue sandwiched_renyi(const HermitianMatrix& rho, const HermitianMatrix& sigma,
                                 double alpha);
DivergenceValue d_min(const HermitianMatrix& rho, const HermitianMatrix& sigma);
DivergenceValue d_max(const HermitianMatrix& rho, const HermitianMatrix& sigma);

}  // namespace dichotomy
