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

#include <span>
#include <vector>

#include "dichotomy/divergences.hpp"

namespace dichotomy {

/// A set of outcomes sharing one likelihood ratio, stored as the log2 of
/// its total mass under each distribution (-inf for zero mass).
struct TypeClass {
  double log2_p;
  double log2_q;
};

/// Pair of classical distributions grouped into likelihood-ratio classes.
/// Working in log2 masses keeps tensor powers with n in the thousands exact
/// even though individual probabilities underflow.
class ClassicalPair {
 public:
  /// One class per outcome. Validates both vectors.
  static ClassicalPair from_vectors(std::span<const double> p, std::span<const double> q);
  /// (p, q)^(x)n grouped by outcome counts (multinomial types).
  static ClassicalPair tensor_power(std::span<const double> p, std::span<const double> q, int n);

  const std::vector<TypeClass>& classes() const { return classes_; }

 private:
  std::vector<TypeClass> classes_;
};

enum class ClassicalQuantity { Dh, DmaxT, DmaxP };

struct ClassicalSmoothing {
  DivergenceValue value;
  /// log2 mass of the smoothing witness per class (same order as classes()).
  std::vector<double> log2_witness;
};

DivergenceValue classical_dh(const ClassicalPair& pq, double eps);
ClassicalSmoothing classical_dmax_trace(const ClassicalPair& pq, double eps);
ClassicalSmoothing classical_dmax_purified(const ClassicalPair& pq, double eps);

/// Convenience entry on explicit vectors; returns bits (+inf possible for
/// Dh). DmaxT/DmaxP require q > 0.
double classical_oneshot(std::span<const double> p, std::span<const double> q, double eps,
                         ClassicalQuantity which);

/// log2(1 - g) where g = sup_t [L_target(t) - L_source(t)] and L(t) is the
/// largest p-mass of a test with q-mass t. Any channel mapping the source
/// q to the target q has error at least g on the p-leg.
double lorenz_converse_log2_complement(const ClassicalPair& source, const ClassicalPair& target);

/// log2(2^a + 2^b), safe for -inf.
double log2_add(double a, double b);

}  // namespace dichotomy
