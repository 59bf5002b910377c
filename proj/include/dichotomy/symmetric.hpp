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

#include "dichotomy/linalg.hpp"

namespace dichotomy {

/// Block-diagonal operator where block k occurs `multiplicity` times.
/// Operators of this form commute with the permutation action on tensor
/// powers, so several optimizations over them split blockwise.
struct Block {
  HermitianMatrix mat;
  double multiplicity = 1.0;
};

struct BlockOperator {
  std::vector<Block> blocks;

  static BlockOperator single(const HermitianMatrix& m);

  double trace() const;
  Eigen::Index total_dim() const;  // sum of block sizes times multiplicity
  BlockOperator operator-(const BlockOperator& o) const;
  BlockOperator operator*(double s) const;
  /// Same block layout as `*this`.
  bool same_layout(const BlockOperator& o) const;
  /// All eigenvalues, each repeated by its block multiplicity.
  std::vector<double> spectrum() const;
};

/// Symmetric-power representation Sym^k(A) of a 2x2 matrix in the
/// orthonormal Dicke basis (dimension k + 1).
CMatrix symmetric_power(const CMatrix& a, int k);

/// A^(x)n decomposed into irreducible blocks det(A)^j Sym^(n-2j)(A),
/// j = 0..n/2, with multiplicity C(n,j) - C(n,j-1). Only for 2x2 A.
BlockOperator qubit_tensor_power(const HermitianMatrix& a, int n);

double trace_norm(const BlockOperator& a);
double positive_part_trace(const BlockOperator& a);
double trace_distance(const BlockOperator& a, const BlockOperator& b);
double fidelity(const BlockOperator& a, const BlockOperator& b);
/// Purified distance of unit-trace block operators.
double purified_distance(const BlockOperator& a, const BlockOperator& b);
double trace_product(const BlockOperator& a, const BlockOperator& b);

}  // namespace dichotomy
