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

#include <cstddef>
#include <string_view>
#include <vector>

#include "dichotomy/linalg.hpp"

namespace dichotomy {

// Standard-form complex semidefinite program
//
//   minimize    sum_b Re tr(C_b X_b)
//   subject to  sum_b Re tr(A_ib X_b) = b_i,   X_b >= 0,
//
// with dual   maximize b^T y  s.t.  Z_b = C_b - sum_i y_i A_ib >= 0.

struct SdpTerm {
  std::size_t block = 0;
  HermitianMatrix coeff;
};

struct SdpConstraint {
  std::vector<SdpTerm> terms;
  double rhs = 0.0;
};

/// One summand of a matrix-valued linear equality. Either a principal
/// sub-block of a variable (scale * G X_b[offset.., offset..] G^+, with G
/// the identity when `map` is empty) or, when `times` is non-empty, a 1x1
/// variable multiplying a fixed matrix.
struct MatrixTerm {
  std::size_t block = 0;
  double scale = 1.0;
  Eigen::Index offset = 0;
  HermitianMatrix times;
  CMatrix map;
};

struct SdpProblem {
  std::vector<Eigen::Index> block_dims;
  std::vector<HermitianMatrix> objective;  // one per block
  std::vector<SdpConstraint> constraints;

  /// Appends a PSD block with zero cost and returns its index.
  std::size_t add_block(Eigen::Index dim);
  void set_objective(std::size_t block, const HermitianMatrix& c);
  void add_constraint(SdpConstraint c);
  /// Adds sum_terms(...) = rhs as dim^2 real equalities, one per element of
  /// an orthonormal Hermitian basis.
  void add_matrix_equality(Eigen::Index dim, const std::vector<MatrixTerm>& terms,
                           const HermitianMatrix& rhs);
  /// Throws ValidationError describing the first structural problem.
  void validate(Eigen::Index max_total_dim) const;
  Eigen::Index total_dim() const;
};

enum class SdpStatus { Optimal, Infeasible, Unbounded, IterLimit };
std::string_view to_string(SdpStatus s);

struct SdpSolution {
  SdpStatus status = SdpStatus::IterLimit;
  std::vector<HermitianMatrix> primal;  // X_b
  std::vector<HermitianMatrix> dual_slack;  // Z_b
  RVector dual;                         // y
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  double primal_residual = 0.0;  // ||A(X) - b||_2
  double dual_residual = 0.0;    // ||C - A^T y - Z||_F
  int iterations = 0;
};

struct SdpOptions {
  double tolerance = 1e-9;
  int max_iterations = 200;
  Eigen::Index max_total_dim = 1024;
  bool detect_infeasibility = true;
};

/// Orthonormal basis of d x d Hermitian matrices under Re tr(AB):
/// E_kk, (E_kl + E_lk)/sqrt2, i(E_kl - E_lk)/sqrt2.
std::vector<HermitianMatrix> hermitian_basis(Eigen::Index dim);

/// Primal-dual interior point (HKM direction, Mehrotra predictor-corrector,
/// infeasible start). Infeasibility is classified by a phase-1 problem when
/// the main iteration does not converge.
SdpSolution solve(const SdpProblem& p, const SdpOptions& opts = {});

}  // namespace dichotomy
