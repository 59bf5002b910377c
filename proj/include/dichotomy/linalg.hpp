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

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace dichotomy {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Eigenvalues at or below kSupportCutoff times the largest absolute
/// eigenvalue are treated as exact zeros.
inline constexpr double kSupportCutoff = 1e-12;

/// Dense complex Hermitian matrix. The stored matrix is always exactly
/// Hermitian: construction replaces A by (A + A^+)/2.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& m);
  explicit HermitianMatrix(const RVector& diagonal);

  static HermitianMatrix identity(Eigen::Index dim);
  static HermitianMatrix zero(Eigen::Index dim);

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  double trace() const { return m_.trace().real(); }
  bool is_diagonal(double tol = 1e-14) const;
  RVector diagonal() const { return m_.diagonal().real(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;
  friend HermitianMatrix operator*(double s, const HermitianMatrix& h) {
    return h * s;
  }

  /// U A U^+ for any (not necessarily square) U.
  HermitianMatrix congruence(const CMatrix& u) const;

 private:
  CMatrix m_;
};

struct EigenDecomposition {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // columns

  CMatrix reconstruct() const;
};

EigenDecomposition eigh(const HermitianMatrix& a);

/// Absolute cutoff below which eigenvalues of `eigenvalues` count as zero.
double support_cutoff(const RVector& eigenvalues);

/// V f(diag lambda) V^+. With support_only, eigenvalues whose magnitude is
/// below the cutoff map to 0 and f is never evaluated there. Throws
/// DomainError when f returns a non-finite value at a kept eigenvalue.
HermitianMatrix matrix_function(const HermitianMatrix& a,
                                const std::function<double(double)>& f,
                                bool support_only);
HermitianMatrix matrix_function(const EigenDecomposition& eig,
                                const std::function<double(double)>& f,
                                bool support_only);

HermitianMatrix support_projector(const HermitianMatrix& a);
HermitianMatrix support_projector(const EigenDecomposition& eig);

/// Projector onto the span of eigenvectors with eigenvalue > cutoff.
HermitianMatrix positive_projector(const HermitianMatrix& a);

double positive_part_trace(const HermitianMatrix& a);
double trace_norm(const HermitianMatrix& a);
double max_eigenvalue(const HermitianMatrix& a);
double min_eigenvalue(const HermitianMatrix& a);

/// Square root of a numerically PSD matrix; eigenvalues below zero clip to 0.
HermitianMatrix psd_sqrt(const HermitianMatrix& a);
/// Squared Bures distance tr a + tr b - 2 tr|sqrt(a) sqrt(b)| of PSD
/// operators, evaluated as ||sqrt(a) U - sqrt(b)||_F^2 with U the polar
/// factor. Accurate to relative precision when a and b nearly coincide.
double bures_squared(const HermitianMatrix& a, const HermitianMatrix& b);

/// Re tr(A B) for Hermitian A, B.
double trace_product(const HermitianMatrix& a, const HermitianMatrix& b);

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace dichotomy
