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

#include "dichotomy/linalg.hpp"

#include <cmath>
#include <sstream>

#include "dichotomy/error.hpp"

namespace dichotomy {

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError("Hermitian matrix must be square and non-empty, got " +
                          std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw ValidationError("Hermitian matrix has non-finite entries");
  }
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix::HermitianMatrix(const RVector& diagonal)
    : HermitianMatrix(CMatrix(diagonal.cast<Complex>().asDiagonal())) {}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  return HermitianMatrix(CMatrix(CMatrix::Identity(dim, dim)));
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) {
  return HermitianMatrix(CMatrix(CMatrix::Zero(dim, dim)));
}

bool HermitianMatrix::is_diagonal(double tol) const {
  const Eigen::Index n = dim();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != j && std::abs(m_(i, j)) > tol) return false;
    }
  }
  return true;
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  if (o.dim() != dim()) throw ValidationError("dimension mismatch in sum");
  HermitianMatrix r;
  r.m_ = m_ + o.m_;
  return r;
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  if (o.dim() != dim()) throw ValidationError("dimension mismatch in difference");
  HermitianMatrix r;
  r.m_ = m_ - o.m_;
  return r;
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  HermitianMatrix r;
  r.m_ = m_ * s;
  return r;
}

HermitianMatrix HermitianMatrix::congruence(const CMatrix& u) const {
  return HermitianMatrix(CMatrix(u * m_ * u.adjoint()));
}

CMatrix EigenDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
         eigenvectors.adjoint();
}

EigenDecomposition eigh(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    // Residual of whatever the solver left behind, for the report.
    const CMatrix v = solver.eigenvectors();
    const CMatrix recon =
        v * solver.eigenvalues().cast<Complex>().asDiagonal() * v.adjoint();
    std::ostringstream msg;
    msg << "eigh: no convergence for " << a.dim() << "x" << a.dim()
        << " matrix, residual " << (recon - a.matrix()).norm();
    throw NumericalError(msg.str());
  }
  return EigenDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

double support_cutoff(const RVector& eigenvalues) {
  if (eigenvalues.size() == 0) return 0.0;
  return kSupportCutoff * eigenvalues.cwiseAbs().maxCoeff();
}

HermitianMatrix matrix_function(const EigenDecomposition& eig,
                                const std::function<double(double)>& f,
                                bool support_only) {
  const double tau = support_cutoff(eig.eigenvalues);
  const Eigen::Index n = eig.eigenvalues.size();
  RVector fv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = eig.eigenvalues(i);
    if (support_only && std::abs(lambda) <= tau) {
      fv(i) = 0.0;
      continue;
    }
    const double value = f(lambda);
    if (!std::isfinite(value)) {
      std::ostringstream msg;
      msg << "matrix_function: f undefined at eigenvalue " << lambda;
      throw DomainError(msg.str());
    }
    fv(i) = value;
  }
  return HermitianMatrix(CMatrix(eig.eigenvectors * fv.cast<Complex>().asDiagonal() *
                                 eig.eigenvectors.adjoint()));
}

HermitianMatrix matrix_function(const HermitianMatrix& a,
                                const std::function<double(double)>& f,
                                bool support_only) {
  return matrix_function(eigh(a), f, support_only);
}

HermitianMatrix support_projector(const EigenDecomposition& eig) {
  const double tau = support_cutoff(eig.eigenvalues);
  return matrix_function(
      eig, [tau](double x) { return x > tau ? 1.0 : 0.0; }, false);
}

HermitianMatrix support_projector(const HermitianMatrix& a) {
  return support_projector(eigh(a));
}

HermitianMatrix positive_projector(const HermitianMatrix& a) {
  return support_projector(a);
}

double positive_part_trace(const HermitianMatrix& a) {
  const RVector ev = eigh(a).eigenvalues;
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > 0.0) s += ev(i);
  }
  return s;
}

double trace_norm(const HermitianMatrix& a) {
  return eigh(a).eigenvalues.cwiseAbs().sum();
}

double max_eigenvalue(const HermitianMatrix& a) {
  return eigh(a).eigenvalues.maxCoeff();
}

double min_eigenvalue(const HermitianMatrix& a) {
  return eigh(a).eigenvalues.minCoeff();
}

HermitianMatrix psd_sqrt(const HermitianMatrix& a) {
  return matrix_function(
      a, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }, false);
}

double bures_squared(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("bures_squared: dimension mismatch");
  auto root = [](const HermitianMatrix& m) {
    return matrix_function(m, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }, true);
  };
  const CMatrix sa = root(a).matrix(), sb = root(b).matrix();
  // sqrt(a)^+ sqrt(b) = Y S Z^+ ; U = Y Z^+ maximizes Re tr(U^+ sqrt(a)^+ sqrt(b)).
  const Eigen::JacobiSVD<CMatrix> svd(sa.adjoint() * sb, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const CMatrix u = svd.matrixU() * svd.matrixV().adjoint();
  return (sa * u - sb).squaredNorm();
}

double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  // tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (a.matrix().array() * b.matrix().conjugate().array()).sum().real();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return r;
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(kron(a.matrix(), b.matrix()));
}

}  // namespace dichotomy
