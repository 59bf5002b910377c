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

#include "dichotomy/states.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>

#include "dichotomy/error.hpp"

namespace dichotomy {

Eigen::Index dimension_cap() {
  if (const char* env = std::getenv("DICHOTOMY_DIM_CAP")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<Eigen::Index>(v);
  }
  return kDefaultDimensionCap;
}

DensityMatrix::DensityMatrix(const HermitianMatrix& m) : mat_(m) {
  const double tr = m.trace();
  if (std::abs(tr - 1.0) > kStateTolerance) {
    std::ostringstream msg;
    msg << "density matrix trace is " << tr << ", expected 1";
    throw ValidationError(msg.str());
  }
  const double lmin = min_eigenvalue(m);
  if (lmin < -kStateTolerance) {
    std::ostringstream msg;
    msg << "density matrix has negative eigenvalue " << lmin;
    throw ValidationError(msg.str());
  }
}

DensityMatrix DensityMatrix::nearest(const HermitianMatrix& m, double tolerance) {
  const EigenDecomposition eig = eigh(m);
  const double tr = m.trace();
  if (std::abs(tr - 1.0) > tolerance || eig.eigenvalues.minCoeff() < -tolerance) {
    std::ostringstream msg;
    msg << "matrix is not a state within " << tolerance << " (trace " << tr
        << ", min eigenvalue " << eig.eigenvalues.minCoeff() << ")";
    throw NumericalError(msg.str());
  }
  RVector clipped = eig.eigenvalues.cwiseMax(0.0);
  clipped /= clipped.sum();
  return DensityMatrix(
      HermitianMatrix(CMatrix(eig.eigenvectors * clipped.cast<Complex>().asDiagonal() *
                              eig.eigenvectors.adjoint())),
      Unchecked{});
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw ValidationError("pure state vector must be nonzero");
  const CVector v = psi / norm;
  return DensityMatrix(HermitianMatrix(CMatrix(v * v.adjoint())));
}

DensityMatrix DensityMatrix::basis(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) throw ValidationError("basis index out of range");
  CVector v = CVector::Zero(dim);
  v(index) = 1.0;
  return pure(v);
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  if (dim < 1) throw ValidationError("dimension must be positive");
  return DensityMatrix(HermitianMatrix::identity(dim) * (1.0 / static_cast<double>(dim)));
}

Dichotomy::Dichotomy(DensityMatrix rho_, DensityMatrix sigma_)
    : rho(std::move(rho_)), sigma(std::move(sigma_)) {
  if (rho.dim() != sigma.dim()) {
    throw ValidationError("dichotomy states have different dimensions (" +
                          std::to_string(rho.dim()) + " vs " +
                          std::to_string(sigma.dim()) + ")");
  }
}

BinaryDistribution::BinaryDistribution(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError("binary distribution probability must lie in [0,1]");
  }
}

DensityMatrix BinaryDistribution::embed() const {
  const double v[2] = {p_, 1.0 - p_};
  return classical_embed(v);
}

std::string_view to_string(Metric m) {
  return m == Metric::TraceDistance ? "trace" : "purified";
}

Metric metric_from_string(std::string_view s) {
  if (s == "trace" || s == "T") return Metric::TraceDistance;
  if (s == "purified" || s == "P") return Metric::PurifiedDistance;
  throw ValidationError("unknown metric '" + std::string(s) +
                        "' (expected trace|purified)");
}

double trace_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
  return 0.5 * trace_norm(a - b);
}

double fidelity(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("fidelity: dimension mismatch");
  // F = (tr sqrt(sqrt(a) b sqrt(a)))^2
  // Rounding-level eigenvalues are dropped on both sides; their square roots
  // would otherwise add errors of order 1e-8 for rank-deficient inputs.
  const HermitianMatrix sa =
      matrix_function(a, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }, true);
  const RVector ev = eigh(b.congruence(sa.matrix())).eigenvalues;
  const double tau = support_cutoff(ev);
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > tau) s += std::sqrt(ev(i));
  }
  return s * s;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("trace_distance: dimension mismatch");
  return std::clamp(trace_distance(a.hermitian(), b.hermitian()), 0.0, 1.0);
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  return std::clamp(fidelity(a.hermitian(), b.hermitian()), 0.0, 1.0);
}

double purified_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("purified_distance: dimension mismatch");
  // sqrt F = 1 - B^2/2 for unit-trace inputs, so 1 - F = B^2 - B^4/4 without
  // the cancellation of 1 - F near F = 1.
  const double b2 = std::min(bures_squared(a.hermitian(), b.hermitian()), 2.0);
  return std::clamp(std::sqrt(std::max(0.0, b2 - 0.25 * b2 * b2)), 0.0, 1.0);
}

double distance(const DensityMatrix& a, const DensityMatrix& b, Metric metric) {
  return metric == Metric::TraceDistance ? trace_distance(a, b)
                                         : purified_distance(a, b);
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::nearest(kron(a.hermitian(), b.hermitian()), 1e-9);
}

DensityMatrix tensor_power(const DensityMatrix& a, int n, Eigen::Index cap) {
  if (n < 1) throw ValidationError("tensor_power: n must be positive");
  double dim = 1.0;
  for (int i = 0; i < n; ++i) dim *= static_cast<double>(a.dim());
  if (dim > static_cast<double>(cap)) {
    std::ostringstream msg;
    msg << "tensor_power: dimension " << a.dim() << "^" << n
        << " exceeds cap " << cap;
    throw ValidationError(msg.str());
  }
  CMatrix acc = a.matrix();
  for (int i = 1; i < n; ++i) acc = kron(acc, a.matrix());
  return DensityMatrix::nearest(HermitianMatrix(acc), 1e-9);
}

DensityMatrix random_density(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw ValidationError("random_density: need 1 <= rank <= dim");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(dim, rank);
  for (Eigen::Index j = 0; j < rank; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(HermitianMatrix(rho));
}

DensityMatrix classical_embed(std::span<const double> p) {
  if (p.empty()) throw ValidationError("classical_embed: empty probability vector");
  double total = 0.0;
  RVector d(static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0)) {
      throw ValidationError("classical_embed: entry " + std::to_string(i) +
                            " is negative or NaN");
    }
    d(static_cast<Eigen::Index>(i)) = p[i];
    total += p[i];
  }
  if (std::abs(total - 1.0) > kStateTolerance) {
    throw ValidationError("classical_embed: probabilities sum to " +
                          std::to_string(total));
  }
  return DensityMatrix(HermitianMatrix(d));
}

}  // namespace dichotomy
