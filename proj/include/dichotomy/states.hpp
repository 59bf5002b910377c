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
#include <span>
#include <string_view>

#include "dichotomy/linalg.hpp"

namespace dichotomy {

/// Tolerance used when validating user-supplied states.
inline constexpr double kStateTolerance = 1e-10;

/// Default cap on the dimension of explicit Kronecker powers.
inline constexpr Eigen::Index kDefaultDimensionCap = 4096;

/// Dimension cap, overridable through the DICHOTOMY_DIM_CAP environment
/// variable.
Eigen::Index dimension_cap();

/// Positive semidefinite, unit-trace Hermitian matrix.
class DensityMatrix {
 public:
  /// Validates eigenvalues >= -1e-10 and |tr - 1| <= 1e-10.
  explicit DensityMatrix(const HermitianMatrix& m);

  /// Accepts `m` if it is a state up to `tolerance`, then clips negative
  /// eigenvalues and renormalizes. For internal results carrying roundoff.
  static DensityMatrix nearest(const HermitianMatrix& m, double tolerance);

  static DensityMatrix pure(const CVector& psi);
  static DensityMatrix basis(Eigen::Index dim, Eigen::Index index);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  Eigen::Index dim() const { return mat_.dim(); }
  const HermitianMatrix& hermitian() const { return mat_; }
  const CMatrix& matrix() const { return mat_.matrix(); }
  bool is_diagonal(double tol = 1e-14) const { return mat_.is_diagonal(tol); }

 private:
  struct Unchecked {};
  DensityMatrix(const HermitianMatrix& m, Unchecked) : mat_(m) {}
  HermitianMatrix mat_;
};

/// Ordered pair (rho, sigma) of states on the same space.
struct Dichotomy {
  Dichotomy(DensityMatrix rho_, DensityMatrix sigma_);

  Eigen::Index dim() const { return rho.dim(); }
  bool is_classical() const { return rho.is_diagonal() && sigma.is_diagonal(); }
  Dichotomy swapped() const { return Dichotomy(sigma, rho); }

  DensityMatrix rho;
  DensityMatrix sigma;
};

/// Binary distribution (p, 1-p).
class BinaryDistribution {
 public:
  explicit BinaryDistribution(double p);
  double p() const { return p_; }
  DensityMatrix embed() const;

 private:
  double p_;
};

enum class Metric { TraceDistance, PurifiedDistance };

std::string_view to_string(Metric m);
Metric metric_from_string(std::string_view s);

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double fidelity(const DensityMatrix& a, const DensityMatrix& b);
double purified_distance(const DensityMatrix& a, const DensityMatrix& b);
double distance(const DensityMatrix& a, const DensityMatrix& b, Metric metric);

// Same metrics on raw PSD matrices; no normalization checks.
double trace_distance(const HermitianMatrix& a, const HermitianMatrix& b);
double fidelity(const HermitianMatrix& a, const HermitianMatrix& b);

DensityMatrix tensor_power(const DensityMatrix& a, int n,
                           Eigen::Index cap = dimension_cap());
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Random state of the given rank: partial trace of a Gaussian pure state
/// on C^dim (x) C^rank (induced measure). Deterministic per seed.
DensityMatrix random_density(Eigen::Index dim, Eigen::Index rank,
                             std::uint64_t seed);

/// Diagonal state from a probability vector.
DensityMatrix classical_embed(std::span<const double> p);

}  // namespace dichotomy
