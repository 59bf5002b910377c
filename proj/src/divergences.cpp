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

#include "dichotomy/divergences.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dichotomy/error.hpp"

namespace dichotomy {
namespace {

constexpr double kSupportTolerance = 1e-10;

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("divergence: dimension mismatch");
}

double log2_or_zero(double x) { return std::log2(x); }

// log2 of sum_i x_i^alpha over x_i > cutoff, computed relative to the max.
double log2_power_sum(const RVector& ev, double alpha) {
  const double tau = support_cutoff(ev);
  const double top = ev.maxCoeff();
  if (!(top > tau)) return -std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > tau) s += std::pow(ev(i) / top, alpha);
  }
  return alpha * std::log2(top) + std::log2(s);
}

// (1/(alpha-1)) * log2 Q with Q possibly 0.
DivergenceValue from_log2_q(double log2_q, double alpha) {
  if (std::isinf(log2_q) && log2_q < 0) {
    // Q = 0 only happens for alpha < 1 with orthogonal supports.
    return DivergenceValue::inf();
  }
  return DivergenceValue::finite(log2_q / (alpha - 1.0));
}

}  // namespace

double DivergenceValue::value() const {
  return infinite ? std::numeric_limits<double>::infinity() : bits;
}

std::string DivergenceValue::str() const {
  if (infinite) return "inf";
  std::ostringstream s;
  s.precision(9);
  s << bits;
  return s.str();
}

bool support_contained(const HermitianMatrix& rho, const HermitianMatrix& sigma) {
  require_same_dim(rho, sigma);
  const HermitianMatrix outside = HermitianMatrix::identity(sigma.dim()) - support_projector(sigma);
  return trace_product(outside, rho) <= kSupportTolerance;
}

DivergenceValue relative_entropy(const HermitianMatrix& rho, const HermitianMatrix& sigma) {
  require_same_dim(rho, sigma);
  if (!support_contained(rho, sigma)) return DivergenceValue::inf();
  const auto lg = [](double x) { return log2_or_zero(x); };
  const HermitianMatrix log_rho = matrix_function(rho, lg, true);
  const HermitianMatrix log_sigma = matrix_function(sigma, lg, true);
  return DivergenceValue::finite(std::max(0.0, trace_product(rho, log_rho - log_sigma)));
}

DivergenceValue petz_renyi(const HermitianMatrix& rho, const HermitianMatrix& sigma,
                           double alpha) {
  require_same_dim(rho, sigma);
  if (!(alpha > 0.0 && alpha <= 2.0) || alpha == 1.0) {
    std::ostringstream msg;
    msg << "petz_renyi: alpha=" << alpha << " outside (0,1) u (1,2]";
    throw ValidationError(msg.str());
  }
  if (alpha > 1.0 && !support_contained(rho, sigma)) return DivergenceValue::inf();
  // Q = tr rho^a sigma^(1-a). Normalize by the largest eigenvalues so large
  // or small powers stay representable.
  const EigenDecomposition er = eigh(rho);
  const EigenDecomposition es = eigh(sigma);
  const double rtop = er.eigenvalues.maxCoeff();
  const double stop = es.eigenvalues.maxCoeff();
  const HermitianMatrix ra = matrix_function(
      er, [&](double x) { return x > 0 ? std::pow(x / rtop, alpha) : 0.0; }, true);
  const HermitianMatrix sb = matrix_function(
      es, [&](double x) { return x > 0 ? std::pow(x / stop, 1.0 - alpha) : 0.0; }, true);
  const double q = trace_product(ra, sb);
  if (!(q > 0.0)) return DivergenceValue::inf();
  const double log2_q = std::log2(q) + alpha * std::log2(rtop) + (1.0 - alpha) * std::log2(stop);
  return from_log2_q(log2_q, alpha);
}

DivergenceValue sandwiched_renyi(const HermitianMatrix& rho, const HermitianMatrix& sigma,
                                 double alpha) {
  require_same_dim(rho, sigma);
  if (!(alpha >= 0.5) || alpha == 1.0 || !std::isfinite(alpha)) {
    std::ostringstream msg;
    msg << "sandwiched_renyi: alpha=" << alpha << " outside [1/2,1) u (1,inf)";
    throw ValidationError(msg.str());
  }
  if (alpha > 1.0 && !support_contained(rho, sigma)) return DivergenceValue::inf();
  const double g = (1.0 - alpha) / (2.0 * alpha);
  const HermitianMatrix sg = matrix_function(
      sigma, [&](double x) { return x > 0 ? std::pow(x, g) : 0.0; }, true);
  const HermitianMatrix inner = rho.congruence(sg.matrix());
  return from_log2_q(log2_power_sum(eigh(inner).eigenvalues, alpha), alpha);
}

DivergenceValue d_min(const HermitianMatrix& rho, const HermitianMatrix& sigma) {
  require_same_dim(rho, sigma);
  const double overlap = trace_product(support_projector(rho), sigma);
  if (!(overlap > kSupportTolerance)) return DivergenceValue::inf();
  return DivergenceValue::finite(std::max(0.0, -std::log2(std::min(1.0, overlap))));
}

DivergenceValue d_max(const HermitianMatrix& rho, const HermitianMatrix& sigma) {
  require_same_dim(rho, sigma);
  if (!support_contained(rho, sigma)) return DivergenceValue::inf();
  const HermitianMatrix inv_sqrt = matrix_function(
      sigma, [](double x) { return x > 0 ? 1.0 / std::sqrt(x) : 0.0; }, true);
  const double top = max_eigenvalue(rho.congruence(inv_sqrt.matrix()));
  return DivergenceValue::finite(std::log2(top));
}

DivergenceValue relative_entropy(const Dichotomy& d) {
  return relative_entropy(d.rho.hermitian(), d.sigma.hermitian());
}
DivergenceValue petz_renyi(const Dichotomy& d, double alpha) {
  return petz_renyi(d.rho.hermitian(), d.sigma.hermitian(), alpha);
}
DivergenceValue sandwiched_renyi(const Dichotomy& d, double alpha) {
  return sandwiched_renyi(d.rho.hermitian(), d.sigma.hermitian(), alpha);
}
DivergenceValue d_min(const Dichotomy& d) { return d_min(d.rho.hermitian(), d.sigma.hermitian()); }
DivergenceValue d_max(const Dichotomy& d) {
  const DivergenceValue v = d_max(d.rho.hermitian(), d.sigma.hermitian());
  if (v.infinite) return v;
  // For normalized states rho <= 2^x sigma forces x >= 0.
  return DivergenceValue::finite(std::max(0.0, v.bits));
}

double relative_entropy_variance(const Dichotomy& d) {
  const HermitianMatrix& rho = d.rho.hermitian();
  const HermitianMatrix& sigma = d.sigma.hermitian();
  if (!support_contained(rho, sigma)) {
    throw DomainError("relative_entropy_variance: supp(rho) is not contained in supp(sigma)");
  }
  const auto lg = [](double x) { return std::log2(x); };
  const CMatrix l = (matrix_function(rho, lg, true) - matrix_function(sigma, lg, true)).matrix();
  const double mean = (rho.matrix() * l).trace().real();
  const double second = (rho.matrix() * l * l).trace().real();
  return std::max(0.0, second - mean * mean);
}

}  // namespace dichotomy
