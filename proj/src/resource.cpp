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

#include "dichotomy/resource.hpp"

#include <cmath>
#include <sstream>

#include "dichotomy/error.hpp"

namespace dichotomy {
namespace {

constexpr double kFreeEnergyTolerance = 1e-8;
constexpr double kDioTolerance = 1e-9;
constexpr double kNearCriticalBand = 0.02;
constexpr double kIncoherent = 1e-12;

}  // namespace

void GibbsSpec::validate() const {
  if (hamiltonian.dim() < 1) throw ValidationError("hamiltonian must be non-empty");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ValidationError("beta must be positive and finite");
}

double GibbsSpec::log2_partition() const {
  validate();
  const RVector e = eigh(hamiltonian).eigenvalues;
  // Shift by the ground energy so large beta cannot underflow.
  const double e0 = e.minCoeff();
  double z = 0.0;
  for (Eigen::Index i = 0; i < e.size(); ++i) z += std::exp(-beta * (e(i) - e0));
  return std::log2(z) - beta * e0 / std::log(2.0);
}

DensityMatrix gibbs_state(const GibbsSpec& g) {
  g.validate();
  const EigenDecomposition eig = eigh(g.hamiltonian);
  const double e0 = eig.eigenvalues.minCoeff();
  const HermitianMatrix w =
      matrix_function(eig, [&](double e) { return std::exp(-g.beta * (e - e0)); }, false);
  return DensityMatrix::nearest(w * (1.0 / w.trace()), 1e-9);
}

FreeEnergyReport free_energy_report(const DensityMatrix& rho, const GibbsSpec& g) {
  g.validate();
  if (rho.dim() != g.hamiltonian.dim()) throw ValidationError("free_energy: dimension mismatch");
  const DensityMatrix gamma = gibbs_state(g);
  FreeEnergyReport r;
  r.value = (relative_entropy(rho.hermitian(), gamma.hermitian()).value() - g.log2_partition()) / g.beta;
  const RVector p = eigh(rho.hermitian()).eigenvalues;
  double neg_entropy_nats = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) > 0.0) neg_entropy_nats += p(i) * std::log(p(i));
  }
  r.from_energy = (trace_product(rho.hermitian(), g.hamiltonian) + neg_entropy_nats / g.beta) / std::log(2.0);
  r.residual = std::abs(r.value - r.from_energy);
  if (!(r.residual <= kFreeEnergyTolerance * std::max(1.0, std::abs(r.value)))) {
    std::ostringstream msg;
    msg << "free_energy: the two expressions disagree by " << r.residual;
    throw NumericalError(msg.str());
  }
  return r;
}

double free_energy(const DensityMatrix& rho, const GibbsSpec& g) {
  return free_energy_report(rho, g).value;
}

const char* to_string(AthermalityVerdict v) {
  switch (v) {
    case AthermalityVerdict::AsymptoticallyFeasible:
      return "asymptotically-feasible";
    case AthermalityVerdict::StrongConverseRegime:
      return "strong-converse";
    case AthermalityVerdict::NearCritical:
      return "near-critical";
  }
  return "unknown";
}

AthermalityReport athermality_feasible(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                       const GibbsSpec& g) {
  if (rho1.dim() != rho2.dim()) throw ValidationError("athermality: states differ in dimension");
  const DensityMatrix gamma = gibbs_state(g);
  AthermalityReport r;
  r.lambda1 = relative_entropy(rho1.hermitian(), gamma.hermitian()).value();
  r.lambda2 = relative_entropy(rho2.hermitian(), gamma.hermitian()).value();
  r.free_energy1 = free_energy(rho1, g);
  r.free_energy2 = free_energy(rho2, g);
  const double scale = std::max(r.lambda1, r.lambda2);
  if (std::abs(r.lambda1 - r.lambda2) <= kNearCriticalBand * scale) {
    r.verdict = AthermalityVerdict::NearCritical;
  } else {
    r.verdict = r.lambda1 > r.lambda2 ? AthermalityVerdict::AsymptoticallyFeasible
                                      : AthermalityVerdict::StrongConverseRegime;
  }
  return r;
}

CMatrix dephase(const CMatrix& x) {
  CMatrix out = CMatrix::Zero(x.rows(), x.cols());
  out.diagonal() = x.diagonal();
  return out;
}

DensityMatrix dephase(const DensityMatrix& rho) {
  return DensityMatrix::nearest(HermitianMatrix(dephase(rho.matrix())), 1e-12);
}

DioReport dio_report(const Channel& ch) {
  const Eigen::Index d = dim_in(ch);
  DioReport rep;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      CMatrix unit = CMatrix::Zero(d, d);
      unit(i, j) = 1.0;
      const CMatrix lhs = apply_linear(ch, dephase(unit));
      const CMatrix rhs = dephase(apply_linear(ch, unit));
      const double dev = (lhs - rhs).cwiseAbs().maxCoeff();
      if (dev > rep.deviation) {
        rep.deviation = dev;
        rep.row = i;
        rep.col = j;
      }
    }
  }
  rep.commutes = rep.deviation <= kDioTolerance;
  return rep;
}

bool is_dio(const Channel& ch) { return dio_report(ch).commutes; }

bool is_rho_dio(const Channel& ch, const DensityMatrix& rho) {
  if (rho.dim() != dim_in(ch)) throw ValidationError("is_rho_dio: dimension mismatch");
  const CMatrix lhs = apply_linear(ch, dephase(rho.matrix()));
  const CMatrix rhs = dephase(apply_linear(ch, rho.matrix()));
  return (lhs - rhs).cwiseAbs().maxCoeff() <= kDioTolerance;
}

double coherence_distillation_rate(const DensityMatrix& rho) {
  return relative_entropy(Dichotomy(rho, dephase(rho))).value();
}

std::string RateValue::str() const {
  if (unbounded) return "unbounded";
  std::ostringstream s;
  s.precision(9);
  s << value;
  return s.str();
}

RateValue dio_transformation_rate(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double num = coherence_distillation_rate(rho);
  const double den = coherence_distillation_rate(sigma);
  if (den <= kIncoherent) return {0.0, true};
  return {num / den, false};
}

}  // namespace dichotomy
