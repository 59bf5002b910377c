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

#include "dichotomy/channels.hpp"

namespace dichotomy {

/// Hamiltonian E (energy units) and inverse temperature beta > 0. The
/// Gibbs state is exp(-beta E) / Z; entropic quantities are in bits, so
/// free energies come out in energy units divided by ln 2.
struct GibbsSpec {
  HermitianMatrix hamiltonian;
  double beta = 1.0;

  void validate() const;
  /// log2 of the partition function tr exp(-beta E).
  double log2_partition() const;
};

DensityMatrix gibbs_state(const GibbsSpec& g);

struct FreeEnergyReport {
  double value = 0.0;           // (D(rho||gamma) - log2 Z) / beta
  double from_energy = 0.0;     // (tr rho E + tr rho ln rho / beta) / ln 2
  double residual = 0.0;
};

/// Both expressions for the Helmholtz free energy; throws NumericalError
/// if they differ by more than 1e-8.
FreeEnergyReport free_energy_report(const DensityMatrix& rho, const GibbsSpec& g);
double free_energy(const DensityMatrix& rho, const GibbsSpec& g);

enum class AthermalityVerdict { AsymptoticallyFeasible, StrongConverseRegime, NearCritical };
const char* to_string(AthermalityVerdict v);

struct AthermalityReport {
  double lambda1 = 0.0;  // D(rho1||gamma)
  double lambda2 = 0.0;  // D(rho2||gamma)
  double free_energy1 = 0.0;
  double free_energy2 = 0.0;
  AthermalityVerdict verdict = AthermalityVerdict::NearCritical;
};

/// Gibbs-preserving conversion rho1^n -> rho2^n: exponentially small error
/// when lambda1 > lambda2, error tending to one when lambda1 < lambda2;
/// within 2% of each other the call is left open.
AthermalityReport athermality_feasible(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                       const GibbsSpec& g);

/// Complete dephasing in the computational basis.
DensityMatrix dephase(const DensityMatrix& rho);
CMatrix dephase(const CMatrix& x);

struct DioReport {
  bool commutes = true;
  /// Worst matrix unit |i><j| and the entrywise deviation it produced.
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  double deviation = 0.0;
};

/// Checks E(diag X) = diag E(X) on all matrix units (tolerance 1e-9).
DioReport dio_report(const Channel& ch);
bool is_dio(const Channel& ch);
/// The same identity on one state only.
bool is_rho_dio(const Channel& ch, const DensityMatrix& rho);

/// Relative entropy of coherence D(rho || diag rho), in bits.
double coherence_distillation_rate(const DensityMatrix& rho);

struct RateValue {
  double value = 0.0;
  bool unbounded = false;
  std::string str() const;
};

/// D(rho||diag rho) / D(sigma||diag sigma); unbounded for incoherent sigma.
RateValue dio_transformation_rate(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace dichotomy
