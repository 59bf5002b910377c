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

#include "dichotomy/conic.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "dichotomy/error.hpp"

namespace dichotomy {

std::size_t SdpProblem::add_block(Eigen::Index dim) {
  if (dim < 1) throw ValidationError("SDP block dimension must be positive");
  block_dims.push_back(dim);
  objective.push_back(HermitianMatrix::zero(dim));
  return block_dims.size() - 1;
}

void SdpProblem::set_objective(std::size_t block, const HermitianMatrix& c) {
  if (block >= block_dims.size()) throw ValidationError("objective: block index out of range");
  objective[block] = c;
}

void SdpProblem::add_constraint(SdpConstraint c) { constraints.push_back(std::move(c)); }

std::vector<HermitianMatrix> hermitian_basis(Eigen::Index dim) {
  std::vector<HermitianMatrix> basis;
  basis.reserve(static_cast<std::size_t>(dim * dim));
  const double r = 1.0 / std::sqrt(2.0);
  for (Eigen::Index k = 0; k < dim; ++k) {
    CMatrix e = CMatrix::Zero(dim, dim);
    e(k, k) = 1.0;
    basis.emplace_back(e);
  }
  for (Eigen::Index k = 0; k < dim; ++k) {
    for (Eigen::Index l = k + 1; l < dim; ++l) {
      CMatrix s = CMatrix::Zero(dim, dim);
      s(k, l) = r;
      s(l, k) = r;
      basis.emplace_back(s);
      CMatrix a = CMatrix::Zero(dim, dim);
      a(k, l) = Complex(0.0, r);
      a(l, k) = Complex(0.0, -r);
      basis.emplace_back(a);
    }
  }
  return basis;
}

void SdpProblem::add_matrix_equality(Eigen::Index dim, const std::vector<MatrixTerm>& terms,
                                     const HermitianMatrix& rhs) {
  if (rhs.dim() != dim) throw ValidationError("matrix equality: rhs dimension mismatch");
  for (const MatrixTerm& t : terms) {
    if (t.block >= block_dims.size()) throw ValidationError("matrix equality: bad block index");
    if (t.times.dim() > 0) {
      if (block_dims[t.block] != 1 || t.times.dim() != dim) {
        throw ValidationError("matrix equality: scalar term needs a 1x1 block and matching matrix");
      }
    } else {
      if (t.map.size() > 0 && t.map.rows() != dim) {
        throw ValidationError("matrix equality: map has the wrong number of rows");
      }
      const Eigen::Index sub = t.map.size() > 0 ? t.map.cols() : dim;
      if (t.offset < 0 || t.offset + sub > block_dims[t.block]) {
        throw ValidationError("matrix equality: sub-block exceeds block");
      }
    }
  }
  for (const HermitianMatrix& e : hermitian_basis(dim)) {
    SdpConstraint c;
    c.rhs = trace_product(e, rhs);
    for (const MatrixTerm& t : terms) {
      const Eigen::Index bd = block_dims[t.block];
      if (t.times.dim() > 0) {
        CMatrix one(1, 1);
        one(0, 0) = t.scale * trace_product(e, t.times);
        c.terms.push_back({t.block, HermitianMatrix(one)});
      } else {
        CMatrix full = CMatrix::Zero(bd, bd);
        if (t.map.size() > 0) {
          const Eigen::Index sub = t.map.cols();
          full.block(t.offset, t.offset, sub, sub) = t.scale * (t.map.adjoint() * e.matrix() * t.map);
        } else {
          full.block(t.offset, t.offset, dim, dim) = t.scale * e.matrix();
        }
        c.terms.push_back({t.block, HermitianMatrix(full)});
      }
    }
    constraints.push_back(std::move(c));
  }
}

Eigen::Index SdpProblem::total_dim() const {
  Eigen::Index n = 0;
  for (Eigen::Index d : block_dims) n += d;
  return n;
}

void SdpProblem::validate(Eigen::Index max_total_dim) const {
  if (block_dims.empty()) throw ValidationError("SDP has no blocks");
  if (objective.size() != block_dims.size()) {
    throw ValidationError("SDP objective count does not match block count");
  }
  for (std::size_t b = 0; b < block_dims.size(); ++b) {
    if (block_dims[b] < 1) throw ValidationError("SDP block dimension must be positive");
    if (objective[b].dim() != block_dims[b]) {
      throw ValidationError("SDP objective block " + std::to_string(b) + " has wrong dimension");
    }
  }
  if (total_dim() > max_total_dim) {
    throw ValidationError("SDP total dimension " + std::to_string(total_dim()) +
                          " exceeds limit " + std::to_string(max_total_dim));
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (!std::isfinite(constraints[i].rhs)) {
      throw ValidationError("SDP constraint " + std::to_string(i) + " has non-finite rhs");
    }
    for (const SdpTerm& t : constraints[i].terms) {
      if (t.block >= block_dims.size() || t.coeff.dim() != block_dims[t.block]) {
        throw ValidationError("SDP constraint " + std::to_string(i) +
                              " references a block inconsistently");
      }
    }
  }
}

std::string_view to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::Infeasible: return "infeasible";
    case SdpStatus::Unbounded: return "unbounded";
    case SdpStatus::IterLimit: return "iteration-limit";
  }
  return "unknown";
}

namespace {

// Constraint data after merging duplicate blocks and row scaling.
struct Row {
  std::vector<std::pair<std::size_t, CMatrix>> terms;
  double rhs = 0.0;
  double scale = 1.0;  // original row = scale * this row
};

struct Compiled {
  std::vector<Eigen::Index> dims;
  std::vector<CMatrix> cost;
  std::vector<Row> rows;
  std::vector<std::vector<std::size_t>> touching;  // rows per block
  double norm_b = 0.0;
  double norm_c = 0.0;
};

Compiled compile(const std::vector<Eigen::Index>& dims, const std::vector<CMatrix>& cost,
                 const std::vector<std::vector<std::pair<std::size_t, CMatrix>>>& terms,
                 const std::vector<double>& rhs) {
  Compiled c;
  c.dims = dims;
  c.cost = cost;
  c.touching.resize(dims.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    Row row;
    for (const auto& [b, m] : terms[i]) {
      auto it = std::find_if(row.terms.begin(), row.terms.end(),
                             [b = b](const auto& t) { return t.first == b; });
      if (it == row.terms.end()) {
        row.terms.emplace_back(b, m);
      } else {
        it->second += m;
      }
    }
    double norm2 = 0.0;
    for (const auto& t : row.terms) norm2 += t.second.squaredNorm();
    const double nrm = std::sqrt(norm2);
    if (nrm > 0.0) {
      for (auto& t : row.terms) t.second /= nrm;
      row.scale = nrm;
    }
    row.rhs = nrm > 0.0 ? rhs[i] / nrm : rhs[i];
    for (const auto& t : row.terms) c.touching[t.first].push_back(i);
    c.rows.push_back(std::move(row));
  }
  for (const Row& r : c.rows) c.norm_b += r.rhs * r.rhs;
  c.norm_b = std::sqrt(c.norm_b);
  for (const CMatrix& m : c.cost) c.norm_c += m.squaredNorm();
  c.norm_c = std::sqrt(c.norm_c);
  return c;
}

double re_dot(const CMatrix& a, const CMatrix& b) {
  return (a.array() * b.conjugate().array()).sum().real();
}

CMatrix herm(const CMatrix& m) { return (m + m.adjoint()) * 0.5; }

struct Iterate {
  std::vector<CMatrix> x, z;
  RVector y;
};

RVector apply_a(const Compiled& c, const std::vector<CMatrix>& x) {
  RVector r(static_cast<Eigen::Index>(c.rows.size()));
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    double s = 0.0;
    for (const auto& [b, a] : c.rows[i].terms) s += re_dot(a, x[b]);
    r(static_cast<Eigen::Index>(i)) = s;
  }
  return r;
}

std::vector<CMatrix> apply_at(const Compiled& c, const RVector& y) {
  std::vector<CMatrix> out;
  for (Eigen::Index d : c.dims) out.push_back(CMatrix::Zero(d, d));
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    for (const auto& [b, a] : c.rows[i].terms) out[b] += y(static_cast<Eigen::Index>(i)) * a;
  }
  return out;
}

// Largest step t <= 1/... such that x + t dx stays PSD (returns +inf if
// any step is allowed).
double max_step(const CMatrix& x, const CMatrix& dx) {
  Eigen::LLT<CMatrix> llt(x);
  if (llt.info() != Eigen::Success) {
    // Roundoff left x barely indefinite; fall back to its eigenbasis.
    Eigen::SelfAdjointEigenSolver<CMatrix> ex(herm(x));
    const RVector lam = ex.eigenvalues().cwiseMax(1e-300);
    const CMatrix s = ex.eigenvectors() * lam.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm(s.adjoint() * dx * s), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
  }
  const CMatrix li_dx = llt.matrixL().solve(dx);
  const CMatrix t = llt.matrixL().solve(CMatrix(li_dx.adjoint()));
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm(t), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

struct CoreResult {
  Iterate it;
  bool converged = false;
  bool diverged = false;
  int iterations = 0;
  double pobj = 0.0, dobj = 0.0;
  double pinf = 0.0, dinf = 0.0;  // relative
};

CoreResult solve_core(const Compiled& c, const SdpOptions& opts, const Iterate* start) {
  const std::size_t nb = c.dims.size();
  const auto m = static_cast<Eigen::Index>(c.rows.size());
  Eigen::Index n_total = 0;
  for (Eigen::Index d : c.dims) n_total += d;

  Iterate it;
  if (start != nullptr) {
    it = *start;
  } else {
    it.y = RVector::Zero(m);
    for (std::size_t b = 0; b < nb; ++b) {
      const auto d = static_cast<double>(c.dims[b]);
      double xi = std::max(10.0, std::sqrt(d));
      double eta = std::max({10.0, std::sqrt(d), c.cost[b].norm()});
      for (std::size_t i : c.touching[b]) {
        for (const auto& [bb, a] : c.rows[i].terms) {
          if (bb != b) continue;
          const double an = a.norm();
          xi = std::max(xi, d * (1.0 + std::abs(c.rows[i].rhs)) / (1.0 + an));
          eta = std::max(eta, an);
        }
      }
      it.x.push_back(xi * CMatrix::Identity(c.dims[b], c.dims[b]));
      it.z.push_back(eta * CMatrix::Identity(c.dims[b], c.dims[b]));
    }
  }

  CoreResult res;
  double best_merit = std::numeric_limits<double>::infinity();
  int stall = 0;
  for (int iter = 0; iter <= opts.max_iterations; ++iter) {
    res.iterations = iter;
    const RVector ax = apply_a(c, it.x);
    RVector rp(m);
    for (Eigen::Index i = 0; i < m; ++i) rp(i) = c.rows[static_cast<std::size_t>(i)].rhs - ax(i);
    const std::vector<CMatrix> aty = apply_at(c, it.y);
    std::vector<CMatrix> rd(nb);
    double rd_norm2 = 0.0, pobj = 0.0, dobj = 0.0, xz = 0.0, xnorm = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      rd[b] = c.cost[b] - aty[b] - it.z[b];
      rd_norm2 += rd[b].squaredNorm();
      pobj += re_dot(c.cost[b], it.x[b]);
      xz += re_dot(it.x[b], it.z[b]);
      xnorm = std::max(xnorm, it.x[b].norm());
    }
    for (Eigen::Index i = 0; i < m; ++i) dobj += c.rows[static_cast<std::size_t>(i)].rhs * it.y(i);
    const double mu = xz / static_cast<double>(n_total);
    const double pinf = rp.norm() / (1.0 + c.norm_b);
    const double dinf = std::sqrt(rd_norm2) / (1.0 + c.norm_c);
    const double relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    const double merit = std::max({pinf, dinf, relgap});
    if (merit < best_merit) {
      res.it = it;
      res.pobj = pobj;
      res.dobj = dobj;
      res.pinf = pinf;
      res.dinf = dinf;
    }
    if (pinf <= opts.tolerance && dinf <= opts.tolerance && relgap <= opts.tolerance &&
        xz / (1.0 + std::abs(pobj) + std::abs(dobj)) <= 10 * opts.tolerance) {
      res.converged = true;
      return res;
    }
    if (iter == opts.max_iterations) break;
    if (xnorm > 1e12 || it.y.norm() > 1e12) {
      res.diverged = true;
      return res;
    }
    // Far from the optimum progress can be slow but steady; near it, a run
    // of non-improving steps means roundoff has taken over.
    if (merit < 0.9 * best_merit) {
      stall = 0;
    } else if (++stall > (best_merit < 1e-6 ? 15 : 40)) {
      break;
    }
    best_merit = std::min(best_merit, merit);

    // Schur complement M_ij = sum_b Re tr(A_ib X_b A_jb Z_b^-1).
    std::vector<CMatrix> zinv(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      Eigen::LLT<CMatrix> llt(it.z[b]);
      if (llt.info() != Eigen::Success) {
        res.diverged = true;
        return res;
      }
      zinv[b] = herm(llt.solve(CMatrix::Identity(c.dims[b], c.dims[b])));
    }
    Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t b = 0; b < nb; ++b) {
      const auto& rows = c.touching[b];
      std::vector<const CMatrix*> coeff(rows.size());
      for (std::size_t k = 0; k < rows.size(); ++k) {
        for (const auto& [bb, a] : c.rows[rows[k]].terms) {
          if (bb == b) coeff[k] = &a;
        }
      }
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const CMatrix g = zinv[b] * (*coeff[k]) * it.x[b];
        const CMatrix gt = g.transpose();
        for (std::size_t l = k; l < rows.size(); ++l) {
          const double v = (coeff[l]->array() * gt.array()).sum().real();
          const auto i = static_cast<Eigen::Index>(rows[k]);
          const auto j = static_cast<Eigen::Index>(rows[l]);
          schur(i, j) += v;
          if (i != j) schur(j, i) += v;
        }
      }
    }
    // M is positive definite in exact arithmetic; near the optimum it can
    // lose definiteness to roundoff, so retry with a growing ridge.
    schur = 0.5 * (schur + schur.transpose()).eval();
    Eigen::LLT<Eigen::MatrixXd> fact(schur);
    const double ridge0 = 1e-15 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
    for (double ridge = ridge0; fact.info() != Eigen::Success && ridge < 1e6 * ridge0;
         ridge *= 100.0) {
      fact.compute(schur + ridge * Eigen::MatrixXd::Identity(m, m));
    }
    if (fact.info() != Eigen::Success) break;

    // Direction for a given complementarity residual rc (per block).
    std::vector<CMatrix> x_rd_zinv(nb);
    for (std::size_t b = 0; b < nb; ++b) x_rd_zinv[b] = it.x[b] * rd[b] * zinv[b];
    const RVector a_xrdz = apply_a(c, x_rd_zinv);
    auto direction = [&](const std::vector<CMatrix>& rc, std::vector<CMatrix>& dx,
                         RVector& dy, std::vector<CMatrix>& dz) {
      std::vector<CMatrix> rcz(nb);
      for (std::size_t b = 0; b < nb; ++b) rcz[b] = rc[b] * zinv[b];
      const RVector h = rp - apply_a(c, rcz) + a_xrdz;
      dy = fact.solve(h);
      const std::vector<CMatrix> atdy = apply_at(c, dy);
      dz.resize(nb);
      dx.resize(nb);
      for (std::size_t b = 0; b < nb; ++b) {
        dz[b] = herm(rd[b] - atdy[b]);
        dx[b] = herm(rcz[b] - it.x[b] * dz[b] * zinv[b]);
      }
    };
    auto step_lengths = [&](const std::vector<CMatrix>& dx, const std::vector<CMatrix>& dz,
                            double& ap, double& ad) {
      ap = std::numeric_limits<double>::infinity();
      ad = ap;
      for (std::size_t b = 0; b < nb; ++b) {
        ap = std::min(ap, max_step(it.x[b], dx[b]));
        ad = std::min(ad, max_step(it.z[b], dz[b]));
      }
    };

    // Predictor.
    std::vector<CMatrix> rc(nb);
    for (std::size_t b = 0; b < nb; ++b) rc[b] = -it.x[b] * it.z[b];
    std::vector<CMatrix> dx, dz;
    RVector dy;
    direction(rc, dx, dy, dz);
    double ap = 0.0, ad = 0.0;
    step_lengths(dx, dz, ap, ad);
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);
    double xz_aff = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      xz_aff += re_dot(it.x[b] + ap * dx[b], it.z[b] + ad * dz[b]);
    }
    const double mu_aff = xz_aff / static_cast<double>(n_total);
    const double ratio = std::max(0.0, mu_aff / mu);
    const double sigma = std::clamp(std::pow(ratio, mu > 1e-6 ? 2.0 : 3.0), 0.0, 1.0);

    // Corrector.
    for (std::size_t b = 0; b < nb; ++b) {
      rc[b] = sigma * mu * CMatrix::Identity(c.dims[b], c.dims[b]) - it.x[b] * it.z[b] -
              dx[b] * dz[b];
    }
    direction(rc, dx, dy, dz);
    step_lengths(dx, dz, ap, ad);
    const double gamma = 0.9 + 0.09 * std::min({1.0, ap, ad});
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);
    if (ap < 1e-10 && ad < 1e-10) break;
    for (std::size_t b = 0; b < nb; ++b) {
      it.x[b] = herm(it.x[b] + ap * dx[b]);
      it.z[b] = herm(it.z[b] + ad * dz[b]);
    }
    it.y += ad * dy;
  }
  return res;
}

SdpSolution finish(const SdpProblem& p, const Compiled& c, const CoreResult& r) {
  SdpSolution s;
  s.iterations = r.iterations;
  for (std::size_t b = 0; b < c.dims.size(); ++b) {
    s.primal.emplace_back(r.it.x[b]);
    s.dual_slack.emplace_back(r.it.z[b]);
  }
  s.dual = RVector(static_cast<Eigen::Index>(c.rows.size()));
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    s.dual(static_cast<Eigen::Index>(i)) = r.it.y(static_cast<Eigen::Index>(i)) / c.rows[i].scale;
  }
  // Residuals against the unscaled data.
  double pr = 0.0;
  for (const SdpConstraint& con : p.constraints) {
    double v = -con.rhs;
    for (const SdpTerm& t : con.terms) v += trace_product(t.coeff, s.primal[t.block]);
    pr += v * v;
  }
  s.primal_residual = std::sqrt(pr);
  std::vector<CMatrix> aty;
  for (Eigen::Index d : p.block_dims) aty.push_back(CMatrix::Zero(d, d));
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    for (const SdpTerm& t : p.constraints[i].terms) {
      aty[t.block] += s.dual(static_cast<Eigen::Index>(i)) * t.coeff.matrix();
    }
  }
  double dr = 0.0;
  s.primal_value = 0.0;
  for (std::size_t b = 0; b < p.block_dims.size(); ++b) {
    dr += (p.objective[b].matrix() - aty[b] - r.it.z[b]).squaredNorm();
    s.primal_value += trace_product(p.objective[b], s.primal[b]);
  }
  s.dual_residual = std::sqrt(dr);
  s.dual_value = 0.0;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    s.dual_value += p.constraints[i].rhs * s.dual(static_cast<Eigen::Index>(i));
  }
  s.gap = std::abs(s.primal_value - s.dual_value);
  return s;
}

bool meets_optimality_contract(const SdpSolution& s) {
  return s.gap <= 1e-7 * std::max(1.0, std::abs(s.primal_value)) && s.primal_residual <= 1e-8;
}

std::vector<std::vector<std::pair<std::size_t, CMatrix>>> terms_of(const SdpProblem& p) {
  std::vector<std::vector<std::pair<std::size_t, CMatrix>>> out;
  for (const SdpConstraint& con : p.constraints) {
    std::vector<std::pair<std::size_t, CMatrix>> row;
    for (const SdpTerm& t : con.terms) row.emplace_back(t.block, t.coeff.matrix());
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<double> rhs_of(const SdpProblem& p) {
  std::vector<double> out;
  for (const SdpConstraint& con : p.constraints) out.push_back(con.rhs);
  return out;
}

// min s  s.t.  A(X) + s (b - A(I)) = b,  X >= 0, s >= 0; started at X = I,
// s = 1. Returns the optimal s, or nothing if the phase-1 solve fails.
std::optional<double> phase_one(const SdpProblem& p, const SdpOptions& opts) {
  std::vector<Eigen::Index> dims = p.block_dims;
  dims.push_back(1);
  const std::size_t sb = dims.size() - 1;
  std::vector<CMatrix> cost;
  for (Eigen::Index d : p.block_dims) cost.push_back(CMatrix::Zero(d, d));
  cost.push_back(CMatrix::Ones(1, 1));
  auto terms = terms_of(p);
  const std::vector<double> rhs = rhs_of(p);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    double a_identity = 0.0;
    for (const auto& [b, a] : terms[i]) a_identity += a.trace().real();
    CMatrix coef(1, 1);
    coef(0, 0) = rhs[i] - a_identity;
    terms[i].emplace_back(sb, coef);
  }
  const Compiled c = compile(dims, cost, terms, rhs);
  Iterate start;
  for (Eigen::Index d : dims) start.x.push_back(CMatrix::Identity(d, d));
  start.y = RVector::Zero(static_cast<Eigen::Index>(c.rows.size()));
  for (std::size_t b = 0; b < dims.size(); ++b) {
    start.z.push_back(10.0 * CMatrix::Identity(dims[b], dims[b]));
  }
  const CoreResult r = solve_core(c, opts, &start);
  if (!r.converged) return std::nullopt;
  return r.it.x[sb](0, 0).real();
}

// min <C, X>  s.t.  A(X) = 0, sum_b tr X_b = 1. A negative optimum is a
// primal improving ray, hence no dual-feasible y exists.
bool has_improving_ray(const SdpProblem& p, const SdpOptions& opts) {
  std::vector<CMatrix> cost;
  for (const HermitianMatrix& h : p.objective) cost.push_back(h.matrix());
  auto terms = terms_of(p);
  std::vector<double> rhs(terms.size(), 0.0);
  std::vector<std::pair<std::size_t, CMatrix>> norm_row;
  for (std::size_t b = 0; b < p.block_dims.size(); ++b) {
    norm_row.emplace_back(b, CMatrix::Identity(p.block_dims[b], p.block_dims[b]));
  }
  terms.push_back(norm_row);
  rhs.push_back(1.0);
  const Compiled c = compile(p.block_dims, cost, terms, rhs);
  const CoreResult r = solve_core(c, opts, nullptr);
  if (!r.converged) return false;
  return r.pobj < -1e-7 * (1.0 + c.norm_c);
}

}  // namespace

SdpSolution solve(const SdpProblem& p, const SdpOptions& opts) {
  p.validate(opts.max_total_dim);
  std::vector<CMatrix> cost;
  for (const HermitianMatrix& h : p.objective) cost.push_back(h.matrix());
  const Compiled c = compile(p.block_dims, cost, terms_of(p), rhs_of(p));
  const CoreResult r = solve_core(c, opts, nullptr);
  SdpSolution s = finish(p, c, r);
  if (r.converged || meets_optimality_contract(s)) {
    s.status = SdpStatus::Optimal;
    return s;
  }
  s.status = SdpStatus::IterLimit;
  if (!opts.detect_infeasibility) return s;
  SdpOptions sub = opts;
  sub.detect_infeasibility = false;
  const std::optional<double> s_star = phase_one(p, sub);
  if (!s_star) return s;
  if (*s_star > 1e-6) {
    s.status = SdpStatus::Infeasible;
  } else if (has_improving_ray(p, sub)) {
    s.status = SdpStatus::Unbounded;
  }
  return s;
}

}  // namespace dichotomy
