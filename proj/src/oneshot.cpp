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

#include "dichotomy/oneshot.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <sstream>

#include "dichotomy/classical.hpp"
#include "dichotomy/error.hpp"

namespace dichotomy {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_eps(double eps, const char* what) {
  if (!(eps > 0.0 && eps < 1.0)) {
    std::ostringstream msg;
    msg << what << ": eps=" << eps << " outside (0,1)";
    throw ValidationError(msg.str());
  }
}

// Projector onto the strictly positive eigenspace, blockwise.
BlockOperator positive_projector_blocks(const BlockOperator& a) {
  BlockOperator out = a;
  for (Block& b : out.blocks) {
    b.mat = matrix_function(eigh(b.mat), [](double x) { return x > 0.0 ? 1.0 : 0.0; }, false);
  }
  return out;
}

BlockOperator lincomb(double a, const BlockOperator& x, double b, const BlockOperator& y) {
  BlockOperator out = x;
  for (std::size_t i = 0; i < x.blocks.size(); ++i) {
    out.blocks[i].mat = x.blocks[i].mat * a + y.blocks[i].mat * b;
  }
  return out;
}

// Lagrangian lower bound mu (1 - eps) - tr(mu rho - sigma)_+ on the type-II error.
double dual_bound(const BlockDichotomy& d, double mu, double eps) {
  return mu * (1.0 - eps) - positive_part_trace(lincomb(mu, d.rho, -1.0, d.sigma));
}

void require_full_support(const BlockOperator& sigma) {
  for (const Block& b : sigma.blocks) {
    const RVector ev = eigh(b.mat).eigenvalues;
    if (!(ev.minCoeff() > kSupportCutoff * ev.cwiseAbs().maxCoeff())) {
      throw ValidationError("smooth_dmax: sigma must have full support");
    }
  }
}

// Hermitian part, negative eigenvalues clipped; blocks renormalized to
// total trace one.
BlockOperator clean_state(const BlockOperator& w) {
  BlockOperator out = w;
  for (Block& b : out.blocks) {
    b.mat = matrix_function(eigh(b.mat), [](double x) { return x > 0.0 ? x : 0.0; }, false);
  }
  const double t = out.trace();
  if (!(t > 0.0)) throw NumericalError("smooth_dmax: witness has zero trace");
  return out * (1.0 / t);
}

double block_dmax_bits(const BlockOperator& r, const BlockOperator& sigma) {
  double top = 0.0;
  for (std::size_t k = 0; k < r.blocks.size(); ++k) {
    const HermitianMatrix inv_sqrt = matrix_function(
        sigma.blocks[k].mat, [](double x) { return 1.0 / std::sqrt(x); }, true);
    top = std::max(top, max_eigenvalue(r.blocks[k].mat.congruence(inv_sqrt.matrix())));
  }
  return std::max(0.0, std::log2(top));
}

double block_distance(const BlockOperator& a, const BlockOperator& b, Metric metric) {
  if (metric == Metric::TraceDistance) return std::clamp(trace_distance(a, b), 0.0, 1.0);
  return purified_distance(a, b);
}

DensityMatrix dense_state(const BlockOperator& b) {
  if (b.blocks.size() != 1 || b.blocks[0].multiplicity != 1.0) {
    throw ValidationError("expected a single-block operator");
  }
  return DensityMatrix::nearest(b.blocks[0].mat, 1e-8);
}

}  // namespace

Effect::Effect(const HermitianMatrix& m) : mat_(m) {
  const RVector ev = eigh(m).eigenvalues;
  if (ev.minCoeff() < -1e-9 || ev.maxCoeff() > 1.0 + 1e-9) {
    std::ostringstream msg;
    msg << "effect eigenvalues must lie in [0,1], got [" << ev.minCoeff() << ", "
        << ev.maxCoeff() << "]";
    throw ValidationError(msg.str());
  }
}

BlockDichotomy BlockDichotomy::from(const Dichotomy& d) {
  return {BlockOperator::single(d.rho.hermitian()), BlockOperator::single(d.sigma.hermitian())};
}

BlockDichotomy BlockDichotomy::tensor_power(const Dichotomy& d, int n) {
  if (d.dim() == 2) {
    return {qubit_tensor_power(d.rho.hermitian(), n), qubit_tensor_power(d.sigma.hermitian(), n)};
  }
  return {BlockOperator::single(dichotomy::tensor_power(d.rho, n).hermitian()),
          BlockOperator::single(dichotomy::tensor_power(d.sigma, n).hermitian())};
}

BlockHypothesisTest hypothesis_testing(const BlockDichotomy& d, double eps) {
  require_eps(eps, "hypothesis_testing");
  const double target = 1.0 - eps;
  BlockHypothesisTest out;

  // Mass of rho outside supp(sigma) can be accepted for free.
  BlockOperator outside = d.sigma;
  for (Block& b : outside.blocks) {
    b.mat = HermitianMatrix::identity(b.mat.dim()) - support_projector(b.mat);
  }
  const double free_mass = trace_product(d.rho, outside);
  if (free_mass >= target) {
    out.optimizer = outside * (target / free_mass);
    out.type1 = 1.0 - trace_product(d.rho, out.optimizer);
    out.type2 = 0.0;
    out.value = DivergenceValue::inf();
    return out;
  }

  // f(mu) = tr rho P+(mu rho - sigma) is nondecreasing and f(1/eps) >= 1 - eps.
  auto accept = [&](double mu, BlockOperator& proj) {
    proj = positive_projector_blocks(lincomb(mu, d.rho, -1.0, d.sigma));
    return trace_product(d.rho, proj);
  };
  double lo = 0.0, hi = 1.0 / eps;
  BlockOperator p_lo, p_hi;
  double f_lo = accept(lo, p_lo);
  double f_hi = accept(hi, p_hi);
  while (f_hi < target) {  // roundoff safety; the bound above is exact
    hi *= 2.0;
    f_hi = accept(hi, p_hi);
  }
  for (int it = 0; it < 200 && hi - lo > 4.0 * DBL_EPSILON * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    BlockOperator p_mid;
    const double f_mid = accept(mid, p_mid);
    if (f_mid >= target) {
      hi = mid;
      f_hi = f_mid;
      p_hi = std::move(p_mid);
    } else {
      lo = mid;
      f_lo = f_mid;
      p_lo = std::move(p_mid);
    }
  }
  // Mix the two projectors so that tr rho Q = 1 - eps exactly.
  const double x = f_hi > f_lo ? std::clamp((target - f_lo) / (f_hi - f_lo), 0.0, 1.0) : 1.0;
  out.optimizer = lincomb(1.0 - x, p_lo, x, p_hi);
  out.type1 = 1.0 - trace_product(d.rho, out.optimizer);
  out.type2 = trace_product(d.sigma, out.optimizer);
  const double bound = std::max(dual_bound(d, lo, eps), dual_bound(d, hi, eps));
  out.duality_gap = out.type2 - bound;
  out.value = out.type2 > 0.0 ? DivergenceValue::finite(std::max(0.0, -std::log2(out.type2)))
                              : DivergenceValue::inf();
  return out;
}

SdpCrossCheck hypothesis_testing_sdp(const BlockDichotomy& d, double eps) {
  require_eps(eps, "hypothesis_testing_sdp");
  SdpProblem p;
  SdpConstraint accept;
  accept.rhs = 1.0 - eps;
  for (std::size_t k = 0; k < d.rho.blocks.size(); ++k) {
    const double mult = d.rho.blocks[k].multiplicity;
    const Eigen::Index dim = d.rho.blocks[k].mat.dim();
    const std::size_t q = p.add_block(dim);
    const std::size_t s = p.add_block(dim);
    p.set_objective(q, d.sigma.blocks[k].mat * mult);
    accept.terms.push_back({q, d.rho.blocks[k].mat * mult});
    p.add_matrix_equality(dim, {{q, 1.0, 0, {}, {}}, {s, 1.0, 0, {}, {}}}, HermitianMatrix::identity(dim));
  }
  p.add_constraint(std::move(accept));
  const SdpSolution sol = solve(p);
  SdpCrossCheck out;
  out.status = sol.status;
  out.duality_gap = sol.gap;
  out.value_bits = sol.primal_value > 0.0 ? -std::log2(sol.primal_value) : kInf;
  return out;
}

HypothesisTestResult hypothesis_testing(const Dichotomy& d, double eps, bool cross_check) {
  const BlockDichotomy b = BlockDichotomy::from(d);
  const BlockHypothesisTest r = hypothesis_testing(b, eps);
  HypothesisTestResult out{r.value, Effect(r.optimizer.blocks[0].mat), r.type1, r.type2,
                           r.duality_gap, std::nullopt};
  if (cross_check) out.sdp = hypothesis_testing_sdp(b, eps);
  return out;
}

// rho restricted to its support: eigenvectors V and eigenvalues above cutoff.
struct SupportFrame {
  CMatrix v;
  RVector lam;
  Eigen::Index rank() const { return lam.size(); }
};

SupportFrame support_frame(const HermitianMatrix& rho) {
  const EigenDecomposition er = eigh(rho);
  const double tau = std::max(support_cutoff(er.eigenvalues), 1e-15);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    if (er.eigenvalues(i) > tau) keep.push_back(i);
  }
  SupportFrame f{CMatrix(rho.dim(), static_cast<Eigen::Index>(keep.size())),
                 RVector(static_cast<Eigen::Index>(keep.size()))};
  for (std::size_t j = 0; j < keep.size(); ++j) {
    f.v.col(static_cast<Eigen::Index>(j)) = er.eigenvectors.col(keep[j]);
    f.lam(static_cast<Eigen::Index>(j)) = er.eigenvalues(keep[j]);
  }
  return f;
}

// 0.5 [[0, V^+], [V, 0]]: Re tr(K W) is the overlap Re tr(V Y).
HermitianMatrix overlap_operator(const SupportFrame& f) {
  const Eigen::Index rank = f.rank(), dim = f.v.rows();
  CMatrix kmat = CMatrix::Zero(rank + dim, rank + dim);
  kmat.block(0, rank, rank, dim) = 0.5 * f.v.adjoint();
  kmat.block(rank, 0, dim, rank) = 0.5 * f.v;
  return HermitianMatrix(kmat);
}

// Moves w towards rho until it sits inside the ball. Trace distance
// shrinks linearly in the weight, purified distance at least like its
// square root.
BlockOperator pull_into_ball(const BlockOperator& rho, BlockOperator w, double e, Metric metric,
                             double& dist) {
  dist = block_distance(rho, w, metric);
  if (dist > e) {
    const double ratio = e / dist;
    const double keep = metric == Metric::TraceDistance ? ratio : ratio * ratio;
    w = w * keep - rho * (keep - 1.0);
    dist = block_distance(rho, w, metric);
  }
  return w;
}

struct OverlapProbe {
  BlockOperator witness;  // inside the ball
  double bits = 0.0;      // D_max(witness || sigma)
  double overlap_ub = 0.0;
  bool certified = false;  // overlap_ub is backed by a dual solution
};

// Maximizes Re tr(V Y) over states r <= mu sigma, so the largest fidelity
// with rho reachable below mu sigma. Used when the direct purified program
// stalls: its feasible set is a sliver of width eps^2 around rho, which the
// overlap maximization avoids.
OverlapProbe overlap_probe(const BlockDichotomy& d, const std::vector<SupportFrame>& frames,
                           const std::vector<CMatrix>& whiten, double mu_rel, double e) {
  SdpProblem p;
  SdpConstraint unit_trace{{}, 1.0};
  const std::size_t nk = d.rho.blocks.size();
  std::vector<std::size_t> w_block(nk);
  for (std::size_t k = 0; k < nk; ++k) {
    const double mult = d.rho.blocks[k].multiplicity;
    const Eigen::Index dim = d.rho.blocks[k].mat.dim();
    const Eigen::Index rank = frames[k].rank();
    const std::size_t w = p.add_block(rank + dim);
    const std::size_t s = p.add_block(dim);
    w_block[k] = w;
    if (rank > 0) {
      p.add_matrix_equality(rank, {{w, 1.0, 0, {}, {}}}, HermitianMatrix(frames[k].lam));
      p.set_objective(w, overlap_operator(frames[k]) * -mult);
    }
    p.add_matrix_equality(dim, {{w, 1.0, rank, {}, whiten[k]}, {s, 1.0, 0, {}, {}}},
                          HermitianMatrix::identity(dim) * mu_rel);
    CMatrix id = CMatrix::Zero(rank + dim, rank + dim);
    id.block(rank, rank, dim, dim) = CMatrix::Identity(dim, dim) * mult;
    unit_trace.terms.push_back({w, HermitianMatrix(id)});
  }
  p.add_constraint(std::move(unit_trace));
  SdpOptions opts;
  opts.tolerance = 1e-12;
  opts.max_total_dim = 4096;
  opts.detect_infeasibility = false;
  const SdpSolution sol = solve(p, opts);

  BlockOperator raw = d.rho;
  for (std::size_t k = 0; k < nk; ++k) {
    const Eigen::Index dim = d.rho.blocks[k].mat.dim();
    const Eigen::Index rank = frames[k].rank();
    raw.blocks[k].mat =
        HermitianMatrix(CMatrix(sol.primal[w_block[k]].matrix().block(rank, rank, dim, dim)));
  }
  OverlapProbe out;
  double dist = 0.0;
  out.witness = pull_into_ball(d.rho, clean_state(raw), e, Metric::PurifiedDistance, dist);
  out.bits = block_dmax_bits(out.witness, d.sigma);
  out.certified = sol.dual_residual <= 1e-9;
  out.overlap_ub = -sol.dual_value;
  return out;
}

BlockSmoothMax smooth_dmax(const BlockDichotomy& d, double eps, Metric metric) {
  require_eps(eps, "smooth_dmax");
  require_full_support(d.sigma);
  // Solve on a marginally smaller ball so roundoff in the witness cannot
  // push its distance past eps.
  const double e = eps * (1.0 - 1e-7);
  // The optimum lies in [1, 2^D_max(rho||sigma)]; measure mu in units of
  // the upper end so the scalar variable stays O(1).
  const double mu_scale = std::exp2(block_dmax_bits(d.rho, d.sigma));
  // r <= mu sigma is imposed in sigma's whitened frame,
  // mu 1 - L^-1/2 U^+ r U L^-1/2 = S >= 0, which keeps S well scaled even
  // when sigma spans many orders of magnitude.
  std::vector<CMatrix> whiten;
  for (const Block& b : d.sigma.blocks) {
    const EigenDecomposition es = eigh(b.mat);
    const RVector inv_sqrt = (es.eigenvalues * mu_scale).cwiseSqrt().cwiseInverse();
    whiten.push_back(inv_sqrt.cast<Complex>().asDiagonal() * es.eigenvectors.adjoint());
  }
  SdpProblem p;
  const std::size_t mu = p.add_block(1);
  p.set_objective(mu, HermitianMatrix::identity(1));
  const std::size_t nk = d.rho.blocks.size();
  std::vector<std::size_t> w_block(nk);
  std::vector<Eigen::Index> w_offset(nk);
  SdpConstraint unit_trace{{}, 1.0};
  std::vector<SupportFrame> frames;

  if (metric == Metric::TraceDistance) {
    // r = rho - A + B, tr A <= eps, r <= mu sigma.
    SdpConstraint budget{{}, e};
    for (std::size_t k = 0; k < nk; ++k) {
      const double mult = d.rho.blocks[k].multiplicity;
      const Eigen::Index dim = d.rho.blocks[k].mat.dim();
      const std::size_t r = p.add_block(dim);
      const std::size_t s = p.add_block(dim);
      const std::size_t a = p.add_block(dim);
      const std::size_t b = p.add_block(dim);
      w_block[k] = r;
      w_offset[k] = 0;
      p.add_matrix_equality(dim, {{mu, 1.0, 0, HermitianMatrix::identity(dim), {}},
                                  {r, -1.0, 0, {}, whiten[k]}, {s, -1.0, 0, {}, {}}},
                            HermitianMatrix::zero(dim));
      p.add_matrix_equality(dim, {{r, 1.0, 0, {}, {}}, {a, 1.0, 0, {}, {}}, {b, -1.0, 0, {}, {}}},
                            d.rho.blocks[k].mat);
      unit_trace.terms.push_back({r, HermitianMatrix::identity(dim) * mult});
      budget.terms.push_back({a, HermitianMatrix::identity(dim) * mult});
    }
    const std::size_t t = p.add_block(1);
    budget.terms.push_back({t, HermitianMatrix::identity(1)});
    p.add_constraint(std::move(budget));
  } else {
    // Fidelity certificate: W = [[rho_r, Y], [Y^+, r]] >= 0 with rho
    // compressed onto its support, sum Re tr(V Y) >= sqrt(1 - eps^2).
    SdpConstraint overlap{{}, std::sqrt(1.0 - e * e)};
    for (const Block& b : d.rho.blocks) frames.push_back(support_frame(b.mat));
    for (std::size_t k = 0; k < nk; ++k) {
      const double mult = d.rho.blocks[k].multiplicity;
      const Eigen::Index dim = d.rho.blocks[k].mat.dim();
      const SupportFrame& f = frames[k];
      const Eigen::Index rank = f.rank();
      const std::size_t w = p.add_block(rank + dim);
      const std::size_t s = p.add_block(dim);
      w_block[k] = w;
      w_offset[k] = rank;
      if (rank > 0) {
        p.add_matrix_equality(rank, {{w, 1.0, 0, {}, {}}}, HermitianMatrix(f.lam));
        overlap.terms.push_back({w, overlap_operator(f) * mult});
      }
      p.add_matrix_equality(dim, {{mu, 1.0, 0, HermitianMatrix::identity(dim), {}},
                                  {w, -1.0, rank, {}, whiten[k]}, {s, -1.0, 0, {}, {}}},
                            HermitianMatrix::zero(dim));
      CMatrix id = CMatrix::Zero(rank + dim, rank + dim);
      id.block(rank, rank, dim, dim) = CMatrix::Identity(dim, dim) * mult;
      unit_trace.terms.push_back({w, HermitianMatrix(id)});
    }
    const std::size_t slack = p.add_block(1);
    overlap.terms.push_back({slack, HermitianMatrix::identity(1) * -1.0});
    p.add_constraint(std::move(overlap));
  }
  p.add_constraint(std::move(unit_trace));

  SdpOptions opts;
  opts.tolerance = 1e-9;
  opts.max_total_dim = 4096;
  // Always feasible (r = rho), so skip infeasibility detection.
  opts.detect_infeasibility = false;
  const SdpSolution sol = solve(p, opts);

  BlockOperator raw = d.rho;
  for (std::size_t k = 0; k < nk; ++k) {
    const Eigen::Index dim = d.rho.blocks[k].mat.dim();
    raw.blocks[k].mat = HermitianMatrix(CMatrix(
        sol.primal[w_block[k]].matrix().block(w_offset[k], w_offset[k], dim, dim)));
  }
  BlockSmoothMax out;
  out.status = sol.status;
  out.sdp_bits = std::log2(std::max(sol.primal_value * mu_scale, 1e-300));
  out.witness = pull_into_ball(d.rho, clean_state(raw), e, metric, out.achieved_distance);
  out.value = DivergenceValue::finite(block_dmax_bits(out.witness, d.sigma));
  if (sol.status == SdpStatus::Optimal) return out;

  // Poorly conditioned sigma (large tensor powers) can stall the solver
  // short of full accuracy. The witness value is exact for a state in the
  // ball, so accept it whenever the dual bound certifies it to 1e-6 bits.
  const bool dual_ok = sol.dual_residual <= 1e-8 && sol.dual_value > 0.0;
  double lower = dual_ok ? std::max(0.0, std::log2(sol.dual_value * mu_scale)) : 0.0;
  if (dual_ok && out.value.bits - lower <= 1e-6) return out;
  if (metric == Metric::PurifiedDistance) {
    // Bisection on log2 mu with the better conditioned overlap program.
    // Upper ends come from verified witnesses, lower ends from dual bounds
    // on the overlap; undecided probes only narrow the search.
    const double target = std::sqrt(1.0 - e * e);
    double hi = out.value.bits, soft = hi;
    for (int it = 0; it < 60 && soft - lower > 1e-8; ++it) {
      const double mid = 0.5 * (lower + soft);
      const OverlapProbe probe = overlap_probe(d, frames, whiten, std::exp2(mid) / mu_scale, e);
      if (probe.bits < hi) {
        hi = probe.bits;
        out.witness = probe.witness;
      }
      if (probe.certified && probe.overlap_ub < target) {
        lower = mid;
      } else {
        // Feasible, or too close to call at the solver's resolution.
        soft = std::min(mid, hi);
      }
    }
    out.value = DivergenceValue::finite(hi);
    out.achieved_distance = block_distance(d.rho, out.witness, metric);
    // The overlap is resolved to about 1e-11 while the ball is eps^2 thin,
    // so very small eps only certify to 1e-5 bits.
    if (hi - lower <= 1e-5) return out;
  }
  throw NumericalError(std::string("smooth_dmax: SDP ended with status ") +
                       std::string(to_string(sol.status)) + " and an uncertified witness");
}

SmoothMaxResult smooth_dmax(const Dichotomy& d, double eps, Metric metric, bool force_sdp) {
  require_eps(eps, "smooth_dmax");
  if (d.is_classical() && !force_sdp) {
    const RVector pv = d.rho.hermitian().diagonal();
    const RVector qv = d.sigma.hermitian().diagonal();
    const double qmax = qv.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < qv.size(); ++i) {
      if (!(qv(i) > kSupportCutoff * qmax)) {
        throw ValidationError("smooth_dmax: sigma must have full support");
      }
    }
    std::vector<double> p(pv.data(), pv.data() + pv.size());
    std::vector<double> q(qv.data(), qv.data() + qv.size());
    // Diagonals of valid states can miss unit sum by ~1e-16; renormalize.
    double sp = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = std::max(0.0, p[i]);
      sp += p[i];
      sq += q[i];
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] /= sp;
      q[i] /= sq;
    }
    const ClassicalPair pq = ClassicalPair::from_vectors(p, q);
    const ClassicalSmoothing cs = metric == Metric::TraceDistance
                                      ? classical_dmax_trace(pq, eps)
                                      : classical_dmax_purified(pq, eps);
    RVector w(static_cast<Eigen::Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) w(static_cast<Eigen::Index>(i)) = std::exp2(cs.log2_witness[i]);
    w /= w.sum();
    const DensityMatrix witness = DensityMatrix::nearest(HermitianMatrix(w), 1e-8);
    return {cs.value, witness, metric, distance(d.rho, witness, metric)};
  }
  const BlockSmoothMax r = smooth_dmax(BlockDichotomy::from(d), eps, metric);
  return {r.value, dense_state(r.witness), metric, r.achieved_distance};
}

DhDmaxReport check_prop_dh_dmax(const Dichotomy& d, double eps, double nu) {
  require_eps(eps, "check_prop_dh_dmax");
  if (!(nu > 0.0 && nu < 1.0 - eps)) {
    throw ValidationError("check_prop_dh_dmax: nu must lie in (0, 1 - eps)");
  }
  DhDmaxReport r;
  r.dh_upper = hypothesis_testing(d, 1.0 - eps, false).value.value();
  r.dmax = smooth_dmax(d, std::sqrt(eps), Metric::PurifiedDistance).value.value();
  r.dh_lower = hypothesis_testing(d, 1.0 - eps - nu, false).value.value();
  const double middle = r.dmax - std::log2(1.0 / (1.0 - eps));
  r.slack_upper = r.dh_upper - middle;
  r.slack_lower = middle - (r.dh_lower - std::log2(4.0 / (nu * nu)));
  return r;
}

RenyiBoundReport check_prop_renyi_bounds(const Dichotomy& d, double eps, double alpha_lo,
                                         double alpha_hi) {
  require_eps(eps, "check_prop_renyi_bounds");
  if (!(alpha_lo >= 0.0 && alpha_lo < 1.0)) {
    throw ValidationError("check_prop_renyi_bounds: alpha_lo must lie in [0,1)");
  }
  if (!(alpha_hi > 1.0)) throw ValidationError("check_prop_renyi_bounds: alpha_hi must exceed 1");
  RenyiBoundReport r;
  r.dh = hypothesis_testing(d, eps, false).value.value();
  r.petz = (alpha_lo == 0.0 ? d_min(d) : petz_renyi(d, alpha_lo)).value();
  r.slack_dh = r.dh - (r.petz - alpha_lo / (1.0 - alpha_lo) * std::log2(1.0 / eps));
  const bool top = std::isinf(alpha_hi);
  r.sandwiched = (top ? d_max(d) : sandwiched_renyi(d, alpha_hi)).value();
  const double bound = r.sandwiched + (top ? 0.0 : std::log2(1.0 / (eps * eps)) / (alpha_hi - 1.0)) +
                       std::log2(1.0 / (1.0 - eps * eps));
  r.dmax_trace = smooth_dmax(d, eps, Metric::TraceDistance).value.value();
  r.dmax_purified = smooth_dmax(d, eps, Metric::PurifiedDistance).value.value();
  r.slack_trace = bound - r.dmax_trace;
  r.slack_purified = bound - r.dmax_purified;
  return r;
}

}  // namespace dichotomy
