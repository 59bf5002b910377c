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

#include "dichotomy/channels.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "dichotomy/error.hpp"

namespace dichotomy {
namespace {

constexpr double kExactSlack = 1e-10;
constexpr double kApproxSlack = 1e-8;
constexpr double kBorderline = 1e-8;
constexpr double kDenominatorGuard = 1e-12;

double dmax_binary(double p, double q) {
  double r = 0.0;
  if (p > 0.0) r = std::max(r, q > 0.0 ? p / q : std::numeric_limits<double>::infinity());
  if (p < 1.0) {
    r = std::max(r, q < 1.0 ? (1.0 - p) / (1.0 - q) : std::numeric_limits<double>::infinity());
  }
  return std::log2(r);
}

HermitianMatrix projector(Eigen::Index dim, Eigen::Index index) {
  RVector v = RVector::Zero(dim);
  v(index) = 1.0;
  return HermitianMatrix(v);
}

// Clip a computed output state; anything beyond roundoff is a bug upstream.
DensityMatrix prepared_state(const HermitianMatrix& m, const char* what) {
  try {
    return DensityMatrix::nearest(m, 1e-7);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(what) + ": " + e.what());
  }
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(9);
  s << v;
  return s.str();
}

}  // namespace

TestAndPrepareChannel::TestAndPrepareChannel(Effect e, DensityMatrix accept, DensityMatrix reject)
    : effect(std::move(e)), prep_accept(std::move(accept)), prep_reject(std::move(reject)) {
  if (prep_accept.dim() != prep_reject.dim()) {
    throw ValidationError("test-and-prepare channel: prepared states differ in dimension");
  }
}

GeneralChannel::GeneralChannel(std::vector<CMatrix> ops) : kraus(std::move(ops)) {
  if (kraus.empty()) throw ValidationError("channel needs at least one Kraus operator");
  const Eigen::Index din = kraus.front().cols();
  const Eigen::Index dout = kraus.front().rows();
  CMatrix sum = CMatrix::Zero(din, din);
  for (const CMatrix& k : kraus) {
    if (k.cols() != din || k.rows() != dout) {
      throw ValidationError("Kraus operators have inconsistent shapes");
    }
    sum += k.adjoint() * k;
  }
  const double err = (sum - CMatrix::Identity(din, din)).cwiseAbs().maxCoeff();
  if (err > 1e-9) {
    throw ValidationError("Kraus operators are not trace preserving (deviation " + fmt(err) + ")");
  }
}

Eigen::Index dim_in(const Channel& ch) {
  return std::visit([](const auto& c) { return c.dim_in(); }, ch);
}

Eigen::Index dim_out(const Channel& ch) {
  return std::visit([](const auto& c) { return c.dim_out(); }, ch);
}

CMatrix apply_linear(const Channel& ch, const CMatrix& x) {
  if (x.rows() != dim_in(ch) || x.cols() != dim_in(ch)) {
    throw ValidationError("channel input dimension mismatch: expected " +
                          std::to_string(dim_in(ch)) + ", got " + std::to_string(x.rows()));
  }
  if (const auto* tp = std::get_if<TestAndPrepareChannel>(&ch)) {
    const Complex accept = (x * tp->effect.hermitian().matrix()).trace();
    const Complex total = x.trace();
    return accept * tp->prep_accept.matrix() + (total - accept) * tp->prep_reject.matrix();
  }
  const auto& g = std::get<GeneralChannel>(ch);
  CMatrix out = CMatrix::Zero(g.dim_out(), g.dim_out());
  for (const CMatrix& k : g.kraus) out += k * x * k.adjoint();
  return out;
}

DensityMatrix apply(const Channel& ch, const DensityMatrix& x) {
  return DensityMatrix::nearest(HermitianMatrix(apply_linear(ch, x.matrix())), 1e-9);
}

GeneralChannel identity_channel(Eigen::Index dim) {
  return GeneralChannel({CMatrix::Identity(dim, dim)});
}

GeneralChannel dephasing_channel(Eigen::Index dim) {
  std::vector<CMatrix> ops;
  for (Eigen::Index i = 0; i < dim; ++i) ops.push_back(projector(dim, i).matrix());
  return GeneralChannel(std::move(ops));
}

GeneralChannel random_channel(Eigen::Index d_in, Eigen::Index d_out, Eigen::Index env_dim,
                              std::uint64_t seed) {
  if (d_in < 1 || d_out < 1 || env_dim < 1) throw ValidationError("random_channel: dims must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<CMatrix> g;
  CMatrix s = CMatrix::Zero(d_in, d_in);
  for (Eigen::Index e = 0; e < env_dim; ++e) {
    CMatrix k(d_out, d_in);
    for (Eigen::Index j = 0; j < d_in; ++j) {
      for (Eigen::Index i = 0; i < d_out; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        k(i, j) = Complex(re, im);
      }
    }
    s += k.adjoint() * k;
    g.push_back(std::move(k));
  }
  const HermitianMatrix s_inv_sqrt =
      matrix_function(HermitianMatrix(s), [](double x) { return 1.0 / std::sqrt(x); }, false);
  for (CMatrix& k : g) k = k * s_inv_sqrt.matrix();
  return GeneralChannel(std::move(g));
}

SynthesisResult synthesize_exact_qubit(const BinaryDistribution& pd, const BinaryDistribution& qd,
                                       const Dichotomy& dst) {
  double p = pd.p();
  double q = qd.p();
  const DivergenceValue fwd = d_max(dst);
  const DivergenceValue bwd = d_max(dst.swapped());
  const double src_fwd = dmax_binary(p, q);
  const double src_bwd = dmax_binary(q, p);
  const double slack_fwd = src_fwd - fwd.value();
  const double slack_bwd = src_bwd - bwd.value();
  const bool ok_fwd = std::isinf(src_fwd) || (!fwd.infinite && slack_fwd >= -kExactSlack);
  const bool ok_bwd = std::isinf(src_bwd) || (!bwd.infinite && slack_bwd >= -kExactSlack);
  if (!ok_fwd || !ok_bwd) {
    std::ostringstream msg;
    msg << "exact binary synthesis refused:";
    if (!ok_fwd) msg << " D_max(p||q) = " << fmt(src_fwd) << " < D_max(rho2||sigma2) = " << fwd.str() << ";";
    if (!ok_bwd) msg << " D_max(q||p) = " << fmt(src_bwd) << " < D_max(sigma2||rho2) = " << bwd.str() << ";";
    throw PreconditionError(msg.str());
  }
  SynthesisResult out{TestAndPrepareChannel(Effect(projector(2, 0)), dst.sigma, dst.sigma), false, ""};
  out.borderline = (std::isfinite(slack_fwd) && std::abs(slack_fwd) < kBorderline) ||
                   (std::isfinite(slack_bwd) && std::abs(slack_bwd) < kBorderline);

  // Without loss of generality p >= q: otherwise relabel the outcomes,
  // i.e. precompose with the bit flip, which moves the effect to |1><1|.
  Eigen::Index accept_index = 0;
  if (p < q) {
    p = 1.0 - p;
    q = 1.0 - q;
    accept_index = 1;
  }
  const Effect effect(projector(2, accept_index));
  const HermitianMatrix& rho2 = dst.rho.hermitian();
  const HermitianMatrix& sigma2 = dst.sigma.hermitian();
  if (p - q <= kDenominatorGuard) {
    // rho1 = sigma1; the condition forced rho2 = sigma2.
    out.channel = TestAndPrepareChannel(effect, dst.sigma, dst.sigma);
    out.route = "constant";
    return out;
  }
  if (q <= kDenominatorGuard) {
    // sigma1 is deterministic: its outcome prepares sigma2 and the other
    // outcome carries the rest of rho2.
    const double m = 1.0 - p;
    const DensityMatrix g0 = prepared_state((rho2 - sigma2 * m) * (1.0 / (1.0 - m)), "accept state");
    out.channel = TestAndPrepareChannel(effect, g0, dst.sigma);
    out.route = "binary-disjoint";
    return out;
  }
  const double big = p / q;
  const double small = (1.0 - p) / (1.0 - q);
  const DensityMatrix g0 =
      prepared_state((rho2 - sigma2 * small) * (1.0 / (1.0 - small)), "accept state");
  const DensityMatrix g1 =
      prepared_state((sigma2 * big - rho2) * (1.0 / (big - 1.0)), "reject state");
  out.channel = TestAndPrepareChannel(effect, g0, g1);
  out.route = "binary";
  return out;
}

SynthesisResult synthesize_exact(const Dichotomy& src, const Dichotomy& dst) {
  if (trace_distance(dst.rho, dst.sigma) <= 1e-12) {
    return {TestAndPrepareChannel(Effect(HermitianMatrix::identity(src.dim())), dst.sigma, dst.sigma),
            false, "constant"};
  }
  const DivergenceValue dmin_fwd = d_min(src);
  const DivergenceValue dmax_fwd = d_max(dst);
  const DivergenceValue dmin_bwd = d_min(src.swapped());
  const DivergenceValue dmax_bwd = d_max(dst.swapped());
  auto holds = [](const DivergenceValue& lhs, const DivergenceValue& rhs) {
    if (lhs.infinite) return true;
    return !rhs.infinite && lhs.bits - rhs.bits >= -kExactSlack;
  };
  // Measure {P, 1 - P} with P the support projector of the first state of
  // `lead`, then apply the binary construction to the outcome pair.
  auto build = [&](const Dichotomy& lead, bool swapped) {
    const HermitianMatrix proj = support_projector(lead.rho.hermitian());
    const double other = std::clamp(trace_product(proj, lead.sigma.hermitian()), 0.0, 1.0);
    const BinaryDistribution p(swapped ? other : 1.0);
    const BinaryDistribution q(swapped ? 1.0 : other);
    SynthesisResult r = synthesize_exact_qubit(p, q, dst);
    // Outcome 0 of the measurement is "inside the support".
    const HermitianMatrix& e2 = r.channel.effect.hermitian();
    const double w0 = e2(0, 0).real();
    const double w1 = e2(1, 1).real();
    const HermitianMatrix effect =
        proj * w0 + (HermitianMatrix::identity(src.dim()) - proj) * w1;
    r.channel = TestAndPrepareChannel(Effect(effect), r.channel.prep_accept, r.channel.prep_reject);
    r.route = std::string(swapped ? "support-of-sigma+" : "support-of-rho+") + r.route;
    return r;
  };
  if (holds(dmin_fwd, dmax_fwd)) return build(src, false);
  if (holds(dmin_bwd, dmax_bwd)) return build(src.swapped(), true);
  std::ostringstream msg;
  msg << "exact synthesis refused: D_min(rho1||sigma1) = " << dmin_fwd.str()
      << " < D_max(rho2||sigma2) = " << dmax_fwd.str() << " (slack "
      << fmt(dmin_fwd.value() - dmax_fwd.value()) << ") and D_min(sigma1||rho1) = "
      << dmin_bwd.str() << " < D_max(sigma2||rho2) = " << dmax_bwd.str() << " (slack "
      << fmt(dmin_bwd.value() - dmax_bwd.value()) << ")";
  throw PreconditionError(msg.str());
}

ApproxSynthesis synthesize_approx(const Dichotomy& src, const Dichotomy& dst, double eps1,
                                  double eps2, Metric metric) {
  const HypothesisTestResult test = hypothesis_testing(src, eps1, false);
  const SmoothMaxResult smooth = smooth_dmax(dst, eps2, metric);
  const double dh = test.value.value();
  const double dmax = smooth.value.value();
  if (!(dh - dmax >= -kApproxSlack)) {
    std::ostringstream msg;
    msg << "approximate synthesis refused: D_h^" << fmt(eps1) << "(rho1||sigma1) = " << fmt(dh)
        << " < D_max^" << fmt(eps2) << "(rho2||sigma2) = " << fmt(dmax) << " [" << to_string(metric)
        << "]";
    throw PreconditionError(msg.str());
  }
  ApproxSynthesis out{
      {TestAndPrepareChannel(test.optimizer, smooth.smoothed_state, dst.sigma), false, "test-and-prepare"},
      dh, dmax, test.type2, 0.0};
  out.result.borderline = std::isfinite(dh) && std::abs(dh - dmax) < kBorderline;
  out.certified_bound = metric == Metric::TraceDistance ? eps1 + eps2 : std::sqrt(eps1) + eps2;
  const double t = test.type2;
  if (1.0 - t <= kDenominatorGuard) {
    // The test accepts sigma1 almost surely, so the reject branch is never
    // reached on sigma1; prepare sigma2 there.
    out.result.route = "test-and-prepare-fallback";
    return out;
  }
  const HermitianMatrix reject =
      (dst.sigma.hermitian() - smooth.smoothed_state.hermitian() * t) * (1.0 / (1.0 - t));
  out.result.channel =
      TestAndPrepareChannel(test.optimizer, smooth.smoothed_state, prepared_state(reject, "reject state"));
  return out;
}

VerificationReport verify_transformation(const Channel& ch, const Dichotomy& src,
                                         const Dichotomy& dst, Metric metric) {
  if (dim_in(ch) != src.dim() || dim_out(ch) != dst.dim()) {
    throw ValidationError("verify_transformation: channel dimensions do not match the dichotomies");
  }
  return {distance(apply(ch, src.sigma), dst.sigma, metric),
          distance(apply(ch, src.rho), dst.rho, metric)};
}

}  // namespace dichotomy
