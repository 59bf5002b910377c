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

#include "dichotomy/classical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "dichotomy/error.hpp"

namespace dichotomy {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();

double log2_ratio(const TypeClass& c) {
  if (c.log2_q == kNegInf) return c.log2_p == kNegInf ? kNegInf : kInf;
  return c.log2_p - c.log2_q;
}

// log2(2^a - 2^b) for a >= b.
double log2_sub(double a, double b) {
  if (b == kNegInf) return a;
  if (b >= a) return kNegInf;
  return a + std::log2(-std::expm1((b - a) * std::log(2.0)));
}

void validate_distribution(std::span<const double> v, const char* name) {
  if (v.empty()) throw ValidationError(std::string(name) + ": empty probability vector");
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0) || !std::isfinite(v[i])) {
      throw ValidationError(std::string(name) + "[" + std::to_string(i) +
                            "] is negative or not finite");
    }
    s += v[i];
  }
  if (std::abs(s - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << name << " sums to " << s << ", expected 1";
    throw ValidationError(msg.str());
  }
}

// Classes sorted by decreasing likelihood ratio, with prefix sums.
struct Curve {
  std::vector<TypeClass> c;       // sorted, zero-zero classes dropped
  std::vector<double> cum_q;      // size K+1, log2 prefix sums
  std::vector<double> cum_p;
  std::vector<double> rem_p;      // log2 suffix sums of p from index v
};

std::vector<std::size_t> order_by_ratio(const std::vector<TypeClass>& cls, bool descending) {
  std::vector<std::size_t> idx(cls.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double ra = log2_ratio(cls[a]);
    const double rb = log2_ratio(cls[b]);
    return descending ? ra > rb : ra < rb;
  });
  return idx;
}

Curve make_curve(const ClassicalPair& pq) {
  Curve cv;
  for (std::size_t i : order_by_ratio(pq.classes(), true)) {
    const TypeClass& t = pq.classes()[i];
    if (t.log2_p == kNegInf && t.log2_q == kNegInf) continue;
    cv.c.push_back(t);
  }
  const std::size_t k = cv.c.size();
  cv.cum_q.assign(k + 1, kNegInf);
  cv.cum_p.assign(k + 1, kNegInf);
  cv.rem_p.assign(k + 1, kNegInf);
  for (std::size_t v = 0; v < k; ++v) {
    cv.cum_q[v + 1] = log2_add(cv.cum_q[v], cv.c[v].log2_q);
    cv.cum_p[v + 1] = log2_add(cv.cum_p[v], cv.c[v].log2_p);
  }
  for (std::size_t v = k; v-- > 0;) cv.rem_p[v] = log2_add(cv.rem_p[v + 1], cv.c[v].log2_p);
  return cv;
}

// Segment index v such that cum_q[v] <= t < cum_q[v+1]; K when t covers all.
std::size_t segment(const Curve& cv, double lt) {
  const std::size_t k = cv.c.size();
  if (lt >= cv.cum_q[k]) return k;
  auto it = std::upper_bound(cv.cum_q.begin(), cv.cum_q.end(), lt);
  return static_cast<std::size_t>(it - cv.cum_q.begin()) - 1;
}

// log2 L(t).
double log2_lorenz(const Curve& cv, double lt) {
  const std::size_t v = segment(cv, lt);
  if (v == cv.c.size()) return cv.cum_p[v];
  if (lt == kNegInf) return cv.cum_p[v];
  const double extra = log2_sub(lt, cv.cum_q[v]) + log2_ratio(cv.c[v]);
  return log2_add(cv.cum_p[v], extra);
}

// log2(1 - L(t)).
double log2_lorenz_complement(const Curve& cv, double lt) {
  const std::size_t v = segment(cv, lt);
  if (v == cv.c.size()) return kNegInf;
  // 1 - L(t) = rem_p[v+1] + p_v (cum_q[v+1] - t) / q_v
  const double part = log2_sub(cv.cum_q[v + 1], lt) + log2_ratio(cv.c[v]);
  return log2_add(cv.rem_p[v + 1], part);
}

}  // namespace

double log2_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log2(1.0 + std::exp2(lo - hi));
}

ClassicalPair ClassicalPair::from_vectors(std::span<const double> p, std::span<const double> q) {
  validate_distribution(p, "p");
  validate_distribution(q, "q");
  if (p.size() != q.size()) throw ValidationError("p and q have different lengths");
  ClassicalPair out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.classes_.push_back({p[i] > 0 ? std::log2(p[i]) : kNegInf,
                            q[i] > 0 ? std::log2(q[i]) : kNegInf});
  }
  return out;
}

ClassicalPair ClassicalPair::tensor_power(std::span<const double> p, std::span<const double> q,
                                          int n) {
  const ClassicalPair base = from_vectors(p, q);
  if (n < 1) throw ValidationError("tensor_power: n must be positive");
  const int k = static_cast<int>(p.size());
  // Number of types is C(n+k-1, k-1).
  const double count = std::exp(std::lgamma(n + k) - std::lgamma(k) - std::lgamma(n + 1.0));
  if (count > 5e6) throw ValidationError("tensor_power: too many types for this alphabet and n");
  ClassicalPair out;
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  const double log2_nfact = std::lgamma(n + 1.0) / std::log(2.0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == k - 1) {
      counts[static_cast<std::size_t>(pos)] = left;
      double lm = log2_nfact, lp = 0.0, lq = 0.0;
      for (int i = 0; i < k; ++i) {
        const int c = counts[static_cast<std::size_t>(i)];
        lm -= std::lgamma(c + 1.0) / std::log(2.0);
        if (c > 0) {
          const TypeClass& b = base.classes_[static_cast<std::size_t>(i)];
          lp += b.log2_p == kNegInf ? kNegInf : c * b.log2_p;
          lq += b.log2_q == kNegInf ? kNegInf : c * b.log2_q;
        }
      }
      out.classes_.push_back({lp == kNegInf ? kNegInf : lm + lp, lq == kNegInf ? kNegInf : lm + lq});
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[static_cast<std::size_t>(pos)] = c;
      rec(pos + 1, left - c);
    }
  };
  rec(0, n);
  return out;
}

DivergenceValue classical_dh(const ClassicalPair& pq, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("eps must lie in (0,1)");
  const auto& cls = pq.classes();
  // Neyman-Pearson: reject the lowest likelihood ratios first until the
  // rejected p-mass reaches eps.
  const std::vector<std::size_t> idx = order_by_ratio(cls, false);
  const double log2_eps = std::log2(eps);
  double rejected = kNegInf;
  std::size_t j = 0;
  for (; j < idx.size(); ++j) {
    const double next = log2_add(rejected, cls[idx[j]].log2_p);
    if (next > log2_eps) break;
    rejected = next;
  }
  double accepted_q = kNegInf;
  if (j < idx.size()) {
    const TypeClass& t = cls[idx[j]];
    // fraction of class j that is still accepted: 1 - (eps - rejected)/p_j
    const double log2_keep = log2_sub(t.log2_p, log2_sub(log2_eps, rejected)) - t.log2_p;
    accepted_q = t.log2_q + log2_keep;
    for (std::size_t i = j + 1; i < idx.size(); ++i) accepted_q = log2_add(accepted_q, cls[idx[i]].log2_q);
  }
  if (accepted_q == kNegInf) return DivergenceValue::inf();
  return DivergenceValue::finite(std::max(0.0, -accepted_q));
}

ClassicalSmoothing classical_dmax_trace(const ClassicalPair& pq, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("eps must lie in (0,1)");
  const auto& cls = pq.classes();
  const std::vector<std::size_t> idx = order_by_ratio(cls, true);
  const double log2_eps = std::log2(eps);
  // Find lambda with sum_i (p_i - lambda q_i)_+ = eps.
  double sp = kNegInf, sq = kNegInf, log2_lambda = kNegInf;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    const TypeClass& t = cls[idx[j]];
    sp = log2_add(sp, t.log2_p);
    sq = log2_add(sq, t.log2_q);
    if (sp <= log2_eps) continue;
    if (sq == kNegInf) return {DivergenceValue::inf(), {}};
    const double cand = log2_sub(sp, log2_eps) - sq;
    const double next = j + 1 < idx.size() ? log2_ratio(cls[idx[j + 1]]) : kNegInf;
    if (cand >= next) {
      log2_lambda = cand;
      break;
    }
  }
  if (std::isinf(log2_lambda) && log2_lambda > 0) return {DivergenceValue::inf(), {}};
  ClassicalSmoothing out;
  std::vector<double> w(cls.size(), kNegInf);
  if (!(log2_lambda > 0.0)) {
    // Within eps of q already: q itself is a witness with D_max = 0.
    for (std::size_t i = 0; i < cls.size(); ++i) w[i] = cls[i].log2_q;
    out.value = DivergenceValue::finite(0.0);
    out.log2_witness = std::move(w);
    return out;
  }
  // Cap high ratios at lambda q, then pour the shaved mass into the rest
  // proportionally to their spare capacity lambda q - p.
  double spare = kNegInf;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const double cap = cls[i].log2_q + log2_lambda;
    if (log2_ratio(cls[i]) >= log2_lambda) {
      w[i] = cap;
    } else {
      w[i] = cls[i].log2_p;
      spare = log2_add(spare, log2_sub(cap, cls[i].log2_p));
    }
  }
  if (spare > kNegInf) {
    for (std::size_t i = 0; i < cls.size(); ++i) {
      if (log2_ratio(cls[i]) >= log2_lambda) continue;
      const double room = log2_sub(cls[i].log2_q + log2_lambda, cls[i].log2_p);
      w[i] = log2_add(w[i], log2_eps + room - spare);
    }
  }
  out.value = DivergenceValue::finite(log2_lambda);
  out.log2_witness = std::move(w);
  return out;
}

ClassicalSmoothing classical_dmax_purified(const ClassicalPair& pq, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("eps must lie in (0,1)");
  const auto& cls = pq.classes();
  const std::vector<std::size_t> idx = order_by_ratio(cls, true);
  const std::size_t k = idx.size();
  std::vector<double> cum_q(k + 1, kNegInf), rem_p(k + 1, kNegInf);
  for (std::size_t v = 0; v < k; ++v) cum_q[v + 1] = log2_add(cum_q[v], cls[idx[v]].log2_q);
  for (std::size_t v = k; v-- > 0;) rem_p[v] = log2_add(rem_p[v + 1], cls[idx[v]].log2_p);
  const double target = 0.5 * std::log2(1.0 - eps * eps);  // log2 sqrt(1 - eps^2)

  // For a given lambda >= 1 the best witness is r_i = min(lambda q_i, c p_i)
  // with c fixed by normalization; returns log2 of sum_i sqrt(p_i r_i).
  struct Fill {
    double log2_root;
    double log2_c;
    std::size_t capped;
  };
  auto fill = [&](double l2lam) -> Fill {
    for (std::size_t j = 0; j <= k; ++j) {
      const double used = cum_q[j] + l2lam;
      if (used > 0.0) break;
      if (rem_p[j] == kNegInf) {
        if (j < k) continue;
        break;
      }
      const double l2c = log2_sub(0.0, used) - rem_p[j];
      const double thresh = l2lam - l2c;  // classes with ratio >= thresh are capped
      const bool prev_ok = j == 0 || log2_ratio(cls[idx[j - 1]]) >= thresh;
      const bool next_ok = j == k || log2_ratio(cls[idx[j]]) <= thresh;
      if (prev_ok && next_ok) {
        double root = 0.5 * l2c + rem_p[j];
        for (std::size_t i = 0; i < j; ++i) {
          const TypeClass& t = cls[idx[i]];
          root = log2_add(root, 0.5 * (l2lam + t.log2_p + t.log2_q));
        }
        return {root, l2c, j};
      }
    }
    return {kNegInf, kNegInf, 0};
  };

  double lo = 0.0;
  if (fill(lo).log2_root >= target) {
    ClassicalSmoothing out{DivergenceValue::finite(0.0), {}};
    for (const TypeClass& t : cls) out.log2_witness.push_back(t.log2_q);
    return out;
  }
  double hi = 1.0;
  while (fill(hi).log2_root < target) {
    hi *= 2.0;
    if (hi > 1e7) return {DivergenceValue::inf(), {}};
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (fill(mid).log2_root >= target ? hi : lo) = mid;
  }
  const Fill f = fill(hi);
  ClassicalSmoothing out{DivergenceValue::finite(hi), std::vector<double>(cls.size(), kNegInf)};
  for (std::size_t v = 0; v < k; ++v) {
    const TypeClass& t = cls[idx[v]];
    out.log2_witness[idx[v]] = v < f.capped ? t.log2_q + hi : t.log2_p + f.log2_c;
  }
  return out;
}

double classical_oneshot(std::span<const double> p, std::span<const double> q, double eps,
                         ClassicalQuantity which) {
  const ClassicalPair pq = ClassicalPair::from_vectors(p, q);
  switch (which) {
    case ClassicalQuantity::Dh:
      return classical_dh(pq, eps).value();
    case ClassicalQuantity::DmaxT:
    case ClassicalQuantity::DmaxP:
      for (double x : q) {
        if (!(x > 0.0)) throw ValidationError("smooth D_max fast path needs q > 0");
      }
      return (which == ClassicalQuantity::DmaxT ? classical_dmax_trace(pq, eps)
                                                : classical_dmax_purified(pq, eps))
          .value.value();
  }
  return 0.0;
}

double lorenz_converse_log2_complement(const ClassicalPair& source, const ClassicalPair& target) {
  const Curve c1 = make_curve(source);
  const Curve c2 = make_curve(target);
  double best = 0.0;
  auto eval = [&](double lt) {
    const double v = log2_add(log2_lorenz_complement(c2, lt), log2_lorenz(c1, lt));
    best = std::min(best, v);
  };
  for (double lt : c1.cum_q) eval(lt);
  for (double lt : c2.cum_q) eval(lt);
  return best;
}

}  // namespace dichotomy
