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


// Reference implementations used only by the tests. Nothing here calls into
// the library: qubit quantities use closed-form 2x2 formulas and classical
// quantities use direct sums or brute-force enumeration.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using M2 = Eigen::Matrix2cd;
using cd = std::complex<double>;

inline double log2_safe(double x) { return std::log2(x); }

// Eigenvalues of a 2x2 Hermitian matrix, ascending, from the characteristic
// polynomial.
inline std::array<double, 2> eig2(const M2& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
  return {0.5 * (a + d) - r, 0.5 * (a + d) + r};
}

// f(m) by the Sylvester formula. Eigenvalues at or below `cut` are mapped
// to zero when `support_only` is set.
inline M2 fun2(const M2& m, const std::function<double(double)>& f, bool support_only = false,
               double cut = 1e-13) {
  const auto [l1, l2] = eig2(m);
  auto g = [&](double x) { return (support_only && x <= cut) ? 0.0 : f(x); };
  const M2 id = M2::Identity();
  if (std::abs(l2 - l1) < 1e-14) return g(l1) * id;
  return g(l1) * (m - l2 * id) / (l1 - l2) + g(l2) * (m - l1 * id) / (l2 - l1);
}

inline double tr(const M2& m) { return m.trace().real(); }

inline double relent2(const M2& rho, const M2& sigma) {
  const M2 a = fun2(rho, [](double x) { return x * std::log2(x); }, true);
  const M2 b = fun2(sigma, [](double x) { return std::log2(x); });
  return tr(a) - tr(rho * b);
}

inline double fidelity2(const M2& rho, const M2& sigma) {
  // Determinants at rounding level come from rank-one inputs; treat them as 0.
  auto det = [](const M2& m) {
    const double v = m.determinant().real();
    return v < 1e-14 ? 0.0 : v;
  };
  const double det_r = det(rho), det_s = det(sigma);
  return tr(rho * sigma) + 2.0 * std::sqrt(det_r * det_s);
}

inline double trace_distance2(const M2& a, const M2& b) {
  const auto [l1, l2] = eig2(a - b);
  return 0.5 * (std::abs(l1) + std::abs(l2));
}

inline double petz2(const M2& rho, const M2& sigma, double alpha) {
  const M2 ra = fun2(rho, [&](double x) { return std::pow(x, alpha); }, true);
  const M2 sb = fun2(sigma, [&](double x) { return std::pow(x, 1.0 - alpha); }, true);
  return std::log2(tr(ra * sb)) / (alpha - 1.0);
}

inline double sandwiched2(const M2& rho, const M2& sigma, double alpha) {
  const double e = (1.0 - alpha) / (2.0 * alpha);
  const M2 s = fun2(sigma, [&](double x) { return std::pow(x, e); }, true);
  M2 inner = s * rho * s;
  inner = 0.5 * (inner + inner.adjoint().eval());
  const auto [l1, l2] = eig2(inner);
  double q = 0.0;
  for (double l : {l1, l2})
    if (l > 0) q += std::pow(l, alpha);
  return std::log2(q) / (alpha - 1.0);
}

// log2 of the smallest lambda with rho <= lambda sigma (sigma full rank).
inline double dmax2(const M2& rho, const M2& sigma) {
  const M2 s = fun2(sigma, [](double x) { return 1.0 / std::sqrt(x); });
  M2 w = s * rho * s;
  w = 0.5 * (w + w.adjoint().eval());
  return std::log2(eig2(w)[1]);
}

inline M2 qubit(double x, double y, double z) {
  M2 m;
  m << cd(1 + z, 0), cd(x, -y), cd(x, y), cd(1 - z, 0);
  return 0.5 * m;
}

// ---- classical ----

inline double relent(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0) s += p[i] * std::log2(p[i] / q[i]);
  return s;
}

inline double renyi(const std::vector<double>& p, const std::vector<double>& q, double alpha) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0) s += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
  return std::log2(s) / (alpha - 1.0);
}

inline double variance(const std::vector<double>& p, const std::vector<double>& q) {
  const double mean = relent(p, q);
  double v = 0.0;
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0) {
      const double t = std::log2(p[i] / q[i]) - mean;
      v += p[i] * t * t;
    }
  return v;
}

inline double dmax(const std::vector<double>& p, const std::vector<double>& q) {
  double r = 0.0;
  for (size_t i = 0; i < p.size(); ++i) r = std::max(r, p[i] / q[i]);
  return std::log2(r);
}

// Vertices of {0 <= t <= 1, sum p t >= 1 - eps}: every deterministic test
// plus at most one fractional coordinate. Returns -log2 of the smallest
// type-II error.
inline double dh_bruteforce(const std::vector<double>& p, const std::vector<double>& q,
                            double eps) {
  const size_t d = p.size();
  const double target = 1.0 - eps;
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    double pa = 0.0, qa = 0.0;
    for (size_t i = 0; i < d; ++i)
      if (mask & (1u << i)) {
        pa += p[i];
        qa += q[i];
      }
    if (pa >= target - 1e-15) best = std::min(best, qa);
    for (size_t j = 0; j < d; ++j) {
      if ((mask & (1u << j)) || p[j] <= 0) continue;
      const double t = (target - pa) / p[j];
      if (t > 0 && t <= 1) best = std::min(best, qa + t * q[j]);
    }
  }
  return -std::log2(best);
}

// Smallest log2 max ratio over distributions within trace distance eps of
// a binary p, by a fine grid on the first coordinate.
inline double dmax_trace_binary_grid(double p0, const std::vector<double>& q, double eps,
                                     int steps = 200000) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= steps; ++k) {
    const double a = std::clamp(p0 - eps + 2.0 * eps * k / steps, 0.0, 1.0);
    best = std::min(best, std::max(a / q[0], (1.0 - a) / q[1]));
  }
  return std::log2(best);
}

// Least-squares slope, intercept and r^2.
struct Line {
  double slope, intercept, r2;
};

inline Line fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx, syy > 0 ? sxy * sxy / (sxx * syy) : 1.0};
}

}  // namespace oracle
