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

#include "dichotomy/symmetric.hpp"

#include <algorithm>
#include <cmath>

#include "dichotomy/error.hpp"
#include "dichotomy/states.hpp"

namespace dichotomy {
namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                             std::lgamma(n - k + 1.0)));
}

void require_layout(const BlockOperator& a, const BlockOperator& b) {
  if (!a.same_layout(b)) throw ValidationError("block operators have different layouts");
}

}  // namespace

BlockOperator BlockOperator::single(const HermitianMatrix& m) {
  return BlockOperator{{Block{m, 1.0}}};
}

double BlockOperator::trace() const {
  double t = 0.0;
  for (const Block& b : blocks) t += b.multiplicity * b.mat.trace();
  return t;
}

Eigen::Index BlockOperator::total_dim() const {
  double d = 0.0;
  for (const Block& b : blocks) d += b.multiplicity * static_cast<double>(b.mat.dim());
  return static_cast<Eigen::Index>(std::llround(d));
}

bool BlockOperator::same_layout(const BlockOperator& o) const {
  if (blocks.size() != o.blocks.size()) return false;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].mat.dim() != o.blocks[i].mat.dim() ||
        blocks[i].multiplicity != o.blocks[i].multiplicity) {
      return false;
    }
  }
  return true;
}

BlockOperator BlockOperator::operator-(const BlockOperator& o) const {
  require_layout(*this, o);
  BlockOperator r = *this;
  for (std::size_t i = 0; i < blocks.size(); ++i) r.blocks[i].mat = blocks[i].mat - o.blocks[i].mat;
  return r;
}

BlockOperator BlockOperator::operator*(double s) const {
  BlockOperator r = *this;
  for (Block& b : r.blocks) b.mat = b.mat * s;
  return r;
}

std::vector<double> BlockOperator::spectrum() const {
  std::vector<double> out;
  for (const Block& b : blocks) {
    const RVector ev = eigh(b.mat).eigenvalues;
    const auto reps = static_cast<long>(std::llround(b.multiplicity));
    for (long r = 0; r < reps; ++r) {
      for (Eigen::Index i = 0; i < ev.size(); ++i) out.push_back(ev(i));
    }
  }
  return out;
}

CMatrix symmetric_power(const CMatrix& a, int k) {
  if (a.rows() != 2 || a.cols() != 2) throw ValidationError("symmetric_power needs a 2x2 matrix");
  if (k < 0) throw ValidationError("symmetric_power: negative degree");
  // Dicke state |D_i> is the normalized sum of bit strings with i ones.
  // <D_i|A^(x)k|D_j> = sqrt(C(k,j)/C(k,i)) *
  //   sum_a C(j,a) C(k-j,i-a) A11^a A01^(j-a) A10^(i-a) A00^(k-i-j+a)
  const Complex a00 = a(0, 0), a01 = a(0, 1), a10 = a(1, 0), a11 = a(1, 1);
  auto ipow = [](Complex z, int e) {
    Complex r(1.0, 0.0);
    for (int t = 0; t < e; ++t) r *= z;
    return r;
  };
  CMatrix s(k + 1, k + 1);
  for (int i = 0; i <= k; ++i) {
    for (int j = 0; j <= k; ++j) {
      Complex sum(0.0, 0.0);
      for (int t = 0; t <= std::min(i, j); ++t) {
        const int e00 = k - i - j + t;
        if (e00 < 0) continue;
        sum += binomial(j, t) * binomial(k - j, i - t) * ipow(a11, t) *
               ipow(a01, j - t) * ipow(a10, i - t) * ipow(a00, e00);
      }
      s(i, j) = std::sqrt(binomial(k, j) / binomial(k, i)) * sum;
    }
  }
  return s;
}

BlockOperator qubit_tensor_power(const HermitianMatrix& a, int n) {
  if (a.dim() != 2) throw ValidationError("qubit_tensor_power needs a 2x2 matrix");
  if (n < 1) throw ValidationError("qubit_tensor_power: n must be positive");
  const Complex det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  BlockOperator out;
  for (int j = 0; 2 * j <= n; ++j) {
    Complex scale(1.0, 0.0);
    for (int t = 0; t < j; ++t) scale *= det;
    CMatrix blk = symmetric_power(a.matrix(), n - 2 * j) * scale;
    out.blocks.push_back(Block{HermitianMatrix(blk), binomial(n, j) - binomial(n, j - 1)});
  }
  return out;
}

double trace_norm(const BlockOperator& a) {
  double t = 0.0;
  for (const Block& b : a.blocks) t += b.multiplicity * trace_norm(b.mat);
  return t;
}

double positive_part_trace(const BlockOperator& a) {
  double t = 0.0;
  for (const Block& b : a.blocks) t += b.multiplicity * positive_part_trace(b.mat);
  return t;
}

double trace_distance(const BlockOperator& a, const BlockOperator& b) {
  return 0.5 * trace_norm(a - b);
}

double fidelity(const BlockOperator& a, const BlockOperator& b) {
  require_layout(a, b);
  double root = 0.0;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    root += a.blocks[i].multiplicity *
            std::sqrt(std::max(0.0, fidelity(a.blocks[i].mat, b.blocks[i].mat)));
  }
  return root * root;
}

double purified_distance(const BlockOperator& a, const BlockOperator& b) {
  require_layout(a, b);
  double b2 = 0.0;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    b2 += a.blocks[i].multiplicity * bures_squared(a.blocks[i].mat, b.blocks[i].mat);
  }
  b2 = std::min(b2, 2.0);
  return std::clamp(std::sqrt(std::max(0.0, b2 - 0.25 * b2 * b2)), 0.0, 1.0);
}

double trace_product(const BlockOperator& a, const BlockOperator& b) {
  require_layout(a, b);
  double t = 0.0;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    t += a.blocks[i].multiplicity * trace_product(a.blocks[i].mat, b.blocks[i].mat);
  }
  return t;
}

}  // namespace dichotomy
