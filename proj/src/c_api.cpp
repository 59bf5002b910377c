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


#include "dichotomy/dichotomy.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "dichotomy/asymptotics.hpp"
#include "dichotomy/error.hpp"
#include "dichotomy/json_io.hpp"
#include "dichotomy/resource.hpp"

using namespace dichotomy;

struct dq_state {
  DensityMatrix value;
};
struct dq_dichotomy {
  Dichotomy value;
};
struct dq_channel {
  Channel value;
};
struct dq_gibbs {
  GibbsSpec value;
};

namespace {

thread_local std::string g_last_error;

dq_status fail(dq_status code, std::string message) {
  g_last_error = std::move(message);
  return code;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
dq_status guarded(F&& body) {
  try {
    body();
    return DQ_OK;
  } catch (const Error& e) {
    return fail(static_cast<dq_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DQ_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DQ_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw ValidationError(what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

CMatrix unpack(size_t dim, const double* re_im) {
  require(dim > 0, "dimension must be positive");
  require(re_im != nullptr, "entry buffer is null");
  const auto n = static_cast<Eigen::Index>(dim);
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const size_t k = 2 * static_cast<size_t>(i * n + j);
      m(i, j) = Complex(re_im[k], re_im[k + 1]);
    }
  return m;
}

Metric to_metric(dq_metric m) {
  switch (m) {
    case DQ_METRIC_TRACE:
      return Metric::TraceDistance;
    case DQ_METRIC_PURIFIED:
      return Metric::PurifiedDistance;
  }
  throw ValidationError("unknown metric");
}

ExperimentConfig to_config(const dq_dichotomy* src, const dq_dichotomy* dst,
                           const dq_experiment* cfg) {
  require(src && dst && cfg, "null argument");
  ExperimentConfig c{src->value, dst->value};
  c.metric = to_metric(cfg->metric);
  c.eps_total = cfg->eps_total;
  c.eps_split = cfg->eps_split;
  c.n_max = cfg->n_max;
  c.classical_fast_path = cfg->classical != 0;
  c.validate();
  return c;
}

std::vector<int> to_grid(const int* ns, size_t count) {
  if (ns == nullptr || count == 0) return {};
  return std::vector<int>(ns, ns + count);
}

template <class T>
T* copy_array(const std::vector<T>& v) {
  T* out = static_cast<T*>(std::malloc(sizeof(T) * (v.empty() ? 1 : v.size())));
  if (out == nullptr) throw std::bad_alloc();
  if (!v.empty()) std::memcpy(out, v.data(), sizeof(T) * v.size());
  return out;
}

void fill_info(dq_synthesis_info* info, const SynthesisResult& r) {
  if (info == nullptr) return;
  *info = dq_synthesis_info{};
  info->borderline = r.borderline ? 1 : 0;
}

}  // namespace

extern "C" {

const char* dq_version(void) { return "0.1.0"; }
const char* dq_last_error(void) { return g_last_error.c_str(); }
void dq_string_free(char* s) { std::free(s); }

// ---- states ----

dq_status dq_state_create(size_t dim, const double* re_im, dq_state** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = new dq_state{DensityMatrix(HermitianMatrix(unpack(dim, re_im)))};
  });
}

dq_status dq_state_from_json(const char* text, dq_state** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new dq_state{state_from_json(text)};
  });
}

dq_status dq_state_load(const char* path, dq_state** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new dq_state{state_from_json(read_text_file(path))};
  });
}

void dq_state_free(dq_state* s) { delete s; }

size_t dq_state_dim(const dq_state* s) {
  return s ? static_cast<size_t>(s->value.dim()) : 0;
}

dq_status dq_state_entries(const dq_state* s, double* re_im) {
  return guarded([&] {
    require(s && re_im, "null argument");
    const CMatrix& m = s->value.matrix();
    const Eigen::Index n = m.rows();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        const size_t k = 2 * static_cast<size_t>(i * n + j);
        re_im[k] = m(i, j).real();
        re_im[k + 1] = m(i, j).imag();
      }
  });
}

dq_status dq_state_to_json(const dq_state* s, char** out) {
  return guarded([&] {
    require(s && out, "null argument");
    *out = dup_string(state_to_json(s->value));
  });
}

dq_status dq_state_dephase(const dq_state* s, dq_state** out) {
  return guarded([&] {
    require(s && out, "null argument");
    *out = new dq_state{dephase(s->value)};
  });
}

dq_status dq_state_distance(const dq_state* a, const dq_state* b, dq_metric metric,
                            double* out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    require(a->value.dim() == b->value.dim(), "states have different dimensions");
    *out = distance(a->value, b->value, to_metric(metric));
  });
}

// ---- dichotomies ----

dq_status dq_dichotomy_create(const dq_state* rho, const dq_state* sigma, dq_dichotomy** out) {
  return guarded([&] {
    require(rho && sigma && out, "null argument");
    *out = new dq_dichotomy{Dichotomy(rho->value, sigma->value)};
  });
}

dq_status dq_dichotomy_from_json(const char* text, dq_dichotomy** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new dq_dichotomy{dichotomy_from_json(text)};
  });
}

dq_status dq_dichotomy_load(const char* path, dq_dichotomy** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new dq_dichotomy{dichotomy_from_json(read_text_file(path))};
  });
}

void dq_dichotomy_free(dq_dichotomy* d) { delete d; }

size_t dq_dichotomy_dim(const dq_dichotomy* d) {
  return d ? static_cast<size_t>(d->value.dim()) : 0;
}

int dq_dichotomy_is_classical(const dq_dichotomy* d) {
  return d && d->value.is_classical() ? 1 : 0;
}

dq_status dq_divergence(const dq_dichotomy* d, dq_divergence_kind kind,
                        const dq_divergence_params* params, dq_value* out) {
  return guarded([&] {
    require(d && out, "null argument");
    const dq_divergence_params p =
        params ? *params : dq_divergence_params{1.0, 0.1, DQ_METRIC_TRACE};
    DivergenceValue v;
    switch (kind) {
      case DQ_RELATIVE_ENTROPY:
        v = relative_entropy(d->value);
        break;
      case DQ_PETZ:
        v = petz_renyi(d->value, p.alpha);
        break;
      case DQ_SANDWICHED:
        v = sandwiched_renyi(d->value, p.alpha);
        break;
      case DQ_DMIN:
        v = d_min(d->value);
        break;
      case DQ_DMAX:
        v = d_max(d->value);
        break;
      case DQ_VARIANCE:
        v = DivergenceValue::finite(relative_entropy_variance(d->value));
        break;
      case DQ_HYPOTHESIS_TESTING:
        v = hypothesis_testing(d->value, p.eps, false).value;
        break;
      case DQ_SMOOTH_DMAX:
        v = smooth_dmax(d->value, p.eps, to_metric(p.metric)).value;
        break;
      default:
        throw ValidationError("unknown divergence kind");
    }
    *out = dq_value{v.bits, v.infinite ? 1 : 0};
  });
}

// ---- channels ----

dq_status dq_synthesize_exact(const dq_dichotomy* src, const dq_dichotomy* dst,
                              dq_channel** out, dq_synthesis_info* info) {
  return guarded([&] {
    require(src && dst && out, "null argument");
    SynthesisResult r = synthesize_exact(src->value, dst->value);
    fill_info(info, r);
    *out = new dq_channel{Channel(std::move(r.channel))};
  });
}

dq_status dq_synthesize_approx(const dq_dichotomy* src, const dq_dichotomy* dst, double eps1,
                               double eps2, dq_metric metric, dq_channel** out,
                               dq_synthesis_info* info) {
  return guarded([&] {
    require(src && dst && out, "null argument");
    ApproxSynthesis r =
        synthesize_approx(src->value, dst->value, eps1, eps2, to_metric(metric));
    fill_info(info, r.result);
    if (info) {
      info->dh_bits = r.dh_bits;
      info->dmax_bits = r.dmax_bits;
      info->certified_bound = r.certified_bound;
    }
    *out = new dq_channel{Channel(std::move(r.result.channel))};
  });
}

dq_status dq_channel_from_json(const char* text, dq_channel** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new dq_channel{channel_from_json(text)};
  });
}

dq_status dq_channel_load(const char* path, dq_channel** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new dq_channel{channel_from_json(read_text_file(path))};
  });
}

dq_status dq_channel_to_json(const dq_channel* ch, char** out) {
  return guarded([&] {
    require(ch && out, "null argument");
    *out = dup_string(channel_to_json(ch->value));
  });
}

dq_status dq_channel_random(size_t d_in, size_t d_out, size_t env_dim, uint64_t seed,
                            dq_channel** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = new dq_channel{Channel(random_channel(static_cast<Eigen::Index>(d_in),
                                                 static_cast<Eigen::Index>(d_out),
                                                 static_cast<Eigen::Index>(env_dim), seed))};
  });
}

void dq_channel_free(dq_channel* ch) { delete ch; }

dq_status dq_channel_apply(const dq_channel* ch, const dq_state* x, dq_state** out) {
  return guarded([&] {
    require(ch && x && out, "null argument");
    *out = new dq_state{apply(ch->value, x->value)};
  });
}

dq_status dq_verify(const dq_channel* ch, const dq_dichotomy* src, const dq_dichotomy* dst,
                    dq_metric metric, double* sigma_error, double* rho_error) {
  return guarded([&] {
    require(ch && src && dst, "null argument");
    const VerificationReport r =
        verify_transformation(ch->value, src->value, dst->value, to_metric(metric));
    if (sigma_error) *sigma_error = r.sigma_error;
    if (rho_error) *rho_error = r.rho_error;
  });
}

dq_status dq_channel_is_dio(const dq_channel* ch, int* out) {
  return guarded([&] {
    require(ch && out, "null argument");
    *out = is_dio(ch->value) ? 1 : 0;
  });
}

// ---- experiments ----

dq_status dq_rate_curve(const dq_dichotomy* src, const dq_dichotomy* dst,
                        const dq_experiment* cfg, const int* ns, size_t ns_count,
                        dq_record** out, size_t* count) {
  return guarded([&] {
    require(out && count, "null output");
    const std::vector<ExperimentRecord> recs =
        rate_curve(to_config(src, dst, cfg), to_grid(ns, ns_count));
    std::vector<dq_record> flat;
    flat.reserve(recs.size());
    for (const auto& r : recs)
      flat.push_back(dq_record{r.n, r.m, r.unbounded ? 1 : 0, r.rate, r.eps1, r.eps2,
                               r.achieved_error, r.certified ? 1 : 0, r.dh_bits,
                               r.dmax_bits});
    *out = copy_array(flat);
    *count = flat.size();
  });
}

void dq_records_free(dq_record* records) { std::free(records); }

dq_status dq_error_exponent_sweep(const dq_dichotomy* src, const dq_dichotomy* dst,
                                  const dq_experiment* cfg, double rate, const int* ns,
                                  size_t ns_count, dq_exponent_fit* fit,
                                  dq_exponent_point** points, size_t* count) {
  if (fit == nullptr) return fail(DQ_ERR_VALIDATION, "null output");
  *fit = dq_exponent_fit{};
  if (points) *points = nullptr;
  if (count) *count = 0;
  try {
    const ExperimentConfig c = to_config(src, dst, cfg);
    const ExponentFit f = error_exponent_sweep(c, rate, to_grid(ns, ns_count));
    fit->slope_bits_per_n = f.slope_bits_per_n;
    fit->intercept = f.intercept;
    fit->r_squared = f.r_squared;
    fit->regime = f.regime == Regime::ErrorDecay ? DQ_ERROR_DECAY : DQ_STRONG_CONVERSE;
    fit->critical_rate = f.critical_rate;
    fit->lambda1 = f.lambda1;
    fit->lambda2 = f.lambda2;
    fit->fit_start_n = f.fit_start_n;
    if (points && count) {
      std::vector<dq_exponent_point> flat;
      for (const auto& p : f.points) flat.push_back({p.n, p.m, p.eps, p.log2_value});
      *points = copy_array(flat);
      *count = flat.size();
    }
    return DQ_OK;
  } catch (const NearCriticalError& e) {
    fit->lambda1 = e.lambda1();
    fit->lambda2 = e.lambda2();
    fit->critical_rate = e.lambda2() > 0.0 ? e.lambda1() / e.lambda2() : 0.0;
    return fail(DQ_ERR_NEAR_CRITICAL, e.what());
  } catch (const Error& e) {
    return fail(static_cast<dq_status>(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(DQ_ERR_INTERNAL, e.what());
  }
}

void dq_points_free(dq_exponent_point* points) { std::free(points); }

// ---- resource theories ----

dq_status dq_gibbs_create(size_t dim, const double* hamiltonian_re_im, double beta,
                          dq_gibbs** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    GibbsSpec g{HermitianMatrix(unpack(dim, hamiltonian_re_im)), beta};
    g.validate();
    *out = new dq_gibbs{std::move(g)};
  });
}

dq_status dq_gibbs_from_json(const char* text, dq_gibbs** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new dq_gibbs{gibbs_from_json(text)};
  });
}

dq_status dq_gibbs_load(const char* path, dq_gibbs** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new dq_gibbs{gibbs_from_json(read_text_file(path))};
  });
}

void dq_gibbs_free(dq_gibbs* g) { delete g; }

dq_status dq_gibbs_state(const dq_gibbs* g, dq_state** out) {
  return guarded([&] {
    require(g && out, "null argument");
    *out = new dq_state{gibbs_state(g->value)};
  });
}

dq_status dq_free_energy(const dq_state* rho, const dq_gibbs* g, double* value,
                         double* residual) {
  return guarded([&] {
    require(rho && g && value, "null argument");
    const FreeEnergyReport r = free_energy_report(rho->value, g->value);
    *value = r.value;
    if (residual) *residual = r.residual;
  });
}

dq_status dq_athermality(const dq_state* rho1, const dq_state* rho2, const dq_gibbs* g,
                         dq_athermality_report* out) {
  return guarded([&] {
    require(rho1 && rho2 && g && out, "null argument");
    const AthermalityReport r = athermality_feasible(rho1->value, rho2->value, g->value);
    out->lambda1 = r.lambda1;
    out->lambda2 = r.lambda2;
    out->free_energy1 = r.free_energy1;
    out->free_energy2 = r.free_energy2;
    switch (r.verdict) {
      case AthermalityVerdict::AsymptoticallyFeasible:
        out->verdict = DQ_ATHERMALITY_FEASIBLE;
        break;
      case AthermalityVerdict::StrongConverseRegime:
        out->verdict = DQ_ATHERMALITY_STRONG_CONVERSE;
        break;
      case AthermalityVerdict::NearCritical:
        out->verdict = DQ_ATHERMALITY_NEAR_CRITICAL;
        break;
    }
  });
}

dq_status dq_coherence_rate(const dq_state* rho, double* out) {
  return guarded([&] {
    require(rho && out, "null argument");
    *out = coherence_distillation_rate(rho->value);
  });
}

dq_status dq_dio_rate(const dq_state* rho, const dq_state* sigma, double* value,
                      int* unbounded) {
  return guarded([&] {
    require(rho && sigma && value, "null argument");
    const RateValue r = dio_transformation_rate(rho->value, sigma->value);
    *value = r.value;
    if (unbounded) *unbounded = r.unbounded ? 1 : 0;
  });
}

}  // extern "C"
