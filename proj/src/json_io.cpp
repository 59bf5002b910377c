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

#include "dichotomy/json_io.hpp"

#include <fstream>
#include <sstream>

#include "dichotomy/error.hpp"
#include "json.hpp"

namespace dichotomy {
namespace {

using nlohmann::json;

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
}

CMatrix matrix_of(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ValidationError("field '" + field + "': expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw ValidationError("field '" + field + "': rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError("field '" + field + "': row " + std::to_string(r) + " has the wrong length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ValidationError("field '" + field + "': entry (" + std::to_string(r) + "," +
                              std::to_string(c) + ") must be a number or [re, im]");
      }
    }
  }
  return m;
}

HermitianMatrix hermitian_of(const json& j, const std::string& field) {
  const CMatrix m = matrix_of(j, field);
  if (m.rows() != m.cols()) throw ValidationError("field '" + field + "': matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw ValidationError("field '" + field + "': matrix is not Hermitian");
  }
  return HermitianMatrix(m);
}

DensityMatrix state_of(const json& j, const std::string& field) {
  try {
    return DensityMatrix(hermitian_of(j, field));
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    if (what.rfind("field '", 0) == 0) throw;
    throw ValidationError("field '" + field + "': " + what);
  }
}

const json& member(const json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) {
    throw ValidationError(std::string("missing field '") + field + "'");
  }
  return j.at(field);
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

CMatrix matrix_from_json(std::string_view text) { return matrix_of(parse(text), "matrix"); }

DensityMatrix state_from_json(std::string_view text) {
  const json j = parse(text);
  if (j.is_object()) return state_of(member(j, "rho"), "rho");
  return state_of(j, "state");
}

Dichotomy dichotomy_from_json(std::string_view text) {
  const json j = parse(text);
  DensityMatrix rho = state_of(member(j, "rho"), "rho");
  DensityMatrix sigma = state_of(member(j, "sigma"), "sigma");
  if (rho.dim() != sigma.dim()) throw ValidationError("field 'sigma': dimension differs from 'rho'");
  return Dichotomy(std::move(rho), std::move(sigma));
}

Channel channel_from_json(std::string_view text) {
  const json j = parse(text);
  if (j.is_object() && j.contains("kraus")) {
    const json& ks = j.at("kraus");
    if (!ks.is_array() || ks.empty()) throw ValidationError("field 'kraus': expected a non-empty array");
    std::vector<CMatrix> ops;
    for (std::size_t i = 0; i < ks.size(); ++i) ops.push_back(matrix_of(ks[i], "kraus[" + std::to_string(i) + "]"));
    return GeneralChannel(std::move(ops));
  }
  Effect effect(hermitian_of(member(j, "effect"), "effect"));
  DensityMatrix accept = state_of(member(j, "prep_accept"), "prep_accept");
  DensityMatrix reject = state_of(member(j, "prep_reject"), "prep_reject");
  return TestAndPrepareChannel(std::move(effect), std::move(accept), std::move(reject));
}

GibbsSpec gibbs_from_json(std::string_view text) {
  const json j = parse(text);
  GibbsSpec g{hermitian_of(member(j, "hamiltonian"), "hamiltonian"), 0.0};
  const json& b = member(j, "beta");
  if (!b.is_number()) throw ValidationError("field 'beta': expected a number");
  g.beta = b.get<double>();
  if (!(g.beta > 0.0) || !std::isfinite(g.beta)) throw ValidationError("field 'beta': must be positive and finite");
  return g;
}

std::string matrix_to_json(const CMatrix& m) { return matrix_json(m).dump(); }

std::string state_to_json(const DensityMatrix& rho) { return matrix_json(rho.matrix()).dump(); }

std::string dichotomy_to_json(const Dichotomy& d) {
  json j;
  j["rho"] = matrix_json(d.rho.matrix());
  j["sigma"] = matrix_json(d.sigma.matrix());
  return j.dump(2);
}

std::string channel_to_json(const Channel& ch) {
  json j;
  if (const auto* tp = std::get_if<TestAndPrepareChannel>(&ch)) {
    j["effect"] = matrix_json(tp->effect.hermitian().matrix());
    j["prep_accept"] = matrix_json(tp->prep_accept.matrix());
    j["prep_reject"] = matrix_json(tp->prep_reject.matrix());
  } else {
    json ks = json::array();
    for (const CMatrix& k : std::get<GeneralChannel>(ch).kraus) ks.push_back(matrix_json(k));
    j["kraus"] = std::move(ks);
  }
  return j.dump(2);
}

std::string gibbs_to_json(const GibbsSpec& g) {
  json j;
  j["hamiltonian"] = matrix_json(g.hamiltonian.matrix());
  j["beta"] = g.beta;
  return j.dump(2);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace dichotomy
