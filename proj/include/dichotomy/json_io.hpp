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
#include <string_view>

#include "dichotomy/resource.hpp"

namespace dichotomy {

// Text formats. A complex entry is [re, im] (a bare number is read as a
// real entry); a matrix is an array of rows.
//   state:     matrix, or {"rho": matrix}
//   dichotomy: {"rho": matrix, "sigma": matrix}
//   channel:   {"effect": m, "prep_accept": m, "prep_reject": m} or {"kraus": [m, ...]}
//   gibbs:     {"hamiltonian": matrix, "beta": number}
// Parse failures throw ValidationError naming the offending field.

CMatrix matrix_from_json(std::string_view text);
DensityMatrix state_from_json(std::string_view text);
Dichotomy dichotomy_from_json(std::string_view text);
Channel channel_from_json(std::string_view text);
GibbsSpec gibbs_from_json(std::string_view text);

/// Matrices are written at full round-trip precision.
std::string matrix_to_json(const CMatrix& m);
std::string state_to_json(const DensityMatrix& rho);
std::string dichotomy_to_json(const Dichotomy& d);
std::string channel_to_json(const Channel& ch);
std::string gibbs_to_json(const GibbsSpec& g);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace dichotomy
