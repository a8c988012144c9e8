// Copyright 2026 The qtricycle Authors
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

#include <cmath>
#include <string>

#include "qtricycle/refrigerators.hpp"

namespace qtricycle::fridge::detail {

inline void require_positive(double v, const std::string& what) {
    if (!(v > 0.0) || std::isnan(v)) throw DomainError(what + " must be positive");
}

inline double bose(double omega, double T) {
    if (std::isinf(T)) return std::numeric_limits<double>::infinity();
    return occupation(omega, T, Statistics::bose);
}

// Entropy, first-law residual and COP for a fridge fed by a work bath or noise
// (J_w) rather than a coherent drive. An infinite T_w contributes no entropy.
inline void finalize_absorption(CurrentsReport& r, double T_h, double T_c, double T_w) {
    r.entropy_rate = -r.J_h / T_h - r.J_c / T_c - (std::isinf(T_w) ? 0.0 : r.J_w / T_w);
    r.first_law_residual = r.P + r.J_h + r.J_c + r.J_w;
    r.efficiency_or_cop = (r.J_c > 0.0 && r.J_w > 0.0) ? r.J_c / r.J_w : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace qtricycle::fridge::detail
