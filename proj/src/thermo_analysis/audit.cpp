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

#include <algorithm>
#include <cmath>

#include "qtricycle/thermo_analysis.hpp"

namespace qtricycle::thermo {

LawAudit audit(const CurrentsReport& r, double T_h, double T_c, double T_w, std::optional<double> otto_bound,
               const AuditTolerance& tol) {
    if (!(T_h > 0.0) || !(T_c > 0.0) || !(T_w > 0.0)) throw DomainError("audit: temperatures must be positive");
    LawAudit a;
    const double scale = std::max({std::abs(r.P), std::abs(r.J_h), std::abs(r.J_c), std::abs(r.J_w)});
    const double residual = r.P + r.J_h + r.J_c + r.J_w;
    a.first_law_residual = scale > 0.0 ? std::abs(residual) / scale : std::abs(residual);

    const bool work_bath = !std::isinf(T_w);
    a.entropy_rate = -r.J_h / T_h - r.J_c / T_c - (work_bath ? r.J_w / T_w : 0.0);
    const double entropy_scale =
        std::abs(r.J_h) / T_h + std::abs(r.J_c) / T_c + (work_bath ? std::abs(r.J_w) / T_w : 0.0);

    const bool engine = r.P < 0.0 && r.J_h > 0.0;
    const bool cooler = r.J_c > 0.0 && (r.P > 0.0 || r.J_w > 0.0);
    if (engine) {
        const double eta = -r.P / r.J_h;
        a.carnot_margin = 1.0 - T_c / T_h - eta;
        if (otto_bound) a.otto_margin = *otto_bound - eta;
    } else if (cooler && T_h > T_c) {
        // Work bath and coherent drive both count as input.
        const double input = r.P + r.J_w;
        const double cop = r.J_c / input;
        const double bound = work_bath ? fridge::absorption_cop_bound(T_c, T_h, T_w) : T_c / (T_h - T_c);
        a.carnot_margin = bound - cop;
        if (otto_bound) a.otto_margin = *otto_bound - cop;
    }

    if (!(a.first_law_residual <= tol.residual_rel)) {
        a.pass = false;
        a.reason = "first-law";
    } else if (!(a.entropy_rate >= -tol.entropy * std::max(1.0, entropy_scale))) {
        a.pass = false;
        a.reason = "second-law";
    } else if (a.carnot_margin < -tol.margin) {
        a.pass = false;
        a.reason = "carnot";
    } else if (a.otto_margin < -tol.margin) {
        a.pass = false;
        a.reason = "otto";
    }
    return a;
}

}  // namespace qtricycle::thermo
