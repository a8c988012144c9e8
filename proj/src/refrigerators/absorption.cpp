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

#include <cmath>

#include "internal.hpp"

namespace qtricycle::fridge {

using core::cplx;
using detail::require_positive;

double absorption_cop_bound(double T_c, double T_h, double T_w) {
    require_positive(T_c, "T_c");
    if (!(T_h > T_c)) throw DomainError("absorption COP bound needs T_h > T_c");
    if (!(T_w >= T_h)) throw DomainError("absorption COP bound needs T_w >= T_h");
    if (std::isinf(T_w)) return T_c / (T_h - T_c);
    return (T_w - T_h) * T_c / ((T_h - T_c) * T_w);
}

ThreeLevelAbsorptionReport three_level_absorption(const ThreeLevelAbsorptionParams& p) {
    require_positive(p.omega_c, "omega_c");
    if (!(p.omega_h > p.omega_c)) throw DomainError("three-level absorption fridge needs omega_h > omega_c");
    for (const BathSpec* b : {&p.hot, &p.cold, &p.work}) {
        require_positive(b->T, "bath temperature");
        require_positive(b->gamma, "bath rate");
        if (std::isinf(b->T)) throw DomainError("three-level absorption fridge needs finite bath temperatures");
    }
    const double omega_w = p.omega_h - p.omega_c;
    const auto space = core::HilbertSpace::single("atom", 3);
    auto ket_bra = [&](int i, int j) {
        core::Matrix m = core::Matrix::Zero(3, 3);
        m(i, j) = 1.0;
        return core::Operator(space, m);
    };
    core::Matrix hm = core::Matrix::Zero(3, 3);
    hm(1, 1) = p.omega_c;
    hm(2, 2) = p.omega_h;
    const core::Operator h(space, hm);

    std::vector<core::LindbladTerm> terms;
    auto add = [&](int lower, int upper, double omega, const BathSpec& b, const char* tag) {
        const double g = b.gamma * std::pow(omega, b.spectral_exponent);
        const double n = detail::bose(omega, b.T);
        terms.emplace_back(ket_bra(lower, upper), g * (n + 1.0), tag);
        terms.emplace_back(ket_bra(upper, lower), g * n, tag);
    };
    add(0, 1, p.omega_c, p.cold, "cold");
    add(0, 2, p.omega_h, p.hot, "hot");
    add(1, 2, omega_w, p.work, "work");
    const auto l = core::build_liouvillian(h, terms);
    const auto rho = core::steady_state(l);

    ThreeLevelAbsorptionReport out;
    out.currents.J_c = core::channel_current(l, "cold", rho, h);
    out.currents.J_h = core::channel_current(l, "hot", rho, h);
    out.currents.J_w = core::channel_current(l, "work", rho, h);
    detail::finalize_absorption(out.currents, p.hot.T, p.cold.T, p.work.T);
    out.gain = std::exp(-omega_w / p.work.T) * std::exp(-p.omega_c / p.cold.T) - std::exp(-p.omega_h / p.hot.T);
    return out;
}

}  // namespace qtricycle::fridge
