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

#include "qtricycle/discrete_engines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qtricycle::discrete {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

// One manifold of the flows: gain d enters G1 with weight 1 and G2 with
// weight sign (+1 upper, -1 lower).
CurrentsReport manifold(const engine::AmplifierParams& p, double kappa_h, double kappa_c, double d, double sign) {
    const double e = p.epsilon;
    const double kk = kappa_h * kappa_c / (kappa_h + kappa_c);
    const double den = 4.0 * e * e + kappa_h * kappa_c;
    CurrentsReport out;
    out.P = -2.0 * p.nu * e * e * d / den * kk;
    out.J_h = (0.5 * e * sign * d + 2.0 * p.omega_h * e * e * d / den) * kk;
    out.J_c = -(0.5 * e * sign * d + 2.0 * p.omega_c * e * e * d / den) * kk;
    engine::finalize_report(out, p.T_h, p.T_c);
    return out;
}

}  // namespace

void ThreeLevelStatic::validate() const {
    require_positive(omega_h, "omega_h");
    require_positive(omega_c, "omega_c");
    require_positive(T_h, "T_h");
    require_positive(T_c, "T_c");
    if (omega_h < omega_c) throw DomainError("three-level engine needs omega_h >= omega_c");
}

double static_gain(const ThreeLevelStatic& s) {
    s.validate();
    return std::exp(-s.omega_h / s.T_h) - std::exp(-s.omega_c / s.T_c);
}

OttoCarnot otto_and_carnot(const ThreeLevelStatic& s) {
    const double g = static_gain(s);
    OttoCarnot out{1.0 - s.omega_c / s.omega_h, 1.0 - s.T_c / s.T_h};
    if (g >= 0.0 && out.eta_otto > out.eta_carnot + 1e-12)
        throw NumericalError("non-negative gain with Otto efficiency above Carnot");
    return out;
}

LambReport lamb_steady_currents(const engine::AmplifierParams& p) {
    if (p.statistics != Statistics::fermi) throw DomainError("lamb_steady_currents: statistics must be fermi");
    LambReport out;
    out.total = engine::currents(p);  // also checks the symmetric-rate limit
    const auto r = engine::dressed_rates(p);
    out.upper = manifold(p, r.Gamma_h_plus, r.Gamma_c_plus, r.N_h_plus - r.N_c_plus, 1.0);
    out.lower = manifold(p, r.Gamma_h_plus, r.Gamma_c_plus, r.N_h_minus - r.N_c_minus, -1.0);
    return out;
}

double epsilon_crit_low_temperature(double omega_h, double omega_c, double T_h, double T_c) {
    require_positive(T_h, "T_h");
    require_positive(T_c, "T_c");
    const double num = T_h * omega_c - T_c * omega_h;
    if (!(num > 0.0)) throw DomainError("T_h omega_c - T_c omega_h <= 0: no lasing at weak drive");
    if (!(T_h > T_c)) throw DomainError("epsilon_crit_low_temperature needs T_h > T_c");
    return num / (T_h - T_c);
}

double saturation_efficiency_estimate(double omega_h, double T_h, double T_c) {
    require_positive(omega_h, "omega_h");
    require_positive(T_h, "T_h");
    require_positive(T_c, "T_c");
    const double eta_c = 1.0 - T_c / T_h;
    return eta_c - std::sqrt(T_c / omega_h) * std::sqrt(eta_c);
}

void FourLevelStatic::validate() const {
    require_positive(omega_h, "omega_h");
    require_positive(omega_c1, "omega_c1");
    require_positive(omega_c2, "omega_c2");
    require_positive(T_h, "T_h");
    require_positive(T_c, "T_c");
    if (nu() < 0.0) throw DomainError("four-level engine needs omega_h >= omega_c1 + omega_c2");
}

FourLevelResult four_level_gain(const FourLevelStatic& s) {
    s.validate();
    FourLevelResult out;
    out.gain = std::exp(-s.omega_h / s.T_h + s.omega_c2 / s.T_c) - std::exp(-s.omega_c1 / s.T_c);
    out.eta_otto = s.nu() / s.omega_h;
    out.eta_carnot = 1.0 - s.T_c / s.T_h;
    out.balanced = std::abs(s.omega_c1 - s.omega_c2) <= 1e-12 * std::max(s.omega_c1, s.omega_c2);
    return out;
}

bool two_level_bound_applicable(double T_h, double T_c) {
    require_positive(T_h, "T_h");
    require_positive(T_c, "T_c");
    return two_level_bound() <= 1.0 - T_c / T_h;
}

}  // namespace qtricycle::discrete
