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
#include <numbers>

#include "internal.hpp"

namespace qtricycle::fridge {

using detail::require_positive;

void FridgeParams::validate() const {
    require_positive(omega_h, "omega_h");
    require_positive(omega_c, "omega_c");
    require_positive(T_h, "T_h");
    require_positive(T_c, "T_c");
    require_positive(T_w, "T_w");
    require_positive(Gamma_h, "Gamma_h");
    require_positive(Gamma_c, "Gamma_c");
    if (omega_h < omega_c) throw DomainError("fridge needs omega_h >= omega_c");
    if (T_h < T_c) throw DomainError("fridge needs T_h >= T_c");
    if (epsilon < 0.0) throw DomainError("epsilon must be non-negative");
}

bool FridgeParams::cooling_regime() const { return omega_h / T_h > omega_c / T_c; }

namespace {

struct Manifolds {
    double flux_plus;   // Gbar^+ (N_c^+ - N_h^+)
    double flux_minus;  // Gbar^- (N_c^- - N_h^-)
};

Manifolds manifold_fluxes(const engine::AmplifierParams& p) {
    const auto r = engine::dressed_rates(p);
    auto harmonic = [](double a, double b) { return a * b / (a + b); };
    return {harmonic(r.Gamma_c_plus, r.Gamma_h_plus) * (r.N_c_plus - r.N_h_plus),
            harmonic(r.Gamma_c_minus, r.Gamma_h_minus) * (r.N_c_minus - r.N_h_minus)};
}

engine::AmplifierParams as_amplifier(const FridgeParams& p) {
    p.validate();
    return engine::AmplifierParams::symmetric(p.omega_h, p.omega_c, p.epsilon, p.T_h, p.T_c, p.Gamma_h, p.Gamma_c,
                                              p.statistics);
}

}  // namespace

double power_driven_cooling_current(const engine::AmplifierParams& p) {
    const auto f = manifold_fluxes(p);
    return 0.5 * ((p.omega_c - p.epsilon) * f.flux_minus + (p.omega_c + p.epsilon) * f.flux_plus);
}

double power_driven_cooling_current(const FridgeParams& p) { return power_driven_cooling_current(as_amplifier(p)); }

CurrentsReport power_driven_fridge(const FridgeParams& p) {
    const auto a = as_amplifier(p);
    const auto f = manifold_fluxes(a);
    CurrentsReport out;
    out.J_c = power_driven_cooling_current(a);
    out.J_h = -0.5 * ((a.omega_h - a.epsilon) * f.flux_minus + (a.omega_h + a.epsilon) * f.flux_plus);
    out.P = 0.5 * a.nu * (f.flux_minus + f.flux_plus);
    engine::finalize_report(out, a.T_h, a.T_c);
    return out;
}

double otto_cop(double omega_h, double omega_c) {
    require_positive(omega_c, "omega_c");
    if (!(omega_h > omega_c)) throw DomainError("Otto COP needs omega_h > omega_c");
    return omega_c / (omega_h - omega_c);
}

double carnot_cop(double T_h, double T_c) {
    require_positive(T_c, "T_c");
    if (!(T_h > T_c)) throw DomainError("Carnot COP needs T_h > T_c");
    return T_c / (T_h - T_c);
}

double minimum_temperature(double omega_c, double omega_h, double T_h) {
    require_positive(omega_c, "omega_c");
    require_positive(omega_h, "omega_h");
    require_positive(T_h, "T_h");
    return omega_c / omega_h * T_h;
}

MinimumTemperatureExample sodium_minimum_temperature(double T_h_kelvin) {
    // D line pump frequency and ground-state hyperfine splitting, both in Hz.
    constexpr double omega_h = 508.838e13;
    constexpr double omega_c = 1.7716e10;
    return {omega_c / omega_h, minimum_temperature(omega_c, omega_h, T_h_kelvin)};
}

DopplerRecoil doppler_recoil_reference(double gamma_linewidth, double k_photon, double mass) {
    require_positive(gamma_linewidth, "gamma_linewidth");
    require_positive(k_photon, "k_photon");
    require_positive(mass, "mass");
    return {0.5 * gamma_linewidth, k_photon * k_photon / (2.0 * mass)};
}

DopplerRecoil doppler_recoil_si(double gamma_linewidth, double k_photon, double mass) {
    // Rescale to hbar = k_B = 1: energies in kelvin, times in hbar / (k_B K).
    const double unit = si::hbar / si::k_B;
    const auto r = doppler_recoil_reference(gamma_linewidth * unit, k_photon, mass / (si::hbar * unit));
    return r;
}

DopplerRecoil sodium_doppler_recoil() {
    const double gamma = 2.0 * std::numbers::pi * 9.795e6;
    const double k = 2.0 * std::numbers::pi / 589.158e-9;
    const double mass = 22.98976928 * si::atomic_mass;
    return doppler_recoil_si(gamma, k, mass);
}

double universal_low_T_current(double omega_c, double gamma_c, double T_c) {
    require_positive(omega_c, "omega_c");
    require_positive(T_c, "T_c");
    if (gamma_c < 0.0) throw DomainError("gamma_c must be non-negative");
    return omega_c * gamma_c * std::exp(-omega_c / T_c);
}

}  // namespace qtricycle::fridge
