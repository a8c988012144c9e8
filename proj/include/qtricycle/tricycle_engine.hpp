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

// Driven tricycle amplifier: two filter oscillators (hot, cold) coupled by a
// classical field of strength epsilon at resonance nu = omega_h - omega_c.
// Everything is expressed through the dressed frequencies omega +- epsilon
// and the SU(2) set W, X, Y, Z; heat currents are positive into the device.

#pragma once

#include <array>
#include <limits>
#include <string>

#include "qtricycle/errors.hpp"

namespace qtricycle {

enum class Statistics { bose, fermi };

std::string to_string(Statistics s);
Statistics statistics_from_string(const std::string& s);

// Bose-Einstein or Fermi-Dirac occupation of a mode at frequency omega.
double occupation(double omega, double T, Statistics statistics);

// Shared steady-state report. P is the coherent drive power, J_w the heat
// drawn from a thermal work reservoir; a model uses one or the other.
struct CurrentsReport {
    double P = 0.0;
    double J_h = 0.0;
    double J_c = 0.0;
    double J_w = 0.0;
    double entropy_rate = 0.0;
    double efficiency_or_cop = std::numeric_limits<double>::quiet_NaN();
    double first_law_residual = 0.0;

    double output_power() const { return -P; }
};

}  // namespace qtricycle

namespace qtricycle::engine {

struct AmplifierParams {
    double omega_h = 0.0;
    double omega_c = 0.0;
    double nu = 0.0;
    double epsilon = 0.0;
    double T_h = 0.0;
    double T_c = 0.0;
    double gamma_h_plus = 0.0;
    double gamma_h_minus = 0.0;
    double gamma_c_plus = 0.0;
    double gamma_c_minus = 0.0;
    Statistics statistics = Statistics::bose;

    // Resonant parameters whose bare rates give Gamma_h^+- = kappa_h and Gamma_c^+- = kappa_c.
    static AmplifierParams symmetric(double omega_h, double omega_c, double epsilon, double T_h, double T_c,
                                     double kappa_h, double kappa_c, Statistics statistics = Statistics::bose);

    // Throws DomainError: nonpositive frequency/temperature, omega_h < omega_c,
    // a dressed frequency <= 0, negative rate, or nu off resonance.
    void validate() const;

    AmplifierParams with_epsilon(double eps) const;  // keeps Gamma^+- fixed, rescaling gamma
};

struct DressedRates {
    double N_h_plus = 0.0, N_h_minus = 0.0, N_c_plus = 0.0, N_c_minus = 0.0;
    double Gamma_h_plus = 0.0, Gamma_h_minus = 0.0, Gamma_c_plus = 0.0, Gamma_c_minus = 0.0;
    double Gamma_T = 0.0, Gamma_plus = 0.0, Gamma_minus = 0.0, Gamma_h = 0.0, Gamma_c = 0.0;
};

// Relaxation coefficient of a dressed mode from its bare rate:
// bose gamma (1 - e^{-w/T}); fermi gamma (1 + e^{-w/T}).
double transport_coefficient(double gamma, double omega, double T, Statistics statistics);

DressedRates dressed_rates(const AmplifierParams& p);

struct SU2State {
    double W = 0.0;
    double X = 0.0;
    double Y = 0.0;
    double Z = 0.0;
};

enum class Su2Method { automatic, closed_form, linear_solve };

// closed_form needs Gamma^+ = Gamma^- per bath (relative 1e-12) and throws otherwise.
SU2State su2_steady_state(const AmplifierParams& p, Su2Method method = Su2Method::automatic);

// Closed-form <W> with the coefficient of its second term written as 4*lambda^2.
double w_closed_form(const AmplifierParams& p, double lambda);

// Per-bath split of the SU(2) motion equations: d/dt v = M v + s with
// v = (W, X, Y, Z). Summing hot, cold and coherent parts gives the full system.
struct LinearPart {
    std::array<std::array<double, 4>, 4> M{};
    std::array<double, 4> s{};
};
LinearPart su2_hot_part(const DressedRates& r);
LinearPart su2_cold_part(const DressedRates& r);
LinearPart su2_coherent_part(double epsilon);
LinearPart su2_dephasing_part(double nu, double epsilon, double dephasing_strength);

struct Gains {
    double G1 = 0.0;
    double G2 = 0.0;
};
Gains gains(const AmplifierParams& p);

// Closed-form currents of the symmetric-rate limit; throws when rates differ.
CurrentsReport currents(const AmplifierParams& p);
// Strong-drive limit epsilon^2 >> kappa_h kappa_c.
CurrentsReport currents_strong_drive(const AmplifierParams& p);
// Balanced kappa_h = kappa_c = Gamma.
CurrentsReport currents_balanced(const AmplifierParams& p);
// Currents from the solved 4x4 system (any rates), optionally with dephasing.
CurrentsReport currents_from_linear_system(const AmplifierParams& p, double dephasing_strength = 0.0);

// -P/J_h from the closed form: nu / (omega_h + (4 eps^2 + kappa_h kappa_c) G2 / (4 |eps| G1)).
double efficiency(const AmplifierParams& p);
// The same expression with (kappa_h kappa_c + eps^2) in place of (kappa_h kappa_c + 4 eps^2).
double efficiency_printed(const AmplifierParams& p);
// Limit epsilon -> 0 at fixed balanced Gamma (bose statistics).
double efficiency_small_coupling(double omega_h, double omega_c, double T_h, double T_c, double Gamma);

// Smallest epsilon > 0 where the power vanishes (G1 changes sign).
// The epsilon stored in p is ignored; kappa_h, kappa_c are read from its Gamma^+.
double epsilon_crit(const AmplifierParams& p);

// Entropy production from the heat leak alone: (eps K G2 / 2)(1/T_c - 1/T_h), K = kh kc/(kh+kc).
double heat_leak_entropy(const AmplifierParams& p);

CurrentsReport dephasing_power_degradation(const AmplifierParams& p, double dephasing_strength);

// Fills entropy_rate, efficiency_or_cop and first_law_residual from P, J_h, J_c.
void finalize_report(CurrentsReport& r, double T_h, double T_c);

// -------------------------------------------------------------- oracle

struct OracleResult {
    CurrentsReport currents;
    SU2State su2;
    int truncation = 0;
    bool converged = false;
    double max_rel_change = 0.0;
    double min_eigenvalue = 0.0;
    double residual = 0.0;
};

// Brute-force steady state of the dressed-mode generator (rotating frame, bose
// statistics) on two truncated oscillators, restricted to the zero-charge block.
OracleResult amplifier_oracle(const AmplifierParams& p, int truncation);
// Re-runs at truncation + 4 until the currents move by < rel_tol relative.
OracleResult amplifier_oracle_converged(const AmplifierParams& p, int initial = 6, int max_truncation = 10,
                                        double rel_tol = 1e-6);

}  // namespace qtricycle::engine
