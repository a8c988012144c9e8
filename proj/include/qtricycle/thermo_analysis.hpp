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

// Cross-model thermodynamics: law audits of steady-state reports, power and
// efficiency optimisation of the tricycle engine, and third-law scaling.

#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qtricycle/refrigerators.hpp"
#include "qtricycle/tricycle_engine.hpp"

namespace qtricycle::thermo {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// ------------------------------------------------------------------ audit

struct AuditTolerance {
    double residual_rel = 1e-10;  // |P + J_h + J_c + J_w| over the largest current
    double entropy = 1e-12;       // scaled by max(1, sum |J_i| / T_i)
    double margin = 1e-9;         // slack on efficiency / COP bounds
};

struct LawAudit {
    double first_law_residual = 0.0;  // relative
    double entropy_rate = 0.0;
    // bound - value for the applicable efficiency or COP; NaN when the report
    // is neither an engine (P < 0) nor a cooler (J_c > 0).
    double carnot_margin = std::numeric_limits<double>::quiet_NaN();
    double otto_margin = std::numeric_limits<double>::quiet_NaN();
    bool pass = true;
    std::string reason;  // empty on pass; "first-law", "second-law", "carnot" or "otto" otherwise
};

// Audits a report against its bath temperatures. An infinite T_w contributes no
// entropy. otto_bound, when given, is the Otto efficiency (engines) or COP (coolers).
LawAudit audit(const CurrentsReport& r, double T_h, double T_c, double T_w = kInfinity,
               std::optional<double> otto_bound = std::nullopt, const AuditTolerance& tol = {});

// --------------------------------------------------------------- optimise

struct RateOptimum {
    double Gamma_star = 0.0;
    double P_star = 0.0;             // drive power at Gamma_star (negative for an engine)
    double P_printed = 0.0;          // -nu |eps| G1 / 2, the quoted optimum
    double P_balanced = 0.0;         // -nu |eps| G1 / 4, the balanced-rate power at Gamma = 2 eps
    double second_difference = 0.0;  // of the output power around Gamma_star; negative at a maximum
    bool flat = false;               // zero gain: output power vanishes for every Gamma
};
// Maximises the output power over balanced conductances kappa_h = kappa_c = Gamma.
// Only frequencies, temperatures, epsilon and statistics of p are used.
RateOptimum optimize_power_over_rates(const engine::AmplifierParams& p);

enum class FixedFrequency { omega_c, omega_h };

struct MaxPowerEfficiency {
    double eta = 0.0;
    double ratio = 1.0;            // omega_c / omega_h at the maximiser
    double eta_ca = 0.0;           // 1 - sqrt(T_c / T_h)
    double max_omega_over_T = 0.0;  // max(omega_h / T_h, omega_c / T_c) at the maximiser
    bool high_temperature = true;  // max_omega_over_T <= 0.05
    std::string warning;
};
// Efficiency at maximum power over the frequency ratio with Gamma = 2 eps and
// eps = 1e-4 of the fixed frequency.
MaxPowerEfficiency efficiency_at_max_power(double T_h, double T_c, FixedFrequency fixed, double frequency,
                                           Statistics statistics = Statistics::bose);

enum class CurveControl { epsilon, omega_h };

struct TradeoffPoint {
    double control = 0.0;
    double P = 0.0;
    double eta = 0.0;  // -P / J_h, NaN where undefined
    double P_over_Pmax = 0.0;
    double eta_over_etac = 0.0;
};
// Normalised power / efficiency trade-off along a grid of the control parameter;
// the other parameters and the conductances come from base. With
// conductance_tracks_epsilon both conductances are set to 2 eps at every point.
std::vector<TradeoffPoint> efficiency_power_curve(const engine::AmplifierParams& base, CurveControl control,
                                                  const std::vector<double>& grid,
                                                  bool conductance_tracks_epsilon = false);

// -------------------------------------------------------------- third law

struct ColdBathModel {
    int dimension = 3;
    double kappa = 1.0;    // form-factor exponent, |g(omega)|^2 ~ omega^kappa
    double eta_cv = 3.0;   // c_V ~ T^eta_cv

    double alpha() const { return dimension + kappa - 1.0; }
    double zeta() const { return 1.0 + alpha() - eta_cv; }
    void validate() const;
};

// Reference value for degenerate Bose and Fermi gases under a collision model.
inline constexpr double kDegenerateGasZeta = 1.5;

enum class FridgeModel {
    universal,     // omega_c gamma_c(omega_c) e^{-omega_c / T_c}
    power_driven,  // strong-drive tricycle, omega_h / T_h = 40, Gamma_h = 1, Gamma_c = 1e-3 gamma_c
};

enum class ScalingClass { nernst_pass, nernst_marginal, unattainable_pass, violation, withheld };
std::string to_string(ScalingClass c);

struct ScalingFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double stderr_exponent = 0.0;
    double r_squared = 0.0;
    ScalingClass classification = ScalingClass::withheld;
};

// Least-squares line through (log x, log y); classification left as withheld.
ScalingFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

struct CurrentScaling {
    ScalingFit fit;  // J_c ~ T_c^exponent; classified on alpha = exponent - 1
    std::vector<double> T_c;
    std::vector<double> J_c;
    std::vector<double> omega_star;  // optimal omega_c at each T_c
};
// Cold current maximised over omega_c at each T_c on a log grid over [T_lo, T_hi]
// with gamma_c(omega) = omega^(d + kappa - 1).
CurrentScaling third_law_current_scaling(const ColdBathModel& bath, FridgeModel fridge, double T_lo = 1e-3,
                                         double T_hi = 1e-1, int points = 12);

// Optimised cold current at one temperature (the integrand of the trajectory).
double optimized_cooling_current(const ColdBathModel& bath, FridgeModel fridge, double T_c);

struct CoolingTrajectory {
    std::vector<double> t;
    std::vector<double> T;
    ScalingFit zeta_fit;  // dT/dt ~ -T^zeta near the lowest temperatures reached
    double zeta_expected = 0.0;
    bool zeta_consistent = false;  // |zeta_fit - zeta_expected| <= 0.05
    bool reached_floor = false;    // T fell below 1e-12 T0 before t_max
};
// Integrates c_V(T) dT/dt = -J_c(T) from T0 with c_V = T^eta_cv (Dormand-Prince on ln T).
CoolingTrajectory cooling_trajectory(const ColdBathModel& bath, FridgeModel fridge, double T0, double t_max);

}  // namespace qtricycle::thermo
