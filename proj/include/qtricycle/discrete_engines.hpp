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

// Few-level engines: the static 3-level amplifier, its dynamical (two-level
// population) version, the 4-level gain condition and the 2-level bound.

#pragma once

#include "qtricycle/tricycle_engine.hpp"

namespace qtricycle::discrete {

struct ThreeLevelStatic {
    double omega_h = 0.0;  // pumped transition 0 -> 2
    double omega_c = 0.0;  // cold transition 0 -> 1
    double T_h = 0.0;
    double T_c = 0.0;

    double nu() const { return omega_h - omega_c; }
    void validate() const;  // positive entries, omega_h >= omega_c
};

// Population inversion of the output transition per unit ground population.
double static_gain(const ThreeLevelStatic& s);

struct OttoCarnot {
    double eta_otto = 0.0;
    double eta_carnot = 0.0;
};
// Throws NumericalError if a non-negative gain comes with eta_otto > eta_carnot.
OttoCarnot otto_and_carnot(const ThreeLevelStatic& s);

struct LambReport {
    CurrentsReport total;
    CurrentsReport upper;  // driven by N_h^+ - N_c^+
    CurrentsReport lower;  // driven by N_h^- - N_c^-
};

// Steady currents of the 3-level amplifier: the tricycle closed form with
// two-level (fermi) populations, split into the two dressed manifolds.
LambReport lamb_steady_currents(const engine::AmplifierParams& p);

double epsilon_crit_low_temperature(double omega_h, double omega_c, double T_h, double T_c);

// Approximate efficiency at maximum power of the saturated engine,
// eta_c - sqrt(T_c / omega_h) sqrt(eta_c).
double saturation_efficiency_estimate(double omega_h, double T_h, double T_c);

struct FourLevelStatic {
    double omega_h = 0.0;   // pump 0 -> 3
    double omega_c1 = 0.0;  // cold relaxation 3 -> 2
    double omega_c2 = 0.0;  // cold relaxation 1 -> 0
    double T_h = 0.0;
    double T_c = 0.0;

    double nu() const { return omega_h - omega_c1 - omega_c2; }
    void validate() const;  // positive entries and nu >= 0
};

struct FourLevelResult {
    double gain = 0.0;
    double eta_otto = 0.0;  // nu / omega_h
    double eta_carnot = 0.0;
    bool balanced = false;  // omega_c1 == omega_c2, where the cold rates balance
};

FourLevelResult four_level_gain(const FourLevelStatic& s);

// A two-level engine needs two pump steps per output quantum, so eta <= 1/2.
constexpr double two_level_bound() { return 0.5; }
// The bound is meaningful only when it does not exceed Carnot.
bool two_level_bound_applicable(double T_h, double T_c);

}  // namespace qtricycle::discrete
