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

// Refrigerators: power-driven tricycle, static limits, absorption (3-level
// and 3-qubit) and noise-driven fridges. Heat currents are positive into the
// device, so J_c > 0 means the cold bath is being cooled. J_w carries the
// power drawn from a work bath or noise source.

#pragma once

#include <array>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "qtricycle/operator_core.hpp"
#include "qtricycle/tricycle_engine.hpp"

namespace qtricycle::fridge {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct FridgeParams {
    double omega_h = 0.0;
    double omega_c = 0.0;
    double epsilon = 0.0;
    double T_h = 0.0;
    double T_c = 0.0;
    double T_w = kInfinity;
    double Gamma_h = 0.0;
    double Gamma_c = 0.0;
    Statistics statistics = Statistics::bose;

    double nu() const { return omega_h - omega_c; }
    // Positive frequencies and temperatures, omega_h >= omega_c, T_h >= T_c, rates >= 0.
    void validate() const;
    // Static gain of the 3-level picture is negative: omega_h / T_h > omega_c / T_c.
    bool cooling_regime() const;
};

// ---------------------------------------------------------- power driven

// Cooling current of the strongly driven tricycle (epsilon > kappa):
// half the sum over manifolds of omega_c^+- Gbar^+- (N_c^+- - N_h^+-).
double power_driven_cooling_current(const FridgeParams& p);
// Same with the per-branch rates of an amplifier parameter set.
double power_driven_cooling_current(const engine::AmplifierParams& p);
// Full report of that limit: J_c, J_h, drive power P > 0 when cooling, COP = J_c / P.
CurrentsReport power_driven_fridge(const FridgeParams& p);

// Otto and Carnot COP of a power-driven fridge.
double otto_cop(double omega_h, double omega_c);
double carnot_cop(double T_h, double T_c);

// ---------------------------------------------------------- static limits

// Lowest cold temperature of the quasi-static 3-level fridge, (omega_c / omega_h) T_h.
double minimum_temperature(double omega_c, double omega_h, double T_h);

struct MinimumTemperatureExample {
    double ratio = 0.0;     // omega_c / omega_h
    double T_c_min = 0.0;   // kelvin
};
// Sodium D line pumped at room temperature, cooled through the ground hyperfine splitting.
MinimumTemperatureExample sodium_minimum_temperature(double T_h_kelvin = 300.0);

namespace si {
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double k_B = 1.380649e-23;             // J / K
inline constexpr double atomic_mass = 1.66053906660e-27;  // kg
}  // namespace si

struct DopplerRecoil {
    double T_doppler = 0.0;
    double T_recoil = 0.0;
};
// hbar = k_B = 1: T_doppler = gamma / 2 and T_recoil = k^2 / (2 M).
DopplerRecoil doppler_recoil_reference(double gamma_linewidth, double k_photon, double mass);
// SI inputs (rad/s, 1/m, kg), temperatures in kelvin.
DopplerRecoil doppler_recoil_si(double gamma_linewidth, double k_photon, double mass);
// Sodium D2 line: gamma = 2 pi 9.795 MHz, lambda = 589.158 nm, M = 22.98976928 u.
DopplerRecoil sodium_doppler_recoil();

// ---------------------------------------------------------- absorption

// Upper bound on J_c / J_w for work-bath temperature T_w (may be infinite).
double absorption_cop_bound(double T_c, double T_h, double T_w);

struct BathSpec {
    double T = 0.0;
    double gamma = 0.0;
    double spectral_exponent = 0.0;  // gamma(omega) = gamma * omega^spectral_exponent
};

struct ThreeLevelAbsorptionParams {
    double omega_h = 0.0;  // level 2 above ground
    double omega_c = 0.0;  // level 1 above ground
    BathSpec hot, cold, work;
};
struct ThreeLevelAbsorptionReport {
    CurrentsReport currents;
    double gain = 0.0;  // e^{-omega_w/T_w} e^{-omega_c/T_c} - e^{-omega_h/T_h}
};
// Rate-equation steady state of the 3-level absorption fridge via operator-core.
ThreeLevelAbsorptionReport three_level_absorption(const ThreeLevelAbsorptionParams& p);

struct ThreeQubitParams {
    double omega_h = 0.0;
    double omega_c = 0.0;
    double nu = 0.0;
    double epsilon = 0.0;
    BathSpec hot, cold, work;
    // Local dissipators acting on each bare qubit. Known to be thermodynamically
    // inconsistent; comparison only.
    bool local_known_inconsistent = false;
    // When set, the work bath is replaced by white noise of this strength on
    // sigma_x of the work qubit: every transition pumped at rate 2 eta both ways.
    std::optional<double> work_noise_eta;

    void validate() const;  // resonance omega_h = omega_c + nu, positive inputs, epsilon >= 0
};

enum class Bath { hot, cold, work };

// Qubit order (hot, cold, work); |1> is the excited state of each qubit.
core::Operator three_qubit_hamiltonian(const ThreeQubitParams& p);
// Levels 1..8 in the order of the standard table, as printed (pair at nu +- eps).
std::array<double, 8> three_qubit_printed_levels(const ThreeQubitParams& p);
// Levels 1..8 from the Hamiltonian (pair at omega_h +- eps).
std::array<double, 8> three_qubit_corrected_levels(const ThreeQubitParams& p);
// Exact eigenvalues of the Hamiltonian matched to the table states 1..8 by overlap.
std::array<double, 8> three_qubit_exact_levels(const ThreeQubitParams& p);

using LevelPair = std::pair<int, int>;  // 1-based table labels, lower label first
// Table-state pairs connected by the bath's coupling operator sigma_x^j.
std::vector<LevelPair> three_qubit_channel_pairs(const ThreeQubitParams& p, Bath bath);
std::vector<LevelPair> printed_cold_pairs();
std::vector<LevelPair> corrected_cold_pairs();

struct ThreeQubitReport {
    CurrentsReport currents;  // efficiency_or_cop = J_c / J_w when cooling
    std::array<double, 8> levels{};
    double min_eigenvalue = 0.0;
    double residual = 0.0;
    double min_level_gap = 0.0;  // smallest spacing between distinct levels
};
// Global secular master equation in the exact eigenbasis (or the local variant
// when flagged). Throws DomainError when two levels lie within 1e-9 of each other.
ThreeQubitReport three_qubit_fridge(const ThreeQubitParams& p);

// ---------------------------------------------------------- noise driven

struct ImpulseDistribution {
    enum class Kind { delta, normal, exponential };
    Kind kind = Kind::delta;
    double xi0 = 0.0;
    double sigma = 0.0;  // normal only
};

struct NoiseSpec {
    enum class Kind { gaussian_white, poisson };
    Kind kind = Kind::gaussian_white;
    double eta = 0.0;     // gaussian strength
    double lambda = 0.0;  // poisson event rate
    ImpulseDistribution impulses;
};

// Gaussian white noise on the swap X = a^dag b + a b^dag:
// J_c = omega_c (2 eta Gbar / (2 eta + Gbar)) (N_c - N_h); J_w is the noise power.
// p.epsilon is ignored; only bose statistics.
CurrentsReport gaussian_noise_cooling(const FridgeParams& p, double eta);
CurrentsReport gaussian_noise_cooling(const FridgeParams& p, const NoiseSpec& noise);

struct NoiseOracleResult {
    CurrentsReport currents;
    int truncation = 0;
    bool converged = false;
    double max_rel_change = 0.0;
    double min_eigenvalue = 0.0;
};
// Operator-core steady state of two damped oscillators with the noise dissipator 2 eta D[X].
NoiseOracleResult gaussian_noise_oracle(const FridgeParams& p, double eta, int truncation);
NoiseOracleResult gaussian_noise_oracle_converged(const FridgeParams& p, double eta, int initial = 6,
                                                  int max_truncation = 10, double rel_tol = 1e-7);
// Same oscillators with a thermal work bath at T_w exchanging omega_h - omega_c
// through b^dag a, scaled so that Gamma_w N_w = 2 eta.
NoiseOracleResult work_bath_oracle(const FridgeParams& p, double eta, double T_w, int truncation);

struct WorkBathLimit {
    CurrentsReport extrapolated;     // Richardson extrapolation in 1/T_w
    std::vector<double> T_w;         // temperatures used
    std::vector<double> J_c;         // cooling current at each
};
WorkBathLimit work_bath_infinite_temperature(const FridgeParams& p, double eta, double T_w_start, int truncation);

struct PoissonShift {
    double epsilon = 0.0;
    double eta = 0.0;
};
// Hamiltonian shift and effective noise strength induced by Poisson impulses.
PoissonShift poisson_noise_params(const ImpulseDistribution& dist, double lambda);
// The same two averages, <2 xi - sin 2 xi> and <cos 2 xi>, by quadrature over the
// impulse density. Differs from the closed form only for the exponential shift.
PoissonShift poisson_noise_params_quadrature(const ImpulseDistribution& dist, double lambda);
// Largest event rate keeping omega_h omega_c > epsilon^2 (infinite if the shift vanishes).
double poisson_lambda_max(const ImpulseDistribution& dist, double omega_h, double omega_c);

struct DressedPair {
    double Omega_plus = 0.0;
    double Omega_minus = 0.0;
    double theta = 0.0;
};
// Throws DomainError unless omega_h omega_c > epsilon^2.
DressedPair dressed_pair(double omega_h, double omega_c, double epsilon);

struct DressedNoiseReport {
    CurrentsReport currents;  // efficiency_or_cop = J_c / J_w when cooling
    DressedPair pair;
    double epsilon = 0.0;
    double eta = 0.0;
    double cop_dressed_otto = 0.0;  // Omega_- / (Omega_+ - Omega_-)
};
// Dressed two-mode fridge with noise -eta [W,[W,.]], W = sin 2theta Z + cos 2theta X.
DressedNoiseReport dressed_noise_cooling(const FridgeParams& p, double epsilon, double eta);
// Poisson-driven fridge; p.epsilon is ignored, the shift comes from the impulses.
DressedNoiseReport poisson_noise_cooling(const FridgeParams& p, const NoiseSpec& noise);
NoiseOracleResult dressed_noise_oracle(const FridgeParams& p, double epsilon, double eta, int truncation);

// ---------------------------------------------------------- low temperature

// Optimised cooling current as T_c -> 0: omega_c gamma_c e^{-omega_c / T_c}.
double universal_low_T_current(double omega_c, double gamma_c, double T_c);

}  // namespace qtricycle::fridge
