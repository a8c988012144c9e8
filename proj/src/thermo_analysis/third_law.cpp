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

// Third-law scaling. The cold current is optimised over omega_c at each T_c;
// the scan runs in x = omega_c / T_c, where the optimum is scale free.

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>
#include <gsl/gsl_fit.h>

#include "qtricycle/numerics.hpp"
#include "qtricycle/thermo_analysis.hpp"

namespace qtricycle::thermo {

namespace {

constexpr double kHotRatio = 40.0;    // omega_h / T_h of the power-driven model
constexpr double kColdWeight = 1e-3;  // keeps Gamma_c << Gamma_h so the cold bath limits the current
constexpr double kFitTolerance = 0.05;

struct Optimum {
    double omega;
    double current;
};

double cooling_current(const ColdBathModel& bath, FridgeModel fridge, double omega, double T_c) {
    const double gamma_c = std::pow(omega, bath.alpha());
    if (fridge == FridgeModel::universal) return fridge::universal_low_T_current(omega, gamma_c, T_c);
    fridge::FridgeParams p;
    p.T_h = 1.0;
    p.omega_h = kHotRatio * p.T_h;
    p.omega_c = omega;
    p.T_c = T_c;
    p.Gamma_h = 1.0;
    p.Gamma_c = kColdWeight * gamma_c;
    return fridge::power_driven_cooling_current(p);
}

Optimum optimize(const ColdBathModel& bath, FridgeModel fridge, double T_c) {
    // The power-driven fridge stops cooling at omega_c / T_c = omega_h / T_h.
    const double x_hi = fridge == FridgeModel::universal ? 200.0 : kHotRatio * (1.0 - 1e-9);
    // Scale out T_c^(1 + alpha) so the objective stays O(1) at every temperature.
    const double scale = std::pow(T_c, 1.0 + bath.alpha());
    auto f = [&](double x) { return cooling_current(bath, fridge, x * T_c, T_c) / scale; };
    const auto m = numerics::maximize(f, 1e-3, x_hi, 96, true);
    if (!m.interior) throw NumericalError("cold current optimum on the omega_c search boundary");
    if (!(m.value > 0.0)) throw DomainError("no cooling at this temperature");
    return {m.x * T_c, m.value * scale};
}

double ci(const ScalingFit& f) { return std::max(2.0 * f.stderr_exponent, kFitTolerance); }

}  // namespace

void ColdBathModel::validate() const {
    if (dimension < 1) throw DomainError("cold bath dimension must be >= 1");
    if (!std::isfinite(kappa)) throw DomainError("form-factor exponent must be finite");
    if (!(eta_cv > 0.0) || !std::isfinite(eta_cv)) throw DomainError("heat-capacity exponent must be positive");
    if (!(alpha() > -1.0)) throw DomainError("cold current needs d + kappa > 0");
}

std::string to_string(ScalingClass c) {
    switch (c) {
        case ScalingClass::nernst_pass: return "nernst_pass";
        case ScalingClass::nernst_marginal: return "nernst_marginal";
        case ScalingClass::unattainable_pass: return "unattainable_pass";
        case ScalingClass::violation: return "violation";
        default: return "withheld";
    }
}

ScalingFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3) throw DomainError("power-law fit needs >= 3 paired points");
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw DomainError("power-law fit needs positive data");
        lx[k] = std::log(x[k]);
        ly[k] = std::log(y[k]);
    }
    double c0, c1, cov00, cov01, cov11, sumsq;
    gsl_fit_linear(lx.data(), 1, ly.data(), 1, lx.size(), &c0, &c1, &cov00, &cov01, &cov11, &sumsq);
    double mean = 0.0;
    for (double v : ly) mean += v;
    mean /= static_cast<double>(ly.size());
    double total = 0.0;
    for (double v : ly) total += (v - mean) * (v - mean);

    ScalingFit f;
    f.exponent = c1;
    f.prefactor = std::exp(c0);
    f.stderr_exponent = std::sqrt(std::max(cov11, 0.0));
    f.r_squared = total > 0.0 ? std::clamp(1.0 - sumsq / total, 0.0, 1.0) : 1.0;
    return f;
}

double optimized_cooling_current(const ColdBathModel& bath, FridgeModel fridge, double T_c) {
    bath.validate();
    if (!(T_c > 0.0)) throw DomainError("T_c must be positive");
    return optimize(bath, fridge, T_c).current;
}

CurrentScaling third_law_current_scaling(const ColdBathModel& bath, FridgeModel fridge, double T_lo, double T_hi,
                                         int points) {
    bath.validate();
    if (!(T_lo > 0.0) || !(T_hi >= 100.0 * T_lo)) throw DomainError("scaling sweep must span >= 2 decades");
    if (points < 8) throw DomainError("scaling sweep needs >= 8 points");
    if (fridge == FridgeModel::power_driven && T_hi >= 1.0)
        throw DomainError("power-driven sweep needs T_c below T_h = 1");

    CurrentScaling out;
    out.T_c = numerics::grid(T_lo, T_hi, points, true);
    for (double T : out.T_c) {
        const auto o = optimize(bath, fridge, T);
        out.J_c.push_back(o.current);
        out.omega_star.push_back(o.omega);
    }
    out.fit = fit_power_law(out.T_c, out.J_c);
    if (out.fit.r_squared < 0.999) return out;

    const double alpha = out.fit.exponent - 1.0;
    const double zeta = 1.0 + alpha - bath.eta_cv;
    const double c = ci(out.fit);
    if (alpha < -c || zeta < 1.0 - c) out.fit.classification = ScalingClass::violation;
    else if (std::abs(alpha) <= c) out.fit.classification = ScalingClass::nernst_marginal;
    else out.fit.classification = ScalingClass::nernst_pass;
    return out;
}

CoolingTrajectory cooling_trajectory(const ColdBathModel& bath, FridgeModel fridge, double T0, double t_max) {
    namespace odeint = boost::numeric::odeint;
    bath.validate();
    if (!(T0 > 0.0) || !(t_max > 0.0)) throw DomainError("trajectory needs T0 > 0 and t_max > 0");

    // c_V dT/dt = -J_c with c_V = T^eta_cv, integrated in u = ln T.
    auto rate = [&](double T) { return optimized_cooling_current(bath, fridge, T) / std::pow(T, bath.eta_cv); };
    using State = std::array<double, 1>;
    auto rhs = [&](const State& u, State& du, double) { du[0] = -rate(std::exp(u[0])) / std::exp(u[0]); };

    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-10, 1e-10);
    CoolingTrajectory out;
    out.zeta_expected = bath.zeta();
    const double u_floor = std::log(1e-12 * T0);
    const double dt_max = t_max / 1000.0;
    const double dt_min = 1e-14 * t_max;

    State u{std::log(T0)};
    double t = 0.0;
    double dt = dt_max / 100.0;
    out.t.push_back(t);
    out.T.push_back(T0);
    std::size_t steps = 0;
    while (t < t_max) {
        dt = std::min({dt, dt_max, t_max - t});
        if (dt < dt_min || ++steps > 2'000'000)
            throw NumericalError("cooling trajectory: step-size failure (stiff or singular approach)");
        const State before = u;
        const double t_before = t;
        if (stepper.try_step(rhs, u, t, dt) != odeint::success) continue;
        if (!std::isfinite(u[0]) || u[0] < u_floor) {
            // Finite-time approach to zero: retry the step shorter until the floor is met.
            if (!std::isfinite(u[0]) || u[0] < u_floor - 1.0) {
                dt = 0.25 * (t - t_before);
                u = before;
                t = t_before;
                continue;
            }
            out.t.push_back(t);
            out.T.push_back(std::exp(u[0]));
            out.reached_floor = true;
            break;
        }
        out.t.push_back(t);
        out.T.push_back(std::exp(u[0]));
    }

    // Fit window: lowest decade reached, after the first 10% of elapsed time.
    const double t_end = out.t.back();
    const double T_min = *std::min_element(out.T.begin(), out.T.end());
    std::vector<double> Ts, rates;
    for (std::size_t k = 0; k < out.t.size(); ++k) {
        if (out.t[k] < 0.1 * t_end || out.T[k] > 10.0 * T_min) continue;
        Ts.push_back(out.T[k]);
        rates.push_back(rate(out.T[k]));
    }
    if (Ts.size() < 8) {
        // Too few accepted steps in the window; resample the same span on a log grid.
        Ts = numerics::grid(T_min, 10.0 * T_min, 12, true);
        rates.clear();
        for (double T : Ts) rates.push_back(rate(T));
    }
    out.zeta_fit = fit_power_law(Ts, rates);
    out.zeta_consistent = std::abs(out.zeta_fit.exponent - out.zeta_expected) <= kFitTolerance;
    if (out.zeta_fit.r_squared >= 0.999)
        out.zeta_fit.classification = out.zeta_fit.exponent >= 1.0 - ci(out.zeta_fit) ? ScalingClass::unattainable_pass
                                                                                      : ScalingClass::violation;
    return out;
}

}  // namespace qtricycle::thermo
