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
#include <limits>

#include "qtricycle/numerics.hpp"
#include "qtricycle/thermo_analysis.hpp"

namespace qtricycle::thermo {

using engine::AmplifierParams;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Drive power of the balanced-rate engine at conductance Gamma.
double balanced_power(const AmplifierParams& p, double Gamma) {
    const auto q = AmplifierParams::symmetric(p.omega_h, p.omega_c, p.epsilon, p.T_h, p.T_c, Gamma, Gamma,
                                              p.statistics);
    return engine::currents_balanced(q).P;
}

}  // namespace

RateOptimum optimize_power_over_rates(const AmplifierParams& p) {
    p.validate();
    const auto g = engine::gains(p);
    const double e = std::abs(p.epsilon);
    RateOptimum out;
    const double gain_scale = occupation(p.omega_c, p.T_c, p.statistics) +
                              occupation(p.omega_h, p.T_h, p.statistics) + 1e-300;
    if (e == 0.0 || p.nu == 0.0 || std::abs(g.G1) <= 1e-14 * gain_scale) {
        out.flat = true;
        out.Gamma_star = kNaN;
        out.second_difference = 0.0;
        return out;
    }
    if (g.G1 < 0.0) throw DomainError("optimize_power_over_rates: negative gain, the device does not produce power");

    out.P_printed = -0.5 * p.nu * e * g.G1;
    out.P_balanced = -0.25 * p.nu * e * g.G1;
    auto output = [&](double Gamma) { return -balanced_power(p, Gamma); };
    const auto m = numerics::maximize(output, 1e-3 * e, 1e3 * e, 64, true);
    if (!m.interior) throw NumericalError("optimize_power_over_rates: maximum on the search boundary");
    out.Gamma_star = m.x;
    out.P_star = -m.value;
    const double h = 1e-3 * m.x;
    out.second_difference = output(m.x + h) - 2.0 * m.value + output(m.x - h);
    return out;
}

MaxPowerEfficiency efficiency_at_max_power(double T_h, double T_c, FixedFrequency fixed, double frequency,
                                           Statistics statistics) {
    if (!(T_h > 0.0) || !(T_c > 0.0) || !(frequency > 0.0))
        throw DomainError("efficiency_at_max_power: temperatures and frequency must be positive");
    if (T_c > T_h) throw DomainError("efficiency_at_max_power: needs T_h >= T_c");
    MaxPowerEfficiency out;
    out.eta_ca = 1.0 - std::sqrt(T_c / T_h);
    if (T_c == T_h) {
        out.eta = 0.0;
        out.ratio = 1.0;
        out.max_omega_over_T = frequency / T_c;
        out.high_temperature = out.max_omega_over_T <= 0.05;
        out.warning = "no temperature gradient: no power at any frequency ratio";
        return out;
    }

    const double eps = 1e-4 * frequency;
    auto params = [&](double ratio) {
        const double wh = fixed == FixedFrequency::omega_c ? frequency / ratio : frequency;
        const double wc = fixed == FixedFrequency::omega_c ? frequency : frequency * ratio;
        return AmplifierParams::symmetric(wh, wc, eps, T_h, T_c, 2.0 * eps, 2.0 * eps, statistics);
    };
    // Power vanishes at ratio 1 (nu = 0) and at the Carnot ratio (zero gain).
    const double lo = T_c / T_h * (1.0 + 1e-9);
    const double hi = 1.0 - 1e-9;
    auto output = [&](double ratio) { return -engine::currents_balanced(params(ratio)).P; };
    const auto m = numerics::maximize(output, lo, hi, 64, false);
    const auto best = params(m.x);
    const auto r = engine::currents_balanced(best);
    out.ratio = m.x;
    out.eta = -r.P / r.J_h;
    out.max_omega_over_T = std::max(best.omega_h / T_h, best.omega_c / T_c);
    out.high_temperature = out.max_omega_over_T <= 0.05;
    if (!out.high_temperature)
        out.warning = "outside the high-temperature regime (max omega/T > 0.05): Curzon-Ahlborn not expected";
    return out;
}

std::vector<TradeoffPoint> efficiency_power_curve(const AmplifierParams& base, CurveControl control,
                                                  const std::vector<double>& grid, bool conductance_tracks_epsilon) {
    const auto rates = engine::dressed_rates(base);
    const double kh = rates.Gamma_h_plus;
    const double kc = rates.Gamma_c_plus;
    const double eta_c = 1.0 - base.T_c / base.T_h;

    std::vector<TradeoffPoint> out;
    out.reserve(grid.size());
    double p_max = 0.0;
    for (double x : grid) {
        const double wh = control == CurveControl::omega_h ? x : base.omega_h;
        const double e = control == CurveControl::epsilon ? x : base.epsilon;
        TradeoffPoint pt;
        if (conductance_tracks_epsilon && e == 0.0) {  // no coupling and no conductance: idle
            pt.control = x;
            pt.eta = kNaN;
            out.push_back(pt);
            continue;
        }
        const double gh = conductance_tracks_epsilon ? 2.0 * std::abs(e) : kh;
        const double gc = conductance_tracks_epsilon ? 2.0 * std::abs(e) : kc;
        const auto q = AmplifierParams::symmetric(wh, base.omega_c, e, base.T_h, base.T_c, gh, gc, base.statistics);
        const auto r = engine::currents(q);
        pt.control = x;
        pt.P = r.P;
        pt.eta = (r.P < 0.0 && r.J_h > 0.0) ? -r.P / r.J_h : kNaN;
        p_max = std::max(p_max, -r.P);
        out.push_back(pt);
    }
    for (auto& pt : out) {
        pt.P_over_Pmax = p_max > 0.0 ? -pt.P / p_max : 0.0;
        pt.eta_over_etac = eta_c > 0.0 ? pt.eta / eta_c : kNaN;
    }
    return out;
}

}  // namespace qtricycle::thermo
