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

#include "qtricycle/tricycle_engine.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "qtricycle/numerics.hpp"

namespace qtricycle {

std::string to_string(Statistics s) { return s == Statistics::bose ? "bose" : "fermi"; }

Statistics statistics_from_string(const std::string& s) {
    if (s == "bose") return Statistics::bose;
    if (s == "fermi") return Statistics::fermi;
    throw DomainError("unknown statistics '" + s + "' (expected bose or fermi)");
}

double occupation(double omega, double T, Statistics statistics) {
    if (!(omega > 0.0) || !(T > 0.0)) throw DomainError("occupation: omega and T must be positive");
    const double x = omega / T;
    if (statistics == Statistics::bose) return 1.0 / std::expm1(x);
    return 1.0 / (std::exp(x) + 1.0);
}

}  // namespace qtricycle

namespace qtricycle::engine {

namespace {

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

struct Kappas {
    double h;
    double c;
};

Kappas symmetric_kappas(const DressedRates& r) {
    if (!close_rel(r.Gamma_h_plus, r.Gamma_h_minus, 1e-12) || !close_rel(r.Gamma_c_plus, r.Gamma_c_minus, 1e-12))
        throw DomainError("closed form requires Gamma^+ = Gamma^- for each bath");
    return {r.Gamma_h_plus, r.Gamma_c_plus};
}

void add(LinearPart& acc, const LinearPart& part) {
    for (int i = 0; i < 4; ++i) {
        acc.s[i] += part.s[i];
        for (int j = 0; j < 4; ++j) acc.M[i][j] += part.M[i][j];
    }
}

std::array<double, 4> rate_of_change(const LinearPart& part, const SU2State& v) {
    const std::array<double, 4> x{v.W, v.X, v.Y, v.Z};
    std::array<double, 4> out = part.s;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i] += part.M[i][j] * x[j];
    return out;
}

// Energy flow into the device carried by one part: d<H_I>/dt restricted to it.
double energy_flow(const AmplifierParams& p, const LinearPart& part, const SU2State& v) {
    const auto d = rate_of_change(part, v);
    return 0.5 * (p.omega_h + p.omega_c) * d[0] + 0.5 * p.nu * d[1] + p.epsilon * d[3];
}

enum Idx { W = 0, X = 1, Y = 2, Z = 3 };

}  // namespace

// ------------------------------------------------------------- parameters

AmplifierParams AmplifierParams::symmetric(double omega_h, double omega_c, double epsilon, double T_h,
                                           double T_c, double kappa_h, double kappa_c, Statistics statistics) {
    AmplifierParams p;
    p.omega_h = omega_h;
    p.omega_c = omega_c;
    p.nu = omega_h - omega_c;
    p.epsilon = epsilon;
    p.T_h = T_h;
    p.T_c = T_c;
    p.statistics = statistics;
    const double e = std::abs(epsilon);
    if (omega_c - e <= 0.0 || T_h <= 0.0 || T_c <= 0.0)
        throw DomainError("AmplifierParams: dressed frequencies and temperatures must be positive");
    p.gamma_h_plus = kappa_h / transport_coefficient(1.0, omega_h + e, T_h, statistics);
    p.gamma_h_minus = kappa_h / transport_coefficient(1.0, omega_h - e, T_h, statistics);
    p.gamma_c_plus = kappa_c / transport_coefficient(1.0, omega_c + e, T_c, statistics);
    p.gamma_c_minus = kappa_c / transport_coefficient(1.0, omega_c - e, T_c, statistics);
    if (epsilon < 0.0) {  // omega^+ = omega + epsilon is the smaller one
        std::swap(p.gamma_h_plus, p.gamma_h_minus);
        std::swap(p.gamma_c_plus, p.gamma_c_minus);
    }
    p.validate();
    return p;
}

void AmplifierParams::validate() const {
    if (!(omega_h > 0.0) || !(omega_c > 0.0)) throw DomainError("AmplifierParams: frequencies must be positive");
    if (omega_h < omega_c) throw DomainError("AmplifierParams: omega_h must be >= omega_c");
    if (!(T_h > 0.0) || !(T_c > 0.0)) throw DomainError("AmplifierParams: temperatures must be positive");
    if (!std::isfinite(epsilon)) throw DomainError("AmplifierParams: epsilon must be finite");
    if (omega_c - std::abs(epsilon) <= 0.0)
        throw DomainError("AmplifierParams: dressed frequency omega_c - |epsilon| must be positive");
    for (double g : {gamma_h_plus, gamma_h_minus, gamma_c_plus, gamma_c_minus})
        if (!(g >= 0.0) || !std::isfinite(g)) throw DomainError("AmplifierParams: rates must be finite and >= 0");
    if (std::abs(nu - (omega_h - omega_c)) > 1e-12 * omega_h)
        throw DomainError("AmplifierParams: off-resonance drive (nu != omega_h - omega_c) is not supported");
}

AmplifierParams AmplifierParams::with_epsilon(double eps) const {
    const DressedRates r = dressed_rates(*this);
    AmplifierParams q = *this;
    q.epsilon = eps;
    if (omega_c - std::abs(eps) <= 0.0)
        throw DomainError("AmplifierParams: dressed frequency omega_c - |epsilon| must be positive");
    q.gamma_h_plus = r.Gamma_h_plus / transport_coefficient(1.0, omega_h + eps, T_h, statistics);
    q.gamma_h_minus = r.Gamma_h_minus / transport_coefficient(1.0, omega_h - eps, T_h, statistics);
    q.gamma_c_plus = r.Gamma_c_plus / transport_coefficient(1.0, omega_c + eps, T_c, statistics);
    q.gamma_c_minus = r.Gamma_c_minus / transport_coefficient(1.0, omega_c - eps, T_c, statistics);
    return q;
}

double transport_coefficient(double gamma, double omega, double T, Statistics statistics) {
    if (!(omega > 0.0) || !(T > 0.0)) throw DomainError("transport_coefficient: omega and T must be positive");
    const double x = omega / T;
    if (statistics == Statistics::bose) return -gamma * std::expm1(-x);
    return gamma * (1.0 + std::exp(-x));
}

DressedRates dressed_rates(const AmplifierParams& p) {
    p.validate();
    const double e = p.epsilon;
    DressedRates r;
    r.N_h_plus = occupation(p.omega_h + e, p.T_h, p.statistics);
    r.N_h_minus = occupation(p.omega_h - e, p.T_h, p.statistics);
    r.N_c_plus = occupation(p.omega_c + e, p.T_c, p.statistics);
    r.N_c_minus = occupation(p.omega_c - e, p.T_c, p.statistics);
    r.Gamma_h_plus = transport_coefficient(p.gamma_h_plus, p.omega_h + e, p.T_h, p.statistics);
    r.Gamma_h_minus = transport_coefficient(p.gamma_h_minus, p.omega_h - e, p.T_h, p.statistics);
    r.Gamma_c_plus = transport_coefficient(p.gamma_c_plus, p.omega_c + e, p.T_c, p.statistics);
    r.Gamma_c_minus = transport_coefficient(p.gamma_c_minus, p.omega_c - e, p.T_c, p.statistics);
    r.Gamma_h = r.Gamma_h_plus + r.Gamma_h_minus;
    r.Gamma_c = r.Gamma_c_plus + r.Gamma_c_minus;
    r.Gamma_plus = r.Gamma_h_plus + r.Gamma_c_plus;
    r.Gamma_minus = r.Gamma_h_minus + r.Gamma_c_minus;
    r.Gamma_T = r.Gamma_h + r.Gamma_c;
    return r;
}

Gains gains(const AmplifierParams& p) {
    const DressedRates r = dressed_rates(p);
    return {(r.N_h_plus + r.N_h_minus) - (r.N_c_plus + r.N_c_minus),
            (r.N_h_plus - r.N_h_minus) - (r.N_c_plus - r.N_c_minus)};
}

// -------------------------------------------------------- SU(2) equations

LinearPart su2_hot_part(const DressedRates& r) {
    LinearPart h;
    const double g = r.Gamma_h;
    const double dg = r.Gamma_h_plus - r.Gamma_h_minus;
    const double src = 0.5 * (r.Gamma_h_plus * r.N_h_plus + r.Gamma_h_minus * r.N_h_minus);
    const double src_z = 0.5 * (r.Gamma_h_plus * r.N_h_plus - r.Gamma_h_minus * r.N_h_minus);
    h.M[W][W] = -0.25 * g;
    h.M[W][Z] = -0.25 * dg;
    h.M[W][X] = -0.25 * g;
    h.s[W] = src;
    h.M[X][X] = -0.25 * g;
    h.M[X][W] = -0.25 * g;
    h.s[X] = src;
    h.M[Y][Y] = -0.25 * g;
    h.M[Z][Z] = -0.25 * g;
    h.M[Z][W] = -0.25 * dg;
    h.s[Z] = src_z;
    return h;
}

LinearPart su2_cold_part(const DressedRates& r) {
    LinearPart c;
    const double g = r.Gamma_c;
    const double dg = r.Gamma_c_plus - r.Gamma_c_minus;
    const double src = 0.5 * (r.Gamma_c_plus * r.N_c_plus + r.Gamma_c_minus * r.N_c_minus);
    const double src_z = 0.5 * (r.Gamma_c_plus * r.N_c_plus - r.Gamma_c_minus * r.N_c_minus);
    c.M[W][W] = -0.25 * g;
    c.M[W][Z] = -0.25 * dg;
    c.M[W][X] = 0.25 * g;
    c.s[W] = src;
    c.M[X][X] = -0.25 * g;
    c.M[X][W] = 0.25 * g;
    c.s[X] = -src;
    c.M[Y][Y] = -0.25 * g;
    c.M[Z][Z] = -0.25 * g;
    c.M[Z][W] = -0.25 * dg;
    c.s[Z] = src_z;
    return c;
}

LinearPart su2_coherent_part(double epsilon) {
    LinearPart k;
    k.M[X][Y] = 2.0 * epsilon;
    k.M[Y][X] = -2.0 * epsilon;
    return k;
}

LinearPart su2_dephasing_part(double nu, double epsilon, double dephasing_strength) {
    // -g [H', [H', .]] with H' = (nu/2) X + eps Z acts on (X, Y, Z) as 4g (h h^T - |h|^2).
    LinearPart d;
    const double hx = 0.5 * nu;
    const double hz = epsilon;
    const double h2 = hx * hx + hz * hz;
    const double g4 = 4.0 * dephasing_strength;
    d.M[X][X] = g4 * (hx * hx - h2);
    d.M[X][Z] = g4 * hx * hz;
    d.M[Z][X] = g4 * hx * hz;
    d.M[Z][Z] = g4 * (hz * hz - h2);
    d.M[Y][Y] = -g4 * h2;
    return d;
}

namespace {

SU2State solve_linear(const LinearPart& total) {
    Eigen::Matrix4d m;
    Eigen::Vector4d rhs;
    for (int i = 0; i < 4; ++i) {
        rhs(i) = -total.s[i];
        for (int j = 0; j < 4; ++j) m(i, j) = total.M[i][j];
    }
    Eigen::FullPivLU<Eigen::Matrix4d> lu(m);
    if (!lu.isInvertible() || std::abs(lu.determinant()) == 0.0)
        throw NumericalError("su2_steady_state: singular linear system (all rates zero?)");
    const Eigen::Vector4d v = lu.solve(rhs);
    return {v(0), v(1), v(2), v(3)};
}

LinearPart full_system(const AmplifierParams& p, const DressedRates& r, double dephasing_strength) {
    LinearPart total;
    add(total, su2_hot_part(r));
    add(total, su2_cold_part(r));
    add(total, su2_coherent_part(p.epsilon));
    if (dephasing_strength != 0.0) add(total, su2_dephasing_part(p.nu, p.epsilon, dephasing_strength));
    return total;
}

}  // namespace

SU2State su2_steady_state(const AmplifierParams& p, Su2Method method) {
    const DressedRates r = dressed_rates(p);
    const bool symmetric = close_rel(r.Gamma_h_plus, r.Gamma_h_minus, 1e-12) &&
                           close_rel(r.Gamma_c_plus, r.Gamma_c_minus, 1e-12);
    if (method == Su2Method::linear_solve || (method == Su2Method::automatic && !symmetric))
        return solve_linear(full_system(p, r, 0.0));

    const Kappas k = symmetric_kappas(r);
    const double e = p.epsilon;
    const double d = 4.0 * e * e + k.h * k.c;
    if (!(d > 0.0) || !(k.h + k.c > 0.0)) throw NumericalError("su2_steady_state: singular linear system (all rates zero?)");
    const double g1 = (r.N_h_plus + r.N_h_minus) - (r.N_c_plus + r.N_c_minus);
    SU2State s;
    s.X = k.h * k.c * g1 / (2.0 * d);
    s.Y = -2.0 * e * g1 / d * (k.h * k.c / (k.h + k.c));
    s.Z = ((r.N_h_plus - r.N_h_minus) * k.h + (r.N_c_plus - r.N_c_minus) * k.c) / (k.h + k.c);
    s.W = w_closed_form(p, e);
    return s;
}

double w_closed_form(const AmplifierParams& p, double lambda) {
    const DressedRates r = dressed_rates(p);
    const Kappas k = symmetric_kappas(r);
    const double e = p.epsilon;
    const double d = 4.0 * e * e + k.h * k.c;
    const double nh = r.N_h_plus + r.N_h_minus;
    const double nc = r.N_c_plus + r.N_c_minus;
    return (nh + nc) * k.h * k.c / (2.0 * d) + 4.0 * lambda * lambda * (nh * k.h + nc * k.c) / (d * (k.h + k.c));
}

// ----------------------------------------------------------------- currents

void finalize_report(CurrentsReport& r, double T_h, double T_c) {
    r.entropy_rate = -r.J_h / T_h - r.J_c / T_c;
    r.first_law_residual = r.P + r.J_h + r.J_c + r.J_w;
    if (r.P < 0.0 && r.J_h > 0.0)
        r.efficiency_or_cop = -r.P / r.J_h;
    else if (r.P > 0.0 && r.J_c > 0.0)
        r.efficiency_or_cop = r.J_c / r.P;
    else
        r.efficiency_or_cop = std::numeric_limits<double>::quiet_NaN();
}

CurrentsReport currents(const AmplifierParams& p) {
    const DressedRates r = dressed_rates(p);
    const Kappas k = symmetric_kappas(r);
    const Gains g{(r.N_h_plus + r.N_h_minus) - (r.N_c_plus + r.N_c_minus),
                  (r.N_h_plus - r.N_h_minus) - (r.N_c_plus - r.N_c_minus)};
    const double e = p.epsilon;
    const double kk = k.h * k.c / (k.h + k.c);
    const double d = 4.0 * e * e + k.h * k.c;
    CurrentsReport out;
    out.P = -2.0 * p.nu * e * e * g.G1 / d * kk;
    out.J_h = (0.5 * e * g.G2 + 2.0 * p.omega_h * e * e * g.G1 / d) * kk;
    out.J_c = -(0.5 * e * g.G2 + 2.0 * p.omega_c * e * e * g.G1 / d) * kk;
    finalize_report(out, p.T_h, p.T_c);
    return out;
}

CurrentsReport currents_strong_drive(const AmplifierParams& p) {
    const DressedRates r = dressed_rates(p);
    const Kappas k = symmetric_kappas(r);
    const Gains g = gains(p);
    const double kk = k.h * k.c / (k.h + k.c);
    CurrentsReport out;
    out.P = -0.5 * p.nu * g.G1 * kk;
    out.J_h = 0.5 * (p.epsilon * g.G2 + p.omega_h * g.G1) * kk;
    out.J_c = -0.5 * (p.epsilon * g.G2 + p.omega_c * g.G1) * kk;
    finalize_report(out, p.T_h, p.T_c);
    return out;
}

CurrentsReport currents_balanced(const AmplifierParams& p) {
    const DressedRates r = dressed_rates(p);
    const Kappas k = symmetric_kappas(r);
    if (!close_rel(k.h, k.c, 1e-12)) throw DomainError("currents_balanced: requires kappa_h = kappa_c");
    const double G = k.h;
    const Gains g = gains(p);
    const double e = p.epsilon;
    const double d = 4.0 * e * e + G * G;
    CurrentsReport out;
    out.P = -p.nu * e * e * G * g.G1 / d;
    out.J_h = e * G * g.G2 / 4.0 + p.omega_h * e * e * G * g.G1 / d;
    out.J_c = -e * G * g.G2 / 4.0 - p.omega_c * e * e * G * g.G1 / d;
    finalize_report(out, p.T_h, p.T_c);
    return out;
}

CurrentsReport currents_from_linear_system(const AmplifierParams& p, double dephasing_strength) {
    if (!(dephasing_strength >= 0.0)) throw DomainError("dephasing strength must be >= 0");
    const DressedRates r = dressed_rates(p);
    const SU2State v = solve_linear(full_system(p, r, dephasing_strength));
    CurrentsReport out;
    out.J_h = energy_flow(p, su2_hot_part(r), v);
    out.J_c = energy_flow(p, su2_cold_part(r), v);
    out.P = energy_flow(p, su2_coherent_part(p.epsilon), v);
    finalize_report(out, p.T_h, p.T_c);
    return out;
}

CurrentsReport dephasing_power_degradation(const AmplifierParams& p, double dephasing_strength) {
    return currents_from_linear_system(p, dephasing_strength);
}

// --------------------------------------------------------------- efficiency

double efficiency(const AmplifierParams& p) {
    const DressedRates r = dressed_rates(p);
    const Kappas k = symmetric_kappas(r);
    const Gains g = gains(p);
    if (g.G1 == 0.0) throw DomainError("efficiency: zero gain G1, efficiency undefined");
    const double e = std::abs(p.epsilon);
    return p.nu / (p.omega_h + (4.0 * e * e + k.h * k.c) * g.G2 / (4.0 * e * g.G1));
}

double efficiency_printed(const AmplifierParams& p) {
    const DressedRates r = dressed_rates(p);
    const Kappas k = symmetric_kappas(r);
    const Gains g = gains(p);
    if (g.G1 == 0.0) throw DomainError("efficiency: zero gain G1, efficiency undefined");
    const double e = std::abs(p.epsilon);
    return p.nu / (p.omega_h + (k.h * k.c + e * e) * g.G2 / (4.0 * e * g.G1));
}

double efficiency_small_coupling(double omega_h, double omega_c, double T_h, double T_c, double Gamma) {
    if (!(omega_h > 0.0) || !(omega_c > 0.0) || !(T_h > 0.0) || !(T_c > 0.0))
        throw DomainError("efficiency_small_coupling: frequencies and temperatures must be positive");
    const double xh = omega_h / T_h;
    const double xc = omega_c / T_c;
    const double num = Gamma * Gamma * (T_h * (1.0 - std::cosh(xh)) - T_c * (1.0 - std::cosh(xc)));
    const double den = 4.0 * T_h * T_c * (std::sinh(xh) - std::sinh(xc) + std::sinh(xc - xh));
    if (den == 0.0) throw DomainError("efficiency_small_coupling: zero gain, efficiency undefined");
    return (omega_h - omega_c) / (omega_h + num / den);
}

double epsilon_crit(const AmplifierParams& p) {
    AmplifierParams q = p;
    q.epsilon = 0.0;
    q.validate();
    auto g1 = [&](double e) {
        return (occupation(q.omega_h + e, q.T_h, q.statistics) + occupation(q.omega_h - e, q.T_h, q.statistics)) -
               (occupation(q.omega_c + e, q.T_c, q.statistics) + occupation(q.omega_c - e, q.T_c, q.statistics));
    };
    const double lo = std::min(1e-6, 1e-6 * q.omega_c);
    if (!(g1(lo) > 0.0)) throw DomainError("epsilon_crit: not in the engine regime at small coupling (G1 <= 0)");
    const double cap = q.omega_c * (1.0 - 1e-9);
    double hi = 0.5 * q.omega_c;
    while (true) {
        if (auto root = numerics::first_root(g1, lo, hi, 400)) return *root;
        if (hi >= cap) break;
        hi = std::min(2.0 * hi, cap);
    }
    throw NumericalError("epsilon_crit: no sign change of the power found below omega_c");
}

double heat_leak_entropy(const AmplifierParams& p) {
    const DressedRates r = dressed_rates(p);
    const Kappas k = symmetric_kappas(r);
    const Gains g = gains(p);
    const double kk = k.h * k.c / (k.h + k.c);
    return 0.5 * p.epsilon * kk * g.G2 * (1.0 / p.T_c - 1.0 / p.T_h);
}

}  // namespace qtricycle::engine
