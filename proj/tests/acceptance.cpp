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

// Acceptance report: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria (0 when all pass).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "qtricycle/discrete_engines.hpp"
#include "qtricycle/numerics.hpp"
#include "qtricycle/refrigerators.hpp"
#include "qtricycle/thermo_analysis.hpp"
#include "qtricycle/tricycle_engine.hpp"

using namespace qtricycle;
using engine::AmplifierParams;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Law tally across draws; the residual and entropy tolerances are relative to
// the largest current (entropy: to the largest |J|/T).
struct LawTally {
    int draws = 0;
    int bad = 0;
    double worst_residual = 0.0;
    double worst_entropy = 0.0;
    void add(const CurrentsReport& r, double T_min, double floor = 0.0) {
        ++draws;
        const double scale = std::max({std::abs(r.J_h), std::abs(r.J_c), std::abs(r.J_w), floor, 1e-300});
        const double res = std::abs(r.first_law_residual) / scale;
        const double ent = -r.entropy_rate / (scale / T_min);
        worst_residual = std::max(worst_residual, res);
        worst_entropy = std::max(worst_entropy, ent);
        if (!(res < 1e-10) || !(ent <= 1e-12)) ++bad;
    }
    std::string summary(const std::string& name) const {
        std::ostringstream s;
        s << name << " " << draws - bad << "/" << draws << " (res " << fmt("%.1e", worst_residual) << ")";
        return s.str();
    }
};

// ------------------------------------------------------------------ 1

Outcome criterion_1() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Outcome o;
    const int n = 10000;

    // Tricycle draws keep kappa <= eps / 10, the regime where the dressed-basis
    // generator applies.
    for (Statistics st : {Statistics::bose, Statistics::fermi}) {
        LawTally t;
        for (int k = 0; k < n; ++k) {
            const double wc = 0.2 + 5.0 * u(rng);
            const double wh = wc * (1.0 + 3.0 * u(rng));
            const double tc = 0.05 + 3.0 * u(rng);
            const double th = tc * (1.0 + 4.0 * u(rng));
            const double eps = 0.95 * wc * u(rng);
            const double kh = 0.1 * eps * (1e-3 + u(rng));
            const double kc = 0.1 * eps * (1e-3 + u(rng));
            const auto p = AmplifierParams::symmetric(wh, wc, eps, th, tc, kh, kc, st);
            t.add(engine::currents(p), tc);
        }
        o.pass &= t.bad == 0;
        o.detail += t.summary(st == Statistics::bose ? "bose" : "fermi") + "; ";
    }

    // Cooling, heating and idle regimes alike.
    auto fridge_draw = [&] {
        fridge::FridgeParams p;
        p.omega_c = 0.2 + 2.0 * u(rng);
        p.omega_h = p.omega_c * (1.05 + 3.0 * u(rng));
        p.T_h = 0.1 + 3.0 * u(rng);
        p.T_c = p.T_h * (0.05 + 0.9 * u(rng));
        p.Gamma_h = 0.01 + u(rng);
        p.Gamma_c = 0.01 + u(rng);
        return p;
    };
    {
        LawTally t;
        for (int k = 0; k < n; ++k) {
            const auto p = fridge_draw();
            t.add(fridge::gaussian_noise_cooling(p, 0.001 + u(rng)), p.T_c);
        }
        o.pass &= t.bad == 0;
        o.detail += t.summary("gaussian") + "; ";
    }
    {
        LawTally t;
        for (int k = 0; k < n; ++k) {
            const auto p = fridge_draw();
            fridge::NoiseSpec s;
            s.kind = fridge::NoiseSpec::Kind::poisson;
            s.impulses = {fridge::ImpulseDistribution::Kind::delta, 0.05 + 1.5 * u(rng), 0.0};
            s.lambda = 0.99 * u(rng) * fridge::poisson_lambda_max(s.impulses, p.omega_h, p.omega_c);
            t.add(fridge::poisson_noise_cooling(p, s).currents, p.T_c);
        }
        o.pass &= t.bad == 0;
        o.detail += t.summary("poisson") + "; ";
    }
    {
        LawTally t;
        for (int k = 0; k < n; ++k) {
            fridge::ThreeQubitParams p;
            p.omega_c = 0.3 + 2.0 * u(rng);
            p.nu = 0.3 + 2.0 * u(rng);
            p.omega_h = p.omega_c + p.nu;
            p.epsilon = 0.02 + 0.2 * std::min(p.omega_c, p.nu) * u(rng);
            p.cold = {0.1 + u(rng), 1e-3 * (0.1 + u(rng)), 1.0};
            p.hot = {p.cold.T * (1.0 + 3.0 * u(rng)), 1e-3 * (0.1 + u(rng)), 1.0};
            p.work = {p.hot.T * (1.0 + 20.0 * u(rng)), 1e-3 * (0.1 + u(rng)), 1.0};
            // Nearly reversible draws cancel to round-off; floor the scale at the
            // natural current size gamma * omega_h.
            const double floor = 1e-5 * p.omega_h * (p.hot.gamma + p.cold.gamma + p.work.gamma);
            t.add(fridge::three_qubit_fridge(p).currents, p.cold.T, floor);
        }
        o.pass &= t.bad == 0;
        o.detail += t.summary("3-qubit") + "; ";
    }
    const double secs = seconds_since(t0);
    o.pass &= secs < 60.0;
    o.detail += fmt("%.1f s (< 60 s)", secs);
    return o;
}

// ------------------------------------------------------------------ 2

Outcome criterion_2() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Outcome o;
    int ok = 0;
    const int n = 100;
    double worst = 0.0;
    int max_trunc = 0;
    for (int k = 0; k < n; ++k) {
        const double wc = 1.0 + u(rng);
        const double wh = wc + 0.5 + u(rng);
        const double tc = wc / (4.0 + 2.0 * u(rng));
        const double th = wh / (3.0 + u(rng));
        const double eps = 0.3 * wc * u(rng) + 0.01;
        const double kh = 0.02 + 0.1 * u(rng);
        const double kc = 0.02 + 0.1 * u(rng);
        const auto p = AmplifierParams::symmetric(wh, wc, eps, th, tc, kh, kc);
        const auto c = engine::currents(p);
        const auto r = engine::amplifier_oracle_converged(p, 6, 10);
        const double scale = std::max(std::abs(c.J_h), std::abs(c.J_c));
        const double dev = std::max({std::abs(r.currents.J_h - c.J_h), std::abs(r.currents.J_c - c.J_c),
                                     std::abs(r.currents.P - c.P)}) /
                           scale;
        worst = std::max(worst, dev);
        max_trunc = std::max(max_trunc, r.truncation);
        if (dev < 1e-4 && r.converged) ++ok;
    }
    const double secs = seconds_since(t0);
    o.pass = ok == n && secs < 600.0;
    o.detail = std::to_string(ok) + "/" + std::to_string(n) + " draws within 1e-4 (worst " + fmt("%.1e", worst) +
               ", truncation <= " + std::to_string(max_trunc) + "); " + fmt("%.1f s (< 600 s)", secs);
    return o;
}

// ------------------------------------------------------------------ 3

Outcome criterion_3() {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int located = 0, printed = 0, balanced = 0, draws = 0;
    double lo = 1e9, hi = 0.0, ratio_printed = 0.0;
    while (draws < 50) {
        const double wc = 1.0 + u(rng);
        const double wh = wc + 0.5 + u(rng);
        const auto p = AmplifierParams::symmetric(wh, wc, 0.01 + 0.2 * u(rng), wh / (3.0 + u(rng)),
                                                  wc / (4.0 + 2.0 * u(rng)), 0.05, 0.05);
        if (!(engine::gains(p).G1 > 0.0)) continue;
        ++draws;
        const auto r = thermo::optimize_power_over_rates(p);
        const double g = r.Gamma_star / p.epsilon;
        lo = std::min(lo, g);
        hi = std::max(hi, g);
        if (g >= 1.98 && g <= 2.02) ++located;
        if (rel(r.P_star, r.P_printed) < 1e-6) ++printed;
        if (rel(r.P_star, r.P_balanced) < 1e-6) ++balanced;
        ratio_printed = r.P_star / r.P_printed;
    }
    Outcome o;
    o.pass = located == 50 && printed == 50;
    o.detail = "Gamma*/eps in [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "] on " + std::to_string(located) +
               "/50; P(Gamma*) = printed optimum on " + std::to_string(printed) + "/50 (P*/P_printed = " +
               fmt("%.3f", ratio_printed) + "), = -nu eps G1 / 4 on " + std::to_string(balanced) + "/50";
    return o;
}

// ------------------------------------------------------------------ 4

Outcome criterion_4() {
    Outcome o;
    for (double ratio : {0.1, 0.25, 0.5}) {
        for (auto fixed : {thermo::FixedFrequency::omega_c, thermo::FixedFrequency::omega_h}) {
            const double th = 1.0;
            const double tc = ratio;
            const auto m = thermo::efficiency_at_max_power(th, tc, fixed, 0.01 * tc, Statistics::bose);
            const double ca = 1.0 - std::sqrt(ratio);
            const bool ok = m.max_omega_over_T <= 0.05 && rel(m.eta, ca) < 0.02 && rel(m.ratio, std::sqrt(ratio)) < 0.02;
            o.pass &= ok;
            o.detail += fmt("Tc/Th=%.2f", ratio) + (fixed == thermo::FixedFrequency::omega_c ? " fix wc" : " fix wh") +
                        ": eta/eta_CA-1=" + fmt("%.1e", m.eta / ca - 1.0) + "; ";
        }
    }
    return o;
}

// ------------------------------------------------------------------ 5

Outcome criterion_5() {
    // eps -> 0 with Gamma fixed; omega_c / omega_h approaches T_c / T_h from above.
    const double th = 3.0, tc = 1.0, wh = 3.0, gamma = 1.0;
    Outcome o;
    double prev = 1.0;
    for (double d : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
        const double eta = engine::efficiency_small_coupling(wh, wh * tc / th * (1.0 + d), th, tc, gamma);
        o.pass &= eta > 0.0 && eta < prev;
        o.detail += fmt("%.1e", eta) + " ";
        prev = eta;
    }
    o.pass &= prev < 1e-3 * (1.0 - tc / th);
    o.detail = "eta along the approach: " + o.detail + "(eta_c = 0.667)";
    return o;
}

// ------------------------------------------------------------------ 6

Outcome criterion_6() {
    const auto p = AmplifierParams::symmetric(6.0, 4.0, 0.0, 0.3, 0.1, 0.05, 0.05, Statistics::fermi);
    const double ec = engine::epsilon_crit(p);
    const double lt = discrete::epsilon_crit_low_temperature(6.0, 4.0, 0.3, 0.1);
    const auto r = engine::dressed_rates(p.with_epsilon(ec));
    const double nmax = std::max({r.N_h_plus, r.N_h_minus, r.N_c_plus, r.N_c_minus});
    const auto near = discrete::lamb_steady_currents(p.with_epsilon(ec * (1.0 - 1e-6))).total;
    const double eta = -near.P / near.J_h;
    const double eta_c = 1.0 - 0.1 / 0.3;
    Outcome o;
    o.pass = nmax < 1e-3 && rel(ec, lt) < 0.01 && rel(eta, eta_c) < 10.0 * nmax;
    o.detail = "root " + fmt("%.6f", ec) + " vs " + fmt("%.6f", lt) + "; max N " + fmt("%.1e", nmax) +
               "; |eta/eta_c - 1| " + fmt("%.1e", std::abs(eta / eta_c - 1.0));
    return o;
}

// ------------------------------------------------------------------ 7

Outcome criterion_7() {
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto draw = [&] {
        for (;;) {
            fridge::FridgeParams p;
            p.omega_c = 0.2 + 2.0 * u(rng);
            p.omega_h = p.omega_c * (1.05 + 3.0 * u(rng));
            p.T_h = 0.1 + 3.0 * u(rng);
            p.T_c = p.T_h * (0.05 + 0.9 * u(rng));
            p.Gamma_h = 0.01 + u(rng);
            p.Gamma_c = 0.01 + u(rng);
            if (p.cooling_regime()) return p;
        }
    };
    Outcome o;
    const int n = 10000;
    auto tally = [&](const std::string& name, const std::function<bool(int&)>& one) {
        int cooling = 0, bad = 0;
        for (int k = 0; k < n; ++k)
            if (!one(cooling)) ++bad;
        o.pass &= bad == 0;
        o.detail += name + " " + std::to_string(cooling) + " cooling, " + std::to_string(bad) + " breaches; ";
    };
    tally("gaussian", [&](int& cooling) {
        const auto p = draw();
        const auto r = fridge::gaussian_noise_cooling(p, 0.001 + u(rng));
        if (!(r.J_c > 0.0)) return true;
        ++cooling;
        const double otto = fridge::otto_cop(p.omega_h, p.omega_c);
        return r.efficiency_or_cop <= otto + 1e-9 && otto <= fridge::carnot_cop(p.T_h, p.T_c) + 1e-9;
    });
    tally("poisson", [&](int& cooling) {
        const auto p = draw();
        fridge::NoiseSpec s;
        s.kind = fridge::NoiseSpec::Kind::poisson;
        s.impulses = {fridge::ImpulseDistribution::Kind::delta, 0.05 + 1.5 * u(rng), 0.0};
        s.lambda = 0.99 * u(rng) * fridge::poisson_lambda_max(s.impulses, p.omega_h, p.omega_c);
        const auto r = fridge::poisson_noise_cooling(p, s);
        if (!(r.currents.J_c > 0.0 && r.currents.J_w > 0.0)) return true;
        ++cooling;
        return r.currents.efficiency_or_cop <= r.cop_dressed_otto + 1e-9 &&
               r.cop_dressed_otto <= fridge::otto_cop(p.omega_h, p.omega_c) + 1e-9 &&
               fridge::otto_cop(p.omega_h, p.omega_c) <= fridge::carnot_cop(p.T_h, p.T_c) + 1e-9;
    });
    tally("power-driven", [&](int& cooling) {
        auto p = draw();
        p.epsilon = 0.5 * p.omega_c * u(rng);
        const auto r = fridge::power_driven_fridge(p);
        if (!(r.J_c > 0.0 && r.P > 0.0)) return true;
        ++cooling;
        const double otto = fridge::otto_cop(p.omega_h, p.omega_c);
        return r.efficiency_or_cop <= otto + 1e-9 && otto <= fridge::carnot_cop(p.T_h, p.T_c) + 1e-9;
    });
    return o;
}

// ------------------------------------------------------------------ 8

Outcome criterion_8() {
    fridge::ThreeQubitParams p;
    p.omega_h = 3.0;
    p.omega_c = 1.0;
    p.nu = 2.0;
    p.epsilon = 0.1;
    p.hot = {1.5, 1e-3, 1.0};
    p.cold = {0.4, 1e-3, 1.0};
    p.work = {6.0, 1e-3, 1.0};
    const auto exact = fridge::three_qubit_exact_levels(p);
    const auto printed = fridge::three_qubit_printed_levels(p);
    const auto corrected = fridge::three_qubit_corrected_levels(p);
    double dev_printed = 0.0, dev_corrected = 0.0;
    for (int k = 0; k < 8; ++k) {
        dev_printed = std::max(dev_printed, std::abs(exact[k] - printed[k]));
        dev_corrected = std::max(dev_corrected, std::abs(exact[k] - corrected[k]));
    }
    const auto cold = fridge::three_qubit_channel_pairs(p, fridge::Bath::cold);
    const bool pairs_printed = cold == fridge::printed_cold_pairs();
    const bool pairs_corrected = cold == fridge::corrected_cold_pairs();

    // COP at maximum cooling, d = 3 cold bath (spectral exponent 3), against 3/4 of the absorption bound.
    const double th = 1.5, tc = 0.5, tw = 1e6;
    const double bound = 0.75 * fridge::absorption_cop_bound(tc, th, tw);
    auto run = [&](double wc, double eps) {
        fridge::ThreeQubitParams q;
        q.omega_h = 3.0;
        q.omega_c = wc;
        q.nu = 3.0 - wc;
        q.epsilon = eps;
        q.hot = {th, 1e-3, 1.0};
        q.cold = {tc, 1e-3, 3.0};
        q.work = {tw, 1e-3, 1.0};
        return fridge::three_qubit_fridge(q).currents;
    };
    double worst = 0.0;
    bool interior = true;
    for (double eps : numerics::grid(0.01, 0.3, 8, true)) {
        const auto best = numerics::maximize([&](double wc) { return run(wc, eps).J_c; }, 0.05, 2.5, 61);
        interior &= best.interior;
        worst = std::max(worst, run(best.x, eps).efficiency_or_cop / bound);
    }
    const bool cop_ok = interior && worst <= 1.0;

    Outcome o;
    o.pass = dev_printed < 1e-12 && pairs_printed && cop_ok;
    o.detail = std::string("printed levels ") + (dev_printed < 1e-12 ? "match" : "differ by " + fmt("%.3g", dev_printed)) +
               " (pair at omega_h +- eps: " + (dev_corrected < 1e-12 ? "match" : "differ") + "); printed cold pairs " +
               (pairs_printed ? "match" : "differ") + " (corrected list " + (pairs_corrected ? "matches" : "differs") +
               "); max COP*/(0.75 COP_c) over eps sweep " + fmt("%.3f", worst) + (cop_ok ? " ok" : " exceeds");
    return o;
}

// ------------------------------------------------------------------ 9

Outcome criterion_9() {
    Outcome o;
    fridge::FridgeParams p{2.0, 1.0, 0.0, 0.6, 0.4, fridge::kInfinity, 0.05, 0.07};
    const double eta = 0.03;
    const auto noise = fridge::gaussian_noise_oracle(p, eta, 10).currents;
    const auto lim = fridge::work_bath_infinite_temperature(p, eta, 50.0, 10);
    const double d_osc = std::max(rel(lim.extrapolated.J_c, noise.J_c), rel(lim.extrapolated.J_w, noise.J_w));

    fridge::ThreeQubitParams q;
    q.omega_h = 3.0;
    q.omega_c = 1.0;
    q.nu = 2.0;
    q.epsilon = 0.1;
    q.hot = {1.5, 1e-3, 1.0};
    q.cold = {0.4, 1e-3, 1.0};
    const double eta_q = 2e-3;
    auto noisy = q;
    noisy.work_noise_eta = eta_q;
    const double target = fridge::three_qubit_fridge(noisy).currents.J_c;
    std::array<double, 3> j{};
    for (int k = 0; k < 3; ++k) {
        auto r = q;
        const double t = 100.0 * std::ldexp(1.0, k);
        r.work = {t, 2.0 * eta_q / t, 1.0};
        j[k] = fridge::three_qubit_fridge(r).currents.J_c;
    }
    const double extrap = (4.0 * (2.0 * j[2] - j[1]) - (2.0 * j[1] - j[0])) / 3.0;
    const double d_qubit = rel(extrap, target);
    o.pass = d_osc < 1e-3 && d_qubit < 1e-3;
    o.detail = "oscillator oracle " + fmt("%.1e", d_osc) + ", 3-qubit " + fmt("%.1e", d_qubit) + " (< 1e-3)";
    return o;
}

// ------------------------------------------------------------------ 10

Outcome criterion_10() {
    fridge::FridgeParams p{2.0, 1.0, 0.0, 0.6, 0.4, fridge::kInfinity, 0.05, 0.07};
    fridge::NoiseSpec n;
    n.kind = fridge::NoiseSpec::Kind::poisson;
    n.impulses = {fridge::ImpulseDistribution::Kind::delta, 0.3, 0.0};
    const double lmax = fridge::poisson_lambda_max(n.impulses, p.omega_h, p.omega_c);
    const auto lambdas = numerics::grid(1e-4 * lmax, 0.99 * lmax, 100, true);
    std::vector<double> jc;
    for (double l : lambdas) {
        n.lambda = l;
        jc.push_back(fridge::poisson_noise_cooling(p, n).currents.J_c);
    }
    const long peak = std::max_element(jc.begin(), jc.end()) - jc.begin();
    bool unimodal = true;
    for (long k = 1; k <= peak; ++k) unimodal &= jc[k] > jc[k - 1];
    for (long k = peak + 1; k < 100; ++k) unimodal &= jc[k] < jc[k - 1];
    Outcome o;
    o.pass = peak > 0 && peak < 99 && unimodal;
    o.detail = "peak at grid point " + std::to_string(peak) + "/99, lambda = " + fmt("%.4g", lambdas[peak]) +
               (unimodal ? ", unimodal" : ", not unimodal");
    return o;
}

// ------------------------------------------------------------------ 11

Outcome criterion_11() {
    const auto t0 = Clock::now();
    Outcome o;
    for (auto model : {thermo::FridgeModel::universal, thermo::FridgeModel::power_driven}) {
        for (auto [d, k] : {std::pair{1, 1.0}, {3, 1.0}, {3, 2.0}}) {
            const auto s = thermo::third_law_current_scaling({d, k, 3.0}, model);
            const bool ok = std::abs(s.fit.exponent - (d + k)) <= 0.05;
            o.pass &= ok;
            o.detail += std::to_string(d) + "," + fmt("%g", k) + (model == thermo::FridgeModel::universal ? "u" : "p") +
                        ":" + fmt("%.3f", s.fit.exponent) + " ";
        }
    }
    // Trajectories: zeta = 1 + alpha - eta_cv.
    int consistent = 0, total = 0;
    for (auto [d, k, e] : {std::tuple{1, 1.0, 1.0}, {3, 1.0, 2.0}, {3, 1.0, 3.0}, {1, 2.0, 1.0}}) {
        const auto tr = thermo::cooling_trajectory({d, k, e}, thermo::FridgeModel::universal, 0.1, 50.0);
        ++total;
        if (tr.zeta_consistent && tr.zeta_fit.classification == thermo::ScalingClass::unattainable_pass) ++consistent;
    }
    o.pass &= consistent == total;
    o.detail += "| zeta within 0.05 on " + std::to_string(consistent) + "/" + std::to_string(total);
    // kappa < 1 with the heat capacity tied to the bath dimension.
    const auto bad = thermo::cooling_trajectory({1, 0.5, 1.0}, thermo::FridgeModel::universal, 0.1, 20.0);
    const auto gate = thermo::third_law_current_scaling({1, 0.5, 1.0}, thermo::FridgeModel::universal);
    const bool flagged = bad.zeta_fit.classification == thermo::ScalingClass::violation &&
                         gate.fit.classification == thermo::ScalingClass::violation;
    o.pass &= flagged;
    o.detail += std::string(" | kappa=0.5 ") + (flagged ? "flagged violation" : "not flagged");
    const double secs = seconds_since(t0);
    o.pass &= secs < 300.0;
    o.detail += fmt(" | %.1f s (< 300 s)", secs);
    return o;
}

// ------------------------------------------------------------------ 12

Outcome criterion_12() {
    const auto na = fridge::sodium_minimum_temperature();
    const auto dr = fridge::sodium_doppler_recoil();
    const bool ratio_ok = rel(na.ratio, 3.48e-6) < 0.05;
    const bool tmin_ok = rel(na.T_c_min, 1.5e-3) < 0.05;
    const bool doppler_ok = rel(dr.T_doppler, 235e-6) < 0.02;
    const bool recoil_ok = rel(dr.T_recoil, 2.39e-6) < 0.02;
    Outcome o;
    o.pass = ratio_ok && tmin_ok && doppler_ok && recoil_ok;
    o.detail = "ratio " + fmt("%.4g", na.ratio) + (ratio_ok ? " ok" : " off") + "; T_c(min) " +
               fmt("%.4g K", na.T_c_min) + (tmin_ok ? " ok" : " off") + "; doppler " +
               fmt("%.4g uK", dr.T_doppler * 1e6) + (doppler_ok ? " ok" : " off") + "; recoil " +
               fmt("%.4g uK", dr.T_recoil * 1e6) + (recoil_ok ? " ok" : " off");
    return o;
}

// ------------------------------------------------------------------ 13

Outcome criterion_13() {
    const char* configs[] = {
        R"({"experiment": "validate-oracle", "params": {"draws": 6, "max_truncation": 8}, "seed": 1313})",
        R"({"experiment": "engine-currents", "params": {"omega_h": 6, "omega_c": 4, "T_h": 0.3, "T_c": 0.1},
            "sweep": [{"param": "epsilon", "lo": 0.01, "hi": 3.5, "count": 64}]})",
        R"({"experiment": "noise-fridge", "params": {"model": "poisson"}, "seed": 5,
            "sweep": [{"param": "lambda", "lo": 0.001, "hi": 3, "count": 40, "spacing": "log"}]})",
    };
    Outcome o;
    int same = 0;
    for (const char* text : configs) {
        const auto c = cli::parse_config(text);
        const auto a = cli::to_csv(cli::run(c, 1));
        const bool ok = a == cli::to_csv(cli::run(c, 1)) && a == cli::to_csv(cli::run(c, 4)) &&
                        a == cli::to_csv(cli::run(c, 2));
        if (ok) ++same;
    }
    o.pass = same == 3;
    o.detail = std::to_string(same) + "/3 configs byte-identical across repeats and parallelism 1/2/4";
    return o;
}

}  // namespace

int main() {
    const std::pair<const char*, Outcome (*)()> criteria[] = {
        {"first/second law over random draws", criterion_1},
        {"closed form vs Liouvillian oracle", criterion_2},
        {"power maximum at Gamma = 2 eps", criterion_3},
        {"Curzon-Ahlborn at high temperature", criterion_4},
        {"Carnot unattainable along eps -> 0", criterion_5},
        {"low-temperature critical coupling", criterion_6},
        {"COP <= Otto <= Carnot", criterion_7},
        {"three-qubit eigensystem, channels, COP", criterion_8},
        {"gaussian noise = infinite-temperature work bath", criterion_9},
        {"poisson turnover in lambda", criterion_10},
        {"third-law exponents and trajectories", criterion_11},
        {"minimum temperature and optical scales", criterion_12},
        {"CLI determinism", criterion_13},
    };
    int failures = 0;
    int index = 1;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of 13 criteria pass\n", 13 - failures);
    return failures;
}
