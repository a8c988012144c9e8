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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "qtricycle/numerics.hpp"
#include "qtricycle/thermo_analysis.hpp"

using namespace qtricycle;
using namespace qtricycle::thermo;
using engine::AmplifierParams;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

double bose_n(double w, double t) { return 1.0 / std::expm1(w / t); }

// Gain-positive engine with bath conductances well below eps.
AmplifierParams engine_draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        const double wc = 0.2 + 4.0 * u(rng);
        const double wh = wc * (1.1 + 3.0 * u(rng));
        const double tc = 0.05 + 2.0 * u(rng);
        const double th = tc * (1.5 + 6.0 * u(rng));
        const double eps = 0.5 * wc * (0.01 + u(rng));
        const double kh = 0.1 * eps * (0.01 + u(rng));
        const double kc = 0.1 * eps * (0.01 + u(rng));
        auto p = AmplifierParams::symmetric(wh, wc, eps, th, tc, kh, kc);
        if (engine::gains(p).G1 > 0.0) return p;
    }
}

fridge::ThreeQubitParams qubit_draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    fridge::ThreeQubitParams p;
    p.omega_c = 0.3 + 2.0 * u(rng);
    p.nu = 0.3 + 2.0 * u(rng);
    p.omega_h = p.omega_c + p.nu;
    p.epsilon = 0.02 + 0.2 * std::min(p.omega_c, p.nu) * u(rng);
    p.cold = {0.1 + u(rng), 1e-3 * (0.1 + u(rng)), 1.0};
    p.hot = {p.cold.T * (1.0 + 3.0 * u(rng)), 1e-3 * (0.1 + u(rng)), 1.0};
    p.work = {p.hot.T * (1.0 + 20.0 * u(rng)), 1e-3 * (0.1 + u(rng)), 1.0};
    return p;
}

// Root of (1 + a)(e^x - 1) = x e^x: maximiser of x^(1+a) / (e^x - 1).
double bose_optimum(double a) {
    double lo = 1e-6, hi = 50.0;
    for (int k = 0; k < 200; ++k) {
        const double x = 0.5 * (lo + hi);
        ((1.0 + a) * std::expm1(x) - x * std::exp(x) > 0.0 ? lo : hi) = x;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("audit of engine reports") {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 2000; ++k) {
        const auto p = engine_draw(rng);
        const auto a = audit(engine::currents(p), p.T_h, p.T_c);
        INFO("draw " << k);
        REQUIRE(a.pass);
        CHECK(a.reason.empty());
        CHECK(a.entropy_rate >= 0.0);
        CHECK(a.carnot_margin >= -1e-9);
    }
}

TEST_CASE("audit flags constructed violations") {
    const auto p = AmplifierParams::symmetric(6.0, 4.0, 0.3, 3.0, 1.0, 0.01, 0.01);
    auto r = engine::currents(p);
    REQUIRE(audit(r, p.T_h, p.T_c).pass);

    SUBCASE("cold current sign flipped") {
        auto bad = r;
        bad.J_c = -bad.J_c;
        bad.J_h = -bad.P - bad.J_c;  // keep the first law so the second law is what fails
        const auto a = audit(bad, p.T_h, p.T_c);
        CHECK_FALSE(a.pass);
        CHECK(a.reason == "second-law");
        CHECK(a.entropy_rate < 0.0);
    }
    SUBCASE("energy not conserved") {
        auto bad = r;
        bad.J_h *= 1.01;
        const auto a = audit(bad, p.T_h, p.T_c);
        CHECK_FALSE(a.pass);
        CHECK(a.reason == "first-law");
    }
    SUBCASE("above the Otto bound") {
        const auto a = audit(r, p.T_h, p.T_c, kInfinity, 0.5 * (-r.P / r.J_h));
        CHECK_FALSE(a.pass);
        CHECK(a.reason == "otto");
    }
    SUBCASE("engine efficiency above Carnot") {
        CurrentsReport fake;
        fake.J_h = 1.0;
        fake.P = -0.9;
        fake.J_c = -0.1;
        const auto a = audit(fake, 2.0, 1.0, kInfinity, std::nullopt, {1e-10, 1.0, 1e-9});
        CHECK_FALSE(a.pass);
        CHECK(a.reason == "carnot");
        CHECK(a.carnot_margin == doctest::Approx(-0.4));
    }
    CHECK_THROWS_AS(audit(r, 0.0, 1.0), DomainError);
}

TEST_CASE("audit of power-driven refrigerators against Otto and Carnot") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int cooling = 0;
    for (int k = 0; k < 2000; ++k) {
        fridge::FridgeParams p;
        p.omega_c = 0.2 + 2.0 * u(rng);
        p.omega_h = p.omega_c * (1.05 + 3.0 * u(rng));
        p.T_h = 0.1 + 3.0 * u(rng);
        p.T_c = p.T_h * (0.05 + 0.9 * u(rng));
        p.Gamma_h = 0.01 + u(rng);
        p.Gamma_c = 0.01 + u(rng);
        const auto r = fridge::power_driven_fridge(p);
        // Draws outside the cooling regime run as engines; the COP bound only applies to coolers.
        const auto otto = r.J_c > 0.0 ? std::optional<double>(fridge::otto_cop(p.omega_h, p.omega_c)) : std::nullopt;
        const auto a = audit(r, p.T_h, p.T_c, kInfinity, otto);
        INFO("draw " << k);
        REQUIRE(a.pass);
        if (r.J_c > 0.0) {
            ++cooling;
            CHECK(a.otto_margin >= -1e-9);
            CHECK(a.carnot_margin >= a.otto_margin - 1e-9);
        }
    }
    CHECK(cooling > 200);
}

TEST_CASE("audit of three-qubit absorption reports") {
    std::mt19937_64 rng(47);
    for (int k = 0; k < 1000; ++k) {
        const auto p = qubit_draw(rng);
        const auto rep = fridge::three_qubit_fridge(p);
        // The currents can nearly cancel; compare the residual with the exchanged rate scale.
        AuditTolerance tol;
        const double largest = std::max({std::abs(rep.currents.J_h), std::abs(rep.currents.J_c),
                                         std::abs(rep.currents.J_w)});
        const double floor = 1e-5 * p.omega_h * (p.hot.gamma + p.cold.gamma + p.work.gamma);
        tol.residual_rel = std::max(1e-10, 1e-10 * floor / std::max(largest, 1e-300));
        const auto a = audit(rep.currents, p.hot.T, p.cold.T, p.work.T, std::nullopt, tol);
        INFO("draw " << k);
        REQUIRE(a.pass);
    }
}

TEST_CASE("audit ignores the work channel at infinite work temperature") {
    CurrentsReport r;
    r.J_w = 1.0;
    r.J_c = 0.2;
    r.J_h = -1.2;
    const auto a = audit(r, 2.0, 1.0);
    CHECK(a.entropy_rate == doctest::Approx(1.2 / 2.0 - 0.2));
    CHECK(a.pass);
    const auto b = audit(r, 2.0, 1.0, 4.0);
    CHECK(b.entropy_rate == doctest::Approx(1.2 / 2.0 - 0.2 - 0.25));
}

TEST_CASE("maximum power over balanced conductances") {
    SUBCASE("fixed point") {
        const auto p = AmplifierParams::symmetric(3.0, 1.0, 0.05, 2.0, 0.5, 0.01, 0.01);
        const auto o = optimize_power_over_rates(p);
        const double g1 = bose_n(3.05, 2.0) + bose_n(2.95, 2.0) - bose_n(1.05, 0.5) - bose_n(0.95, 0.5);
        CHECK_FALSE(o.flat);
        CHECK(o.Gamma_star / 0.05 == doctest::Approx(2.0).epsilon(1e-6));
        CHECK(rel(o.P_star, -0.25 * 2.0 * 0.05 * g1) < 1e-6);
        CHECK(rel(o.P_balanced, o.P_star) < 1e-6);
        CHECK(o.P_printed == doctest::Approx(2.0 * o.P_balanced).epsilon(1e-14));
        CHECK(o.second_difference < 0.0);
    }
    SUBCASE("random gain-positive draws") {
        std::mt19937_64 rng(53);
        for (int k = 0; k < 300; ++k) {
            const auto p = engine_draw(rng);
            const auto o = optimize_power_over_rates(p);
            const double ratio = o.Gamma_star / p.epsilon;
            INFO("draw " << k);
            CHECK(ratio >= 1.98);
            CHECK(ratio <= 2.02);
            CHECK(o.second_difference < 0.0);
            CHECK(rel(o.P_star, o.P_balanced) < 1e-6);
        }
    }
    SUBCASE("flat objective") {
        CHECK(optimize_power_over_rates(AmplifierParams::symmetric(3.0, 1.0, 0.0, 2.0, 0.5, 0.01, 0.01)).flat);
        const auto o = optimize_power_over_rates(AmplifierParams::symmetric(2.0, 2.0, 0.1, 1.0, 1.0, 0.01, 0.01));
        CHECK(o.flat);
        CHECK(o.P_star == 0.0);
    }
    SUBCASE("refrigerator regime rejected") {
        CHECK_THROWS_AS(optimize_power_over_rates(AmplifierParams::symmetric(3.0, 1.0, 0.05, 1.0, 0.9, 0.01, 0.01)),
                        DomainError);
    }
}

TEST_CASE("efficiency at maximum power in the high-temperature limit") {
    for (double r : {0.1, 0.25, 0.5}) {
        for (auto fixed : {FixedFrequency::omega_c, FixedFrequency::omega_h}) {
            const auto m = efficiency_at_max_power(1.0, r, fixed, 1e-3 * r);
            INFO("T_c/T_h = " << r);
            CHECK(m.high_temperature);
            CHECK(m.warning.empty());
            CHECK(rel(m.eta, 1.0 - std::sqrt(r)) < 0.02);
            CHECK(rel(m.ratio, std::sqrt(r)) < 0.02);
            CHECK(m.eta < 1.0 - r);
        }
    }
    const auto same = efficiency_at_max_power(1.0, 1.0, FixedFrequency::omega_c, 1e-3);
    CHECK(same.eta == 0.0);
    CHECK_FALSE(same.warning.empty());

    const auto cold = efficiency_at_max_power(1.0, 0.25, FixedFrequency::omega_c, 1.0);
    CHECK_FALSE(cold.high_temperature);
    CHECK_FALSE(cold.warning.empty());
    CHECK_THROWS_AS(efficiency_at_max_power(1.0, 2.0, FixedFrequency::omega_c, 1e-3), DomainError);
}

TEST_CASE("power and efficiency trade-off") {
    const auto base = AmplifierParams::symmetric(6.0, 4.0, 0.3, 3.0, 1.0, 0.01, 0.01);
    const double ec = engine::epsilon_crit(base);

    SUBCASE("coupling loop closes at both ends") {
        const auto curve = efficiency_power_curve(base, CurveControl::epsilon, numerics::grid(0.0, ec, 200, false));
        REQUIRE(curve.size() == 200);
        CHECK(std::abs(curve.front().P_over_Pmax) < 1e-12);
        CHECK(std::abs(curve.back().P_over_Pmax) < 1e-6);
        for (const auto& pt : curve) CHECK(pt.P_over_Pmax <= 1.0 + 1e-12);
    }
    SUBCASE("loop with conductance 2 eps closes at both ends") {
        const auto curve =
            efficiency_power_curve(base, CurveControl::epsilon, numerics::grid(0.0, ec, 100, false), true);
        CHECK(curve.front().P_over_Pmax == 0.0);
        CHECK(std::abs(curve.back().P_over_Pmax) < 1e-6);
        CHECK(std::max_element(curve.begin(), curve.end(), [](const auto& a, const auto& b) {
                  return a.P_over_Pmax < b.P_over_Pmax;
              })->P_over_Pmax == doctest::Approx(1.0));
    }
    SUBCASE("Carnot ratio approached only as power vanishes") {
        // omega_h / omega_c approaches T_h / T_c at the right end of the grid.
        const auto grid = numerics::grid(6.0, 12.0 * (1.0 - 1e-4), 120, false);
        const auto curve = efficiency_power_curve(base.with_epsilon(0.05), CurveControl::omega_h, grid);
        const auto peak = std::max_element(curve.begin(), curve.end(),
                                           [](const auto& a, const auto& b) { return a.P_over_Pmax < b.P_over_Pmax; });
        // Reversible branch: past the power peak and before the heat leak dominates.
        for (auto it = peak; it + 1 != curve.end() && (it + 1)->P_over_Pmax >= 0.01; ++it) {
            CHECK((it + 1)->P_over_Pmax <= it->P_over_Pmax + 1e-12);
            CHECK((it + 1)->eta >= it->eta - 1e-12);
        }
        double best = 0.0;
        for (const auto& pt : curve) {
            if (std::isnan(pt.eta_over_etac)) continue;
            CHECK(pt.eta_over_etac < 1.0);
            if (pt.eta_over_etac > 0.98) CHECK(pt.P_over_Pmax < 0.1);
            best = std::max(best, pt.eta_over_etac);
        }
        CHECK(best > 0.97);
    }
    SUBCASE("saturating filters deliver less power") {
        const auto bose = AmplifierParams::symmetric(1.0, 0.5, 0.05, 20.0, 5.0, 0.001, 0.001);
        const auto fermi =
            AmplifierParams::symmetric(1.0, 0.5, 0.05, 20.0, 5.0, 0.001, 0.001, Statistics::fermi);
        const auto g = numerics::grid(0.0, 0.3, 40, false);
        double pb = 0.0, pf = 0.0;
        for (const auto& pt : efficiency_power_curve(bose, CurveControl::epsilon, g)) pb = std::max(pb, -pt.P);
        for (const auto& pt : efficiency_power_curve(fermi, CurveControl::epsilon, g)) pf = std::max(pf, -pt.P);
        CHECK(pf > 0.0);
        CHECK(pf < pb);
    }
}

TEST_CASE("power-law fit") {
    std::vector<double> x = numerics::grid(1e-3, 1e-1, 10, true), y;
    for (double v : x) y.push_back(3.0 * std::pow(v, 2.5));
    const auto f = fit_power_law(x, y);
    CHECK(f.exponent == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(f.prefactor == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(f.r_squared == doctest::Approx(1.0));
    CHECK(f.classification == ScalingClass::withheld);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.3, 3.0);
    for (auto& v : y) v *= u(rng);
    CHECK(fit_power_law(x, y).r_squared < 0.999);
    CHECK_THROWS_AS(fit_power_law({1.0, 2.0}, {1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(fit_power_law({1.0, 2.0, -3.0}, {1.0, 2.0, 3.0}), DomainError);
}

TEST_CASE("cold bath model") {
    ColdBathModel phonons{3, 1.0, 3.0};
    CHECK(phonons.alpha() == 3.0);
    CHECK(phonons.zeta() == 1.0);
    CHECK(kDegenerateGasZeta == 1.5);
    CHECK_THROWS_AS((ColdBathModel{0, 1.0, 1.0}.validate()), DomainError);
    CHECK_THROWS_AS((ColdBathModel{1, 1.0, 0.0}.validate()), DomainError);
}

TEST_CASE("optimised cold current scaling") {
    struct Case {
        int d;
        double kappa;
    };
    for (auto fridge_model : {FridgeModel::universal, FridgeModel::power_driven}) {
        for (auto c : {Case{1, 1.0}, Case{3, 1.0}, Case{3, 2.0}}) {
            const ColdBathModel bath{c.d, c.kappa, static_cast<double>(c.d)};
            const auto s = third_law_current_scaling(bath, fridge_model);
            INFO("d = " << c.d << ", kappa = " << c.kappa << ", model " << static_cast<int>(fridge_model));
            CHECK(std::abs(s.fit.exponent - (c.d + c.kappa)) <= 0.05);
            CHECK(s.fit.r_squared >= 0.999);
            CHECK(s.fit.classification == ScalingClass::nernst_pass);
            REQUIRE(s.T_c.size() >= 8);
            CHECK(s.T_c.back() / s.T_c.front() >= 100.0);
            // Optimal omega_c is proportional to T_c with the scale-free ratio of each model.
            const double a = bath.alpha();
            const double x_star = fridge_model == FridgeModel::universal ? 1.0 + a : bose_optimum(a);
            for (std::size_t k = 0; k < s.T_c.size(); ++k) CHECK(rel(s.omega_star[k] / s.T_c[k], x_star) < 1e-3);
        }
    }
}

TEST_CASE("Nernst gate over the form-factor exponent") {
    for (int d : {1, 2, 3}) {
        for (double kappa : {0.5, 1.0, 1.5}) {
            const auto s = third_law_current_scaling(ColdBathModel{d, kappa, static_cast<double>(d)},
                                                     FridgeModel::universal);
            INFO("d = " << d << ", kappa = " << kappa);
            if (kappa < 1.0) CHECK(s.fit.classification == ScalingClass::violation);
            else CHECK(s.fit.classification == ScalingClass::nernst_pass);
        }
    }
    CHECK(third_law_current_scaling(ColdBathModel{1, 0.0, 0.02}, FridgeModel::universal).fit.classification ==
          ScalingClass::nernst_marginal);
    CHECK_THROWS_AS(third_law_current_scaling(ColdBathModel{}, FridgeModel::universal, 1e-2, 1e-1), DomainError);
    CHECK_THROWS_AS(third_law_current_scaling(ColdBathModel{}, FridgeModel::universal, 1e-3, 1e-1, 5), DomainError);
}

TEST_CASE("cooling trajectories") {
    SUBCASE("zeta = 1: exponential approach") {
        const ColdBathModel bath{1, 1.0, 1.0};
        const auto tr = cooling_trajectory(bath, FridgeModel::universal, 1.0, 15.0);
        const double slope = -4.0 * std::exp(-2.0);  // d ln T / dt = -(2T)^2 e^-2 / T^2
        CHECK(std::log10(tr.T.front() / tr.T.back()) >= 3.0);
        for (std::size_t k = 1; k < tr.t.size(); k += 50)
            CHECK(rel((std::log(tr.T[k]) - std::log(tr.T[0])) / tr.t[k], slope) < 0.02);
        CHECK(tr.zeta_consistent);
        CHECK(tr.zeta_fit.classification == ScalingClass::unattainable_pass);
        CHECK_FALSE(tr.reached_floor);
    }
    SUBCASE("zeta = 2: inverse temperature grows linearly") {
        const ColdBathModel bath{1, 2.0, 1.0};
        const auto tr = cooling_trajectory(bath, FridgeModel::universal, 1.0, 1e3);
        const double rate = 27.0 * std::exp(-3.0);  // d(1/T)/dt
        for (std::size_t k = 1; k < tr.t.size(); k += 50)
            CHECK(rel((1.0 / tr.T[k] - 1.0) / tr.t[k], rate) < 0.02);
        CHECK(tr.zeta_fit.exponent == doctest::Approx(2.0).epsilon(0.025));
        CHECK(tr.zeta_fit.classification == ScalingClass::unattainable_pass);
    }
    SUBCASE("bosonic bath: zeta equals kappa") {
        for (auto fm : {FridgeModel::universal, FridgeModel::power_driven}) {
            const auto tr = cooling_trajectory(ColdBathModel{3, 1.0, 3.0}, fm, 0.1, 50.0);
            CHECK(std::abs(tr.zeta_fit.exponent - 1.0) <= 0.05);
            CHECK(tr.zeta_consistent);
        }
    }
    SUBCASE("kappa < 1 reaches zero in finite time") {
        const auto tr = cooling_trajectory(ColdBathModel{1, 0.5, 1.0}, FridgeModel::universal, 1.0, 100.0);
        CHECK(tr.reached_floor);
        CHECK(tr.t.back() < 100.0);
        CHECK(tr.zeta_fit.classification == ScalingClass::violation);
        CHECK(tr.zeta_fit.exponent == doctest::Approx(0.5).epsilon(0.05));
    }
    SUBCASE("fitted zeta agrees with the current exponent") {
        for (auto c : {ColdBathModel{1, 1.0, 1.0}, ColdBathModel{2, 1.5, 1.0}, ColdBathModel{3, 2.0, 2.5}}) {
            const auto s = third_law_current_scaling(c, FridgeModel::universal);
            const auto tr = cooling_trajectory(c, FridgeModel::universal, 0.1, 100.0);
            CHECK(std::abs(tr.zeta_fit.exponent - (s.fit.exponent - c.eta_cv)) <= 1e-3);
        }
    }
    CHECK_THROWS_AS(cooling_trajectory(ColdBathModel{}, FridgeModel::universal, -1.0, 1.0), DomainError);
}
