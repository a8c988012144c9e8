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

// The experiment table. Each entry lists its parameters with defaults, its
// output columns and how one sweep point (or the whole grid) is evaluated.

#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "qtricycle/refrigerators.hpp"
#include "qtricycle/thermo_analysis.hpp"
#include "qtricycle/tricycle_engine.hpp"

namespace qtricycle::cli::detail {

namespace {

using engine::AmplifierParams;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const std::vector<std::string> kAuditColumns = {"first_law_residual", "entropy_rate", "carnot_margin"};

std::vector<std::string> with_audit(std::vector<std::string> cols) {
    cols.insert(cols.end(), kAuditColumns.begin(), kAuditColumns.end());
    return cols;
}

// Appends the audit columns and sets the verdict.
void append_audit(Row& row, const CurrentsReport& r, double T_h, double T_c, double T_w = thermo::kInfinity,
                  std::optional<double> otto = std::nullopt) {
    const auto a = thermo::audit(r, T_h, T_c, T_w, otto);
    row.values.push_back(a.first_law_residual);
    row.values.push_back(a.entropy_rate);
    row.values.push_back(a.carnot_margin);
    row.verdict = a.pass ? "pass" : "fail(" + a.reason + ")";
}

Statistics statistics(const Point& p) { return statistics_from_string(text(p, "statistics")); }

double ratio_or_nan(double num, double den) { return den != 0.0 ? num / den : kNaN; }

std::vector<ParamSpec> engine_params(bool balanced) {
    std::vector<ParamSpec> s = {{"omega_h", 6.0, {}}, {"omega_c", 4.0, {}}, {"epsilon", 0.3, {}},
                                {"T_h", 0.3, {}},     {"T_c", 0.1, {}}};
    if (balanced) {
        s.push_back({"Gamma", 0.05, {}});
    } else {
        s.push_back({"kappa_h", 0.05, {}});
        s.push_back({"kappa_c", 0.05, {}});
    }
    s.push_back({"statistics", std::string("bose"), {"bose", "fermi"}});
    return s;
}

AmplifierParams amplifier(const Point& p) {
    const bool balanced = p.count("Gamma") > 0;
    const double kh = balanced ? number(p, "Gamma") : number(p, "kappa_h");
    const double kc = balanced ? number(p, "Gamma") : number(p, "kappa_c");
    return AmplifierParams::symmetric(number(p, "omega_h"), number(p, "omega_c"), number(p, "epsilon"),
                                      number(p, "T_h"), number(p, "T_c"), kh, kc, statistics(p));
}

// ------------------------------------------------------------ engines

Row engine_currents(const Point& pt, std::uint64_t) {
    const auto p = amplifier(pt);
    const auto r = engine::currents(p);
    const auto g = engine::gains(p);
    Row row;
    const double eta = (r.P < 0.0 && r.J_h > 0.0) ? -r.P / r.J_h : kNaN;
    row.values = {r.J_c, r.J_h, r.P, eta, r.entropy_rate, g.G1, g.G2};
    append_audit(row, r, p.T_h, p.T_c);
    return row;
}

Row power_map(const Point& pt, std::uint64_t) {
    const auto p = amplifier(pt);
    const auto r = engine::currents_balanced(p);
    Row row;
    row.values = {r.P, -r.P, ratio_or_nan(number(pt, "Gamma"), number(pt, "epsilon")), kNaN};
    append_audit(row, r, p.T_h, p.T_c);
    return row;
}

// Closed form and cheap, so the grid is evaluated in one pass and normalised.
std::vector<Row> power_map_all(const Point&, const std::vector<Point>& grid, std::uint64_t seed, bool&) {
    std::vector<Row> rows;
    double best = 0.0;
    for (const auto& g : grid) {
        rows.push_back(power_map(g, seed));
        best = std::max(best, rows.back().values[1]);
    }
    for (auto& r : rows) r.values[3] = best > 0.0 ? r.values[1] / best : kNaN;
    return rows;
}

std::vector<Row> tradeoff_all(const Point& base_point, const std::vector<Point>& grid, std::uint64_t, bool&) {
    const bool by_eps = text(base_point, "control") == "epsilon";
    const bool tracks = text(base_point, "conductance") == "two_epsilon";
    const std::string key = by_eps ? "epsilon" : "omega_h";
    std::vector<double> xs;
    for (const auto& g : grid) xs.push_back(number(g, key));
    const auto base = amplifier(base_point);
    const auto curve = thermo::efficiency_power_curve(base, by_eps ? thermo::CurveControl::epsilon
                                                                   : thermo::CurveControl::omega_h,
                                                      xs, tracks);
    std::vector<Row> rows;
    for (std::size_t k = 0; k < curve.size(); ++k) {
        Row row;
        const auto& c = curve[k];
        row.values = {c.P, c.eta, c.P_over_Pmax, c.eta_over_etac};
        const double e = by_eps ? xs[k] : base.epsilon;
        if (tracks && e == 0.0) {
            row.values.insert(row.values.end(), {0.0, 0.0, kNaN});
            row.verdict = "n/a";
        } else {
            const double gh = tracks ? 2.0 * std::abs(e) : number(base_point, "kappa_h");
            const double gc = tracks ? 2.0 * std::abs(e) : number(base_point, "kappa_c");
            const double wh = by_eps ? base.omega_h : xs[k];
            const auto q = AmplifierParams::symmetric(wh, base.omega_c, e, base.T_h, base.T_c, gh, gc, base.statistics);
            append_audit(row, engine::currents(q), base.T_h, base.T_c);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Row ca_check(const Point& pt, std::uint64_t) {
    const double Th = number(pt, "T_h");
    const double Tc = number(pt, "T_c");
    const bool fix_c = text(pt, "fixed") == "omega_c";
    const double f = number(pt, "frequency");
    const auto m = thermo::efficiency_at_max_power(
        Th, Tc, fix_c ? thermo::FixedFrequency::omega_c : thermo::FixedFrequency::omega_h, f, statistics(pt));
    Row row;
    row.values = {m.eta, m.eta_ca, m.ratio, std::sqrt(Tc / Th), m.max_omega_over_T, m.high_temperature ? 1.0 : 0.0};
    if (Tc == Th) {
        row.values.insert(row.values.end(), {0.0, 0.0, kNaN});
        row.verdict = "n/a";
        return row;
    }
    const double eps = 1e-4 * f;
    const double wh = fix_c ? f / m.ratio : f;
    const double wc = fix_c ? f : f * m.ratio;
    const auto q = AmplifierParams::symmetric(wh, wc, eps, Th, Tc, 2.0 * eps, 2.0 * eps, statistics(pt));
    append_audit(row, engine::currents_balanced(q), Th, Tc);
    return row;
}

// ------------------------------------------------------------ refrigerators

fridge::FridgeParams fridge_params(const Point& pt) {
    fridge::FridgeParams p;
    p.omega_h = number(pt, "omega_h");
    p.omega_c = number(pt, "omega_c");
    p.T_h = number(pt, "T_h");
    p.T_c = number(pt, "T_c");
    p.Gamma_h = number(pt, "Gamma_h");
    p.Gamma_c = number(pt, "Gamma_c");
    if (pt.count("epsilon")) p.epsilon = number(pt, "epsilon");
    if (pt.count("statistics")) p.statistics = statistics(pt);
    return p;
}

Row fridge_currents(const Point& pt, std::uint64_t) {
    const auto p = fridge_params(pt);
    const auto r = fridge::power_driven_fridge(p);
    const double otto = p.omega_h > p.omega_c ? fridge::otto_cop(p.omega_h, p.omega_c) : kNaN;
    const double carnot = p.T_h > p.T_c ? fridge::carnot_cop(p.T_h, p.T_c) : kNaN;
    Row row;
    row.values = {r.J_c, r.J_h, r.P, r.J_c > 0.0 ? r.J_c / r.P : kNaN, otto, carnot};
    append_audit(row, r, p.T_h, p.T_c, thermo::kInfinity,
                 r.J_c > 0.0 && std::isfinite(otto) ? std::optional<double>(otto) : std::nullopt);
    return row;
}

Row three_qubit(const Point& pt, std::uint64_t) {
    fridge::ThreeQubitParams p;
    p.omega_h = number(pt, "omega_h");
    p.omega_c = number(pt, "omega_c");
    p.nu = p.omega_h - p.omega_c;
    p.epsilon = number(pt, "epsilon");
    p.hot = {number(pt, "T_h"), number(pt, "gamma_h"), number(pt, "exponent_h")};
    p.cold = {number(pt, "T_c"), number(pt, "gamma_c"), number(pt, "exponent_c")};
    p.work = {number(pt, "T_w"), number(pt, "gamma_w"), number(pt, "exponent_w")};
    p.local_known_inconsistent = text(pt, "generator") == "local";
    const bool noise = text(pt, "work") == "noise";
    if (noise) p.work_noise_eta = number(pt, "eta_w");
    const auto rep = fridge::three_qubit_fridge(p);
    const double Tw = noise ? thermo::kInfinity : p.work.T;
    const auto& r = rep.currents;
    Row row;
    row.values = {r.J_h, r.J_c, r.J_w, r.efficiency_or_cop, fridge::absorption_cop_bound(p.cold.T, p.hot.T, Tw),
                  rep.min_eigenvalue, rep.residual};
    append_audit(row, r, p.hot.T, p.cold.T, Tw);
    return row;
}

fridge::ImpulseDistribution impulses(const Point& pt) {
    fridge::ImpulseDistribution d;
    const auto& k = text(pt, "impulses");
    d.kind = k == "delta" ? fridge::ImpulseDistribution::Kind::delta
             : k == "normal" ? fridge::ImpulseDistribution::Kind::normal
                             : fridge::ImpulseDistribution::Kind::exponential;
    d.xi0 = number(pt, "xi0");
    d.sigma = number(pt, "sigma");
    return d;
}

Row noise_fridge(const Point& pt, std::uint64_t) {
    const auto p = fridge_params(pt);
    Row row;
    if (text(pt, "model") == "gaussian") {
        const auto r = fridge::gaussian_noise_cooling(p, number(pt, "eta"));
        const double bound = fridge::otto_cop(p.omega_h, p.omega_c);
        row.values = {r.J_h, r.J_c, r.J_w, r.efficiency_or_cop, 0.0, number(pt, "eta"), bound};
        append_audit(row, r, p.T_h, p.T_c, thermo::kInfinity,
                     r.J_c > 0.0 ? std::optional<double>(bound) : std::nullopt);
        return row;
    }
    fridge::NoiseSpec spec;
    spec.kind = fridge::NoiseSpec::Kind::poisson;
    spec.lambda = number(pt, "lambda");
    spec.impulses = impulses(pt);
    const auto rep = fridge::poisson_noise_cooling(p, spec);
    const auto& r = rep.currents;
    row.values = {r.J_h, r.J_c, r.J_w, r.efficiency_or_cop, rep.epsilon, rep.eta, rep.cop_dressed_otto};
    append_audit(row, r, p.T_h, p.T_c, thermo::kInfinity,
                 r.J_c > 0.0 ? std::optional<double>(rep.cop_dressed_otto) : std::nullopt);
    return row;
}

// ------------------------------------------------------------ third law

thermo::ColdBathModel bath(const Point& pt) {
    const double d = number(pt, "dimension");
    return {static_cast<int>(d), number(pt, "kappa"), number(pt, "eta_cv")};
}

thermo::FridgeModel fridge_model(const Point& pt) {
    return text(pt, "fridge") == "universal" ? thermo::FridgeModel::universal : thermo::FridgeModel::power_driven;
}

std::vector<Row> third_law_all(const Point& base, const std::vector<Point>& grid, std::uint64_t,
                               bool& sweep_columns) {
    std::vector<Row> rows;
    if (text(base, "mode") == "trajectory") {
        sweep_columns = false;
        const auto tr = thermo::cooling_trajectory(bath(base), fridge_model(base), number(base, "T0"),
                                                   number(base, "t_max"));
        for (std::size_t k = 0; k < tr.t.size(); ++k) {
            Row row;
            row.values = {tr.t[k], tr.T[k], tr.zeta_fit.exponent, tr.zeta_expected, tr.zeta_fit.r_squared,
                          tr.reached_floor ? 1.0 : 0.0};
            row.verdict = thermo::to_string(tr.zeta_fit.classification);
            rows.push_back(std::move(row));
        }
        return rows;
    }
    const double lo = number(grid.front(), "T_c");
    const double hi = number(grid.back(), "T_c");
    const auto s = thermo::third_law_current_scaling(bath(base), fridge_model(base), lo, hi,
                                                     static_cast<int>(grid.size()));
    for (std::size_t k = 0; k < s.T_c.size(); ++k) {
        Row row;
        row.values = {s.J_c[k], s.omega_star[k], s.omega_star[k] / s.T_c[k], s.fit.exponent, s.fit.stderr_exponent,
                      s.fit.r_squared};
        row.verdict = thermo::to_string(s.fit.classification);
        rows.push_back(std::move(row));
    }
    return rows;
}

// ------------------------------------------------------------ oracle

double rel_dev(double a, double b, double scale) { return std::abs(a - b) / scale; }

Row validate_oracle(const Point& pt, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double wc = 1.0 + u(rng);
    const double wh = wc + 0.5 + u(rng);
    const double tc = wc / (4.0 + 2.0 * u(rng));
    const double th = wh / (3.0 + u(rng));
    const double eps = 0.3 * wc * u(rng) + 0.01;
    const double kh = 0.02 + 0.1 * u(rng);
    const double kc = 0.02 + 0.1 * u(rng);
    const auto p = AmplifierParams::symmetric(wh, wc, eps, th, tc, kh, kc);
    const auto c = engine::currents(p);
    const auto o = engine::amplifier_oracle_converged(p, 6, static_cast<int>(number(pt, "max_truncation")));
    const double scale = std::max(std::abs(c.J_h), std::abs(c.J_c));
    const double dh = rel_dev(o.currents.J_h, c.J_h, scale);
    const double dc = rel_dev(o.currents.J_c, c.J_c, scale);
    const double dp = rel_dev(o.currents.P, c.P, scale);
    const double worst = std::max({dh, dc, dp});
    Row row;
    row.values = {wh, wc, eps, th, tc, kh, kc, c.J_h, o.currents.J_h, dh, dc, dp, worst,
                  static_cast<double>(o.truncation), o.converged ? 1.0 : 0.0};
    append_audit(row, c, th, tc);
    if (row.verdict == "pass" && !(worst < 1e-4)) row.verdict = "fail(oracle)";
    return row;
}


// ------------------------------------------------------------ config checks

void require_single_axis(const ExperimentConfig& c, const std::string& name) {
    if (c.sweep.size() != 1 || c.sweep.front().param != name)
        throw ConfigError(c.experiment + ": needs exactly one sweep axis over '" + name + "'");
}

std::vector<Experiment> build_registry() {
    std::vector<Experiment> r;

    r.push_back({"engine-currents", "closed-form currents, efficiency, entropy and gains of the driven tricycle",
                 engine_params(false),
                 [](const Point&) { return with_audit({"J_c", "J_h", "P", "eta", "entropy", "G1", "G2"}); },
                 engine_currents, nullptr, nullptr, {}});

    r.push_back({"power-map", "balanced-conductance power over (epsilon, Gamma); normalised to the grid maximum",
                 engine_params(true),
                 [](const Point&) { return with_audit({"P", "output_power", "Gamma_over_epsilon", "P_over_Pmax"}); },
                 nullptr, power_map_all, nullptr, {}});

    {
        auto params = engine_params(false);
        params.push_back({"control", std::string("epsilon"), {"epsilon", "omega_h"}});
        params.push_back({"conductance", std::string("fixed"), {"fixed", "two_epsilon"}});
        r.push_back({"tradeoff-curve", "normalised efficiency against normalised power along epsilon or omega_h",
                     params,
                     [](const Point&) { return with_audit({"P", "eta", "P_over_Pmax", "eta_over_etac"}); }, nullptr,
                     tradeoff_all, [](const ExperimentConfig& c) {
                         require_single_axis(c, std::get<std::string>(c.params.at("control")));
                     }, {}});
    }

    r.push_back({"ca-check", "efficiency at maximum power against Curzon-Ahlborn in the high-temperature limit",
                 {{"T_h", 1.0, {}},
                  {"T_c", 0.25, {}},
                  {"fixed", std::string("omega_c"), {"omega_c", "omega_h"}},
                  {"frequency", 1e-4, {}},
                  {"statistics", std::string("bose"), {"bose", "fermi"}}},
                 [](const Point&) {
                     return with_audit(
                         {"eta", "eta_ca", "ratio", "sqrt_Tc_over_Th", "max_omega_over_T", "high_temperature"});
                 },
                 ca_check, nullptr, nullptr, {}});

    r.push_back({"fridge-currents", "strongly driven tricycle refrigerator: currents and COP against Otto and Carnot",
                 {{"omega_h", 3.0, {}},
                  {"omega_c", 1.0, {}},
                  {"epsilon", 0.2, {}},
                  {"T_h", 1.0, {}},
                  {"T_c", 0.5, {}},
                  {"Gamma_h", 0.05, {}},
                  {"Gamma_c", 0.05, {}},
                  {"statistics", std::string("bose"), {"bose", "fermi"}}},
                 [](const Point&) { return with_audit({"J_c", "J_h", "P", "cop", "cop_otto", "cop_carnot"}); },
                 fridge_currents, nullptr, nullptr, {}});

    r.push_back({"three-qubit", "three-qubit absorption refrigerator, global or local master equation",
                 {{"omega_h", 3.0, {}},
                  {"omega_c", 1.0, {}},
                  {"epsilon", 0.05, {}},
                  {"T_h", 1.5, {}},
                  {"T_c", 0.5, {}},
                  {"T_w", 10.0, {}},
                  {"gamma_h", 1e-3, {}},
                  {"gamma_c", 1e-3, {}},
                  {"gamma_w", 1e-3, {}},
                  {"exponent_h", 1.0, {}},
                  {"exponent_c", 3.0, {}},
                  {"exponent_w", 1.0, {}},
                  {"generator", std::string("global"), {"global", "local"}},
                  {"work", std::string("thermal"), {"thermal", "noise"}},
                  {"eta_w", 1e-3, {}}},
                 [](const Point&) {
                     return with_audit({"J_h", "J_c", "J_w", "cop", "cop_bound", "min_eigenvalue", "residual"});
                 },
                 three_qubit, nullptr, nullptr, {}});

    r.push_back({"noise-fridge", "refrigerator driven by Gaussian or Poisson noise on the swap coupling",
                 {{"model", std::string("gaussian"), {"gaussian", "poisson"}},
                  {"omega_h", 2.0, {}},
                  {"omega_c", 1.0, {}},
                  {"T_h", 0.6, {}},
                  {"T_c", 0.4, {}},
                  {"Gamma_h", 0.05, {}},
                  {"Gamma_c", 0.05, {}},
                  {"eta", 0.3, {}},
                  {"lambda", 0.1, {}},
                  {"impulses", std::string("delta"), {"delta", "normal", "exponential"}},
                  {"xi0", 0.3, {}},
                  {"sigma", 0.1, {}}},
                 [](const Point&) {
                     return with_audit({"J_h", "J_c", "J_w", "cop", "epsilon_shift", "eta_eff", "cop_bound"});
                 },
                 noise_fridge, nullptr, nullptr, {}});

    r.push_back({"third-law", "optimised cold-current scaling over T_c, or a cooling trajectory",
                 {{"dimension", 3.0, {}},
                  {"kappa", 1.0, {}},
                  {"T_c", 0.01, {}},
                  {"eta_cv", 3.0, {}},
                  {"fridge", std::string("universal"), {"universal", "power_driven"}},
                  {"mode", std::string("current"), {"current", "trajectory"}},
                  {"T0", 0.1, {}},
                  {"t_max", 50.0, {}}},
                 [](const Point& p) -> std::vector<std::string> {
                     if (text(p, "mode") == "trajectory")
                         return {"t", "T", "zeta_fit", "zeta_expected", "r_squared", "reached_floor"};
                     return {"J_c", "omega_star", "omega_star_over_T", "exponent", "exponent_stderr", "r_squared"};
                 },
                 nullptr, third_law_all, [](const ExperimentConfig& c) {
                     const double d = std::get<double>(c.params.at("dimension"));
                     if (d < 1.0 || d != std::floor(d)) throw ConfigError("third-law: dimension must be an integer >= 1");
                     if (std::get<std::string>(c.params.at("mode")) == "trajectory") {
                         if (!c.sweep.empty()) throw ConfigError("third-law: trajectory mode takes no sweep");
                         return;
                     }
                     require_single_axis(c, "T_c");
                     const auto& a = c.sweep.front();
                     if (!a.log || a.count < 8 || a.hi < 100.0 * a.lo)
                         throw ConfigError("third-law: T_c sweep must be log-spaced, >= 8 points over >= 2 decades");
                 }, {}});

    r.push_back({"validate-oracle", "closed-form currents against the brute-force Liouvillian on seeded draws",
                 {{"draws", 10.0, {}}, {"max_truncation", 10.0, {}}},
                 [](const Point&) {
                     return with_audit({"omega_h", "omega_c", "epsilon", "T_h", "T_c", "kappa_h", "kappa_c",
                                        "J_h_closed", "J_h_oracle", "dev_J_h", "dev_J_c", "dev_P", "max_dev",
                                        "truncation", "converged"});
                 },
                 validate_oracle, nullptr, [](const ExperimentConfig& c) {
                     const double n = std::get<double>(c.params.at("draws"));
                     const double t = std::get<double>(c.params.at("max_truncation"));
                     if (n < 0.0 || n != std::floor(n)) throw ConfigError("validate-oracle: draws must be an integer >= 0");
                     if (t < 6.0 || t > 10.0 || t != std::floor(t))
                         throw ConfigError("validate-oracle: max_truncation must be an integer in [6, 10]");
                     if (!c.sweep.empty()) throw ConfigError("validate-oracle: draws replace the sweep");
                 },
                 "draws"});
    return r;
}

}  // namespace

const std::vector<Experiment>& registry() {
    static const std::vector<Experiment> r = build_registry();
    return r;
}

const Experiment* find_experiment(const std::string& name) {
    for (const auto& e : registry())
        if (e.name == name) return &e;
    return nullptr;
}

double number(const Point& p, const std::string& key) { return std::get<double>(p.at(key)); }

const std::string& text(const Point& p, const std::string& key) { return std::get<std::string>(p.at(key)); }

}  // namespace qtricycle::cli::detail
