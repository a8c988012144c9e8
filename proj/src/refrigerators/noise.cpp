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

// Noise-driven two-oscillator fridges.
//
// With a static swap term eps X the oscillators are diagonalised into dressed
// modes A_1 (Omega_+) and A_2 (Omega_-); each bath damps both at its dressed
// frequency, weighted by the mode overlap. Every generator here keeps the
// quadratic observables A_k^dag A_l closed, so the steady state follows from a
// 4x4 linear system for the correlation matrix C_kl = <A_k^dag A_l>.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "internal.hpp"

namespace qtricycle::fridge {

using core::cplx;
using core::LindbladTerm;
using core::Operator;
using detail::require_positive;

namespace {

using Mat2 = Eigen::Matrix2cd;

void validate_noise_params(const FridgeParams& p, double eta) {
    p.validate();
    if (p.statistics != Statistics::bose) throw DomainError("noise-driven fridges are bosonic");
    if (!(eta >= 0.0)) throw DomainError("noise strength eta must be non-negative");
}

Mat2 double_commutator(const Mat2& w, const Mat2& o) {
    const Mat2 c = w * o - o * w;
    return w * c - c * w;
}

struct DressedBaths {
    std::array<double, 2> omega;    // Omega_+, Omega_-
    std::array<double, 2> kappa_h;  // per dressed mode
    std::array<double, 2> kappa_c;
    std::array<double, 2> n_h;
    std::array<double, 2> n_c;
};

DressedBaths dressed_baths(const FridgeParams& p, const DressedPair& d) {
    const double c2 = std::cos(d.theta) * std::cos(d.theta);
    const double s2 = std::sin(d.theta) * std::sin(d.theta);
    DressedBaths b;
    b.omega = {d.Omega_plus, d.Omega_minus};
    b.kappa_h = {p.Gamma_h * c2, p.Gamma_h * s2};
    b.kappa_c = {p.Gamma_c * s2, p.Gamma_c * c2};
    for (int k = 0; k < 2; ++k) {
        b.n_h[k] = detail::bose(b.omega[k], p.T_h);
        b.n_c[k] = detail::bose(b.omega[k], p.T_c);
    }
    return b;
}

}  // namespace

CurrentsReport gaussian_noise_cooling(const FridgeParams& p, double eta) {
    validate_noise_params(p, eta);
    const double gbar = p.Gamma_h * p.Gamma_c / (p.Gamma_h + p.Gamma_c);
    const double g = eta == 0.0 ? 0.0 : 2.0 * eta * gbar / (2.0 * eta + gbar);
    const double flux = g * (detail::bose(p.omega_c, p.T_c) - detail::bose(p.omega_h, p.T_h));
    CurrentsReport r;
    r.J_c = p.omega_c * flux;
    r.J_h = -p.omega_h * flux;
    r.J_w = p.nu() * flux;
    detail::finalize_absorption(r, p.T_h, p.T_c, kInfinity);
    return r;
}

CurrentsReport gaussian_noise_cooling(const FridgeParams& p, const NoiseSpec& noise) {
    if (noise.kind != NoiseSpec::Kind::gaussian_white) throw DomainError("expected gaussian white noise");
    return gaussian_noise_cooling(p, noise.eta);
}

DressedPair dressed_pair(double omega_h, double omega_c, double epsilon) {
    require_positive(omega_h, "omega_h");
    require_positive(omega_c, "omega_c");
    if (!(omega_h * omega_c > epsilon * epsilon))
        throw DomainError("dressed modes need omega_h omega_c > epsilon^2 (Omega_- would not be positive)");
    const double nu = omega_h - omega_c;
    const double root = std::hypot(0.5 * nu, epsilon);
    DressedPair d;
    d.Omega_plus = 0.5 * (omega_h + omega_c) + root;
    // Same value as mean - root, without the cancellation near the boundary.
    d.Omega_minus = (omega_h * omega_c - epsilon * epsilon) / d.Omega_plus;
    d.theta = 0.5 * std::atan2(2.0 * epsilon, nu);
    return d;
}

DressedNoiseReport dressed_noise_cooling(const FridgeParams& p, double epsilon, double eta) {
    validate_noise_params(p, eta);
    const DressedPair d = dressed_pair(p.omega_h, p.omega_c, epsilon);
    const DressedBaths b = dressed_baths(p, d);
    const double s = std::sin(2.0 * d.theta);
    const double c = std::cos(2.0 * d.theta);

    Mat2 h = Mat2::Zero();
    h(0, 0) = b.omega[0];
    h(1, 1) = b.omega[1];
    Mat2 w;
    w << s, c, c, -s;
    const Mat2 kap = Mat2(Eigen::Vector2cd(b.kappa_h[0] + b.kappa_c[0], b.kappa_h[1] + b.kappa_c[1]).asDiagonal());

    // Heisenberg generator on o in A^dag o A, plus the constant from the baths.
    auto generator = [&](const Mat2& o) -> Mat2 {
        return cplx(0.0, 1.0) * (h * o - o * h) - eta * double_commutator(w, o) - 0.5 * (kap * o + o * kap);
    };
    auto constant = [&](const Mat2& o) {
        double sum = 0.0;
        for (int k = 0; k < 2; ++k) sum += o(k, k).real() * (b.kappa_h[k] * b.n_h[k] + b.kappa_c[k] * b.n_c[k]);
        return sum;
    };

    // Unknowns C_mn in column-major order; row (k, l) is <L*(|k><l|)> = 0.
    Eigen::Matrix4cd m;
    Eigen::Vector4cd rhs;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            Mat2 e = Mat2::Zero();
            e(k, l) = 1.0;
            const Mat2 g = generator(e);
            const int row = k + 2 * l;
            for (int mm = 0; mm < 2; ++mm)
                for (int nn = 0; nn < 2; ++nn) m(row, mm + 2 * nn) = g(mm, nn);
            rhs(row) = -constant(e);
        }
    }
    const Eigen::Vector4cd sol = m.fullPivLu().solve(rhs);
    Mat2 corr;
    corr << sol(0), sol(2), sol(1), sol(3);
    if ((m * sol - rhs).norm() > 1e-9 * (1.0 + rhs.norm()))
        throw NumericalError("dressed noise fridge: singular correlation system");

    DressedNoiseReport out;
    out.pair = d;
    out.epsilon = epsilon;
    out.eta = eta;
    out.cop_dressed_otto = d.Omega_minus / (d.Omega_plus - d.Omega_minus);
    for (int k = 0; k < 2; ++k) {
        const double nk = corr(k, k).real();
        out.currents.J_h += b.omega[k] * b.kappa_h[k] * (b.n_h[k] - nk);
        out.currents.J_c += b.omega[k] * b.kappa_c[k] * (b.n_c[k] - nk);
    }
    const Mat2 noise_h = -eta * double_commutator(w, h);
    cplx jw = 0.0;
    for (int mm = 0; mm < 2; ++mm)
        for (int nn = 0; nn < 2; ++nn) jw += noise_h(mm, nn) * corr(mm, nn);
    out.currents.J_w = jw.real();
    detail::finalize_absorption(out.currents, p.T_h, p.T_c, kInfinity);
    return out;
}

// ---------------------------------------------------------------- poisson

namespace {

// Averages <2 xi - sin 2 xi> and <1 - cos 2 xi> over the impulse density, closed form.
std::pair<double, double> impulse_averages(const ImpulseDistribution& dist) {
    const double x = dist.xi0;
    switch (dist.kind) {
        case ImpulseDistribution::Kind::delta:
            return {2.0 * x - std::sin(2.0 * x), 1.0 - std::cos(2.0 * x)};
        case ImpulseDistribution::Kind::normal: {
            const double damp = std::exp(-2.0 * dist.sigma * dist.sigma);
            return {2.0 * x - damp * std::sin(2.0 * x), 1.0 - damp * std::cos(2.0 * x)};
        }
        default: {
            // The exponential shift is taken as printed; the quadrature variant
            // gives 8 xi0^3 / (1 + 4 xi0^2) for the first average instead.
            const double x2 = x * x;
            return {x * x2 / (2.0 * (1.0 + x2)), 4.0 * x2 / (1.0 + 4.0 * x2)};
        }
    }
}

void validate_impulses(const ImpulseDistribution& dist, double lambda) {
    if (!(lambda >= 0.0)) throw DomainError("poisson event rate lambda must be non-negative");
    if (!std::isfinite(dist.xi0)) throw DomainError("impulse strength xi0 must be finite");
    if (dist.kind == ImpulseDistribution::Kind::normal && !(dist.sigma >= 0.0))
        throw DomainError("impulse spread sigma must be non-negative");
    if (dist.kind == ImpulseDistribution::Kind::exponential && !(dist.xi0 > 0.0))
        throw DomainError("exponential impulses need xi0 > 0");
}

}  // namespace

PoissonShift poisson_noise_params(const ImpulseDistribution& dist, double lambda) {
    validate_impulses(dist, lambda);
    const auto [shift, noise] = impulse_averages(dist);
    return {-0.5 * lambda * shift, 0.25 * lambda * noise};
}

PoissonShift poisson_noise_params_quadrature(const ImpulseDistribution& dist, double lambda) {
    validate_impulses(dist, lambda);
    using K = ImpulseDistribution::Kind;
    if (dist.kind == K::delta || (dist.kind == K::normal && dist.sigma == 0.0))
        return poisson_noise_params({K::delta, dist.xi0, 0.0}, lambda);

    double shift = 0.0;
    double noise = 0.0;
    if (dist.kind == K::exponential) {
        const double x0 = dist.xi0;
        boost::math::quadrature::exp_sinh<double> integrator;
        shift = integrator.integrate([&](double x) { return std::exp(-x / x0) / x0 * (2.0 * x - std::sin(2.0 * x)); });
        noise = integrator.integrate([&](double x) { return std::exp(-x / x0) / x0 * (1.0 - std::cos(2.0 * x)); });
    } else {
        const double mu = dist.xi0;
        const double sg = dist.sigma;
        auto pdf = [&](double x) {
            const double z = (x - mu) / sg;
            return std::exp(-0.5 * z * z) / (sg * std::sqrt(2.0 * std::numbers::pi));
        };
        using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
        // Split the +-12 sigma window so each panel sees a few oscillations at most.
        const int panels = std::max(8, static_cast<int>(std::ceil(24.0 * sg)));
        const double lo = mu - 12.0 * sg;
        const double width = 24.0 * sg / panels;
        for (int k = 0; k < panels; ++k) {
            const double a = lo + k * width;
            shift += GK::integrate([&](double x) { return pdf(x) * (2.0 * x - std::sin(2.0 * x)); }, a, a + width, 8);
            noise += GK::integrate([&](double x) { return pdf(x) * (1.0 - std::cos(2.0 * x)); }, a, a + width, 8);
        }
    }
    return {-0.5 * lambda * shift, 0.25 * lambda * noise};
}

double poisson_lambda_max(const ImpulseDistribution& dist, double omega_h, double omega_c) {
    require_positive(omega_h, "omega_h");
    require_positive(omega_c, "omega_c");
    const double unit = std::abs(poisson_noise_params(dist, 1.0).epsilon);
    if (unit == 0.0) return kInfinity;
    return std::sqrt(omega_h * omega_c) / unit;
}

DressedNoiseReport poisson_noise_cooling(const FridgeParams& p, const NoiseSpec& noise) {
    if (noise.kind != NoiseSpec::Kind::poisson) throw DomainError("expected poisson noise");
    const auto shift = poisson_noise_params(noise.impulses, noise.lambda);
    return dressed_noise_cooling(p, shift.epsilon, shift.eta);
}

// ---------------------------------------------------------------- oracles

namespace {

struct TwoModes {
    core::HilbertSpace space;
    Operator a, b;
    core::SectorBasis basis;
};

TwoModes two_modes(int n) {
    if (n < 2) throw DomainError("oracle truncation must be at least 2");
    core::HilbertSpace space({{"hot", n}, {"cold", n}});
    std::vector<int> charge;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) charge.push_back(i + j);
    return {space, core::tensor_embed(core::ladder_pair(n, "hot").first, space, "hot"),
            core::tensor_embed(core::ladder_pair(n, "cold").first, space, "cold"),
            core::SectorBasis::charge_block(charge)};
}

void add_thermal(std::vector<LindbladTerm>& terms, const Operator& lower, double kappa, double n, const char* tag) {
    if (kappa == 0.0) return;
    terms.emplace_back(lower, kappa * (n + 1.0), tag);
    terms.emplace_back(lower.adjoint(), kappa * n, tag);
}

NoiseOracleResult solve_oracle(const Operator& h, const std::vector<LindbladTerm>& terms, const TwoModes& m,
                               double T_h, double T_c, double T_w, int truncation) {
    const auto l = core::build_liouvillian(h, terms, m.basis);
    core::SteadyStateOptions opts;
    opts.residual_tol = 1e-9;
    opts.propagation_check_limit = 0;
    const auto rho = core::steady_state(l, opts);
    NoiseOracleResult out;
    out.truncation = truncation;
    out.min_eigenvalue = rho.min_eigenvalue();
    out.currents.J_h = core::channel_current(l, "hot", rho, h);
    out.currents.J_c = core::channel_current(l, "cold", rho, h);
    out.currents.J_w = core::channel_current(l, "work", rho, h);
    detail::finalize_absorption(out.currents, T_h, T_c, T_w);
    return out;
}

NoiseOracleResult converged(const std::function<NoiseOracleResult(int)>& run, int initial, int max_truncation,
                            double rel_tol) {
    NoiseOracleResult last;
    double scale = 0.0;
    auto observe = [&](int n) {
        last = run(n);
        // Fixed scale from the first run: the current ratios alone may not move with truncation.
        if (scale == 0.0) scale = std::max({std::abs(last.currents.J_h), std::abs(last.currents.J_c), 1e-300});
        return std::vector<double>{last.currents.J_h / scale, last.currents.J_c / scale, last.currents.J_w / scale};
    };
    const auto conv = core::converge_truncation(observe, initial, 2, max_truncation, rel_tol, 1.0);
    last.converged = conv.converged;
    last.max_rel_change = conv.max_rel_change;
    return last;
}

}  // namespace

NoiseOracleResult dressed_noise_oracle(const FridgeParams& p, double epsilon, double eta, int truncation) {
    validate_noise_params(p, eta);
    const DressedPair d = dressed_pair(p.omega_h, p.omega_c, epsilon);
    const DressedBaths bath = dressed_baths(p, d);
    const auto m = two_modes(truncation);
    const double c = std::cos(d.theta);
    const double s = std::sin(d.theta);
    const Operator x = m.a.adjoint() * m.b + m.b.adjoint() * m.a;
    const Operator h = m.a.adjoint() * m.a * cplx(p.omega_h) + m.b.adjoint() * m.b * cplx(p.omega_c) + x * cplx(epsilon);
    const std::array<Operator, 2> modes = {m.a * cplx(c) + m.b * cplx(s), m.b * cplx(c) - m.a * cplx(s)};

    std::vector<LindbladTerm> terms;
    for (int k = 0; k < 2; ++k) {
        add_thermal(terms, modes[k], bath.kappa_h[k], bath.n_h[k], "hot");
        add_thermal(terms, modes[k], bath.kappa_c[k], bath.n_c[k], "cold");
    }
    if (eta > 0.0) terms.emplace_back(x, 2.0 * eta, "work");
    return solve_oracle(h, terms, m, p.T_h, p.T_c, kInfinity, truncation);
}

NoiseOracleResult gaussian_noise_oracle(const FridgeParams& p, double eta, int truncation) {
    return dressed_noise_oracle(p, 0.0, eta, truncation);
}

NoiseOracleResult gaussian_noise_oracle_converged(const FridgeParams& p, double eta, int initial, int max_truncation,
                                                  double rel_tol) {
    return converged([&](int n) { return gaussian_noise_oracle(p, eta, n); }, initial, max_truncation, rel_tol);
}

NoiseOracleResult work_bath_oracle(const FridgeParams& p, double eta, double T_w, int truncation) {
    validate_noise_params(p, eta);
    require_positive(eta, "eta");
    require_positive(T_w, "T_w");
    if (std::isinf(T_w)) throw DomainError("work_bath_oracle needs a finite T_w");
    if (!(p.omega_h > p.omega_c)) throw DomainError("work bath needs omega_h > omega_c");
    const auto m = two_modes(truncation);
    const Operator h = m.a.adjoint() * m.a * cplx(p.omega_h) + m.b.adjoint() * m.b * cplx(p.omega_c);
    std::vector<LindbladTerm> terms;
    add_thermal(terms, m.a, p.Gamma_h, detail::bose(p.omega_h, p.T_h), "hot");
    add_thermal(terms, m.b, p.Gamma_c, detail::bose(p.omega_c, p.T_c), "cold");
    // b^dag a lowers the energy by omega_h - omega_c; Gamma_w N_w is pinned to 2 eta.
    const double n_w = detail::bose(p.nu(), T_w);
    add_thermal(terms, m.b.adjoint() * m.a, 2.0 * eta / n_w, n_w, "work");
    return solve_oracle(h, terms, m, p.T_h, p.T_c, T_w, truncation);
}

WorkBathLimit work_bath_infinite_temperature(const FridgeParams& p, double eta, double T_w_start, int truncation) {
    require_positive(T_w_start, "T_w_start");
    WorkBathLimit out;
    std::array<CurrentsReport, 3> r;
    for (int k = 0; k < 3; ++k) {
        const double t = T_w_start * std::ldexp(1.0, k);
        r[k] = work_bath_oracle(p, eta, t, truncation).currents;
        out.T_w.push_back(t);
        out.J_c.push_back(r[k].J_c);
    }
    // Two Richardson steps in h = 1 / T_w, halving h each time.
    auto extrapolate = [&](double CurrentsReport::*f) {
        const double r1a = 2.0 * (r[1].*f) - (r[0].*f);
        const double r1b = 2.0 * (r[2].*f) - (r[1].*f);
        return (4.0 * r1b - r1a) / 3.0;
    };
    out.extrapolated.J_h = extrapolate(&CurrentsReport::J_h);
    out.extrapolated.J_c = extrapolate(&CurrentsReport::J_c);
    out.extrapolated.J_w = extrapolate(&CurrentsReport::J_w);
    detail::finalize_absorption(out.extrapolated, p.T_h, p.T_c, kInfinity);
    return out;
}

}  // namespace qtricycle::fridge
