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

// Brute-force counterpart of the SU(2) closed forms. In the frame rotating
// with the filters the Hamiltonian is eps (a^dag b + a b^dag); the baths act on
// the dressed modes d_{+-} = (a +- b)/sqrt(2) with the off-diagonal terms
// written out explicitly (cold-bath cross terms enter with a minus sign).
// Slowly rotating e^{+-2i eps t} factors are dropped, as the SU(2) equations do.

#include <cmath>

#include "qtricycle/operator_core.hpp"
#include "qtricycle/tricycle_engine.hpp"

namespace qtricycle::engine {

using core::cplx;
using core::LindbladTerm;
using core::Operator;

namespace {

void add_bath(std::vector<LindbladTerm>& terms, const Operator& dp, const Operator& dm, double gamma_plus,
              double gamma_minus, double boltz_plus, double boltz_minus, double cross_sign, const std::string& tag) {
    const Operator dpd = dp.adjoint();
    const Operator dmd = dm.adjoint();
    terms.emplace_back(dp, 0.5 * gamma_plus, tag);
    terms.emplace_back(dpd, 0.5 * gamma_plus * boltz_plus, tag);
    terms.emplace_back(dm, 0.5 * gamma_minus, tag);
    terms.emplace_back(dmd, 0.5 * gamma_minus * boltz_minus, tag);
    for (const auto& [g, b] : {std::pair{gamma_plus, boltz_plus}, std::pair{gamma_minus, boltz_minus}}) {
        if (g == 0.0) continue;
        terms.emplace_back(dm, dp * cplx(cross_sign), 0.25 * g, tag);
        terms.emplace_back(dp, dm * cplx(cross_sign), 0.25 * g, tag);
        terms.emplace_back(dpd, dmd * cplx(cross_sign), 0.25 * g * b, tag);
        terms.emplace_back(dmd, dpd * cplx(cross_sign), 0.25 * g * b, tag);
    }
}

}  // namespace

OracleResult amplifier_oracle(const AmplifierParams& p, int truncation) {
    p.validate();
    if (p.statistics != Statistics::bose) throw DomainError("amplifier_oracle: only bose statistics are supported");
    const int n = truncation;
    core::HilbertSpace space({{"hot", n}, {"cold", n}});
    const Operator a = core::tensor_embed(core::ladder_pair(n, "hot").first, space, "hot");
    const Operator b = core::tensor_embed(core::ladder_pair(n, "cold").first, space, "cold");
    const double s = 1.0 / std::sqrt(2.0);
    const Operator dp = (a + b) * cplx(s);
    const Operator dm = (a - b) * cplx(s);

    const double e = p.epsilon;
    const Operator z = a.adjoint() * b + b.adjoint() * a;
    const Operator x = a.adjoint() * a - b.adjoint() * b;
    const Operator y = (b.adjoint() * a - a.adjoint() * b) * cplx(0.0, 1.0);
    const Operator w = a.adjoint() * a + b.adjoint() * b;
    const Operator h_frame = z * cplx(e);
    const Operator h_energy = a.adjoint() * a * cplx(p.omega_h) + b.adjoint() * b * cplx(p.omega_c) + z * cplx(e);

    std::vector<LindbladTerm> terms;
    add_bath(terms, dp, dm, p.gamma_h_plus, p.gamma_h_minus, std::exp(-(p.omega_h + e) / p.T_h),
             std::exp(-(p.omega_h - e) / p.T_h), 1.0, "hot");
    add_bath(terms, dp, dm, p.gamma_c_plus, p.gamma_c_minus, std::exp(-(p.omega_c + e) / p.T_c),
             std::exp(-(p.omega_c - e) / p.T_c), -1.0, "cold");

    std::vector<int> charge;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) charge.push_back(i + j);
    const auto basis = core::SectorBasis::charge_block(charge);
    const auto l = core::build_liouvillian(h_frame, terms, basis);
    core::SteadyStateOptions opts;
    opts.residual_tol = 1e-9;
    opts.propagation_check_limit = 0;
    const auto rho = core::steady_state(l, opts);

    OracleResult out;
    out.truncation = n;
    out.residual = rho.diagnostics.residual;
    out.min_eigenvalue = rho.min_eigenvalue();
    out.currents.P = core::channel_current(l, core::kCoherentChannel, rho, h_energy);
    out.currents.J_h = core::channel_current(l, "hot", rho, h_energy);
    out.currents.J_c = core::channel_current(l, "cold", rho, h_energy);
    finalize_report(out.currents, p.T_h, p.T_c);
    out.su2 = {core::expectation(w, rho), core::expectation(x, rho), core::expectation(y, rho),
               core::expectation(z, rho)};
    return out;
}

OracleResult amplifier_oracle_converged(const AmplifierParams& p, int initial, int max_truncation, double rel_tol) {
    OracleResult last;
    auto observe = [&](int n) {
        last = amplifier_oracle(p, n);
        const double scale = std::max({std::abs(last.currents.J_h), std::abs(last.currents.J_c), 1e-300});
        // Currents share one scale so a vanishing power does not stall convergence.
        return std::vector<double>{last.currents.P / scale, last.currents.J_h / scale, last.currents.J_c / scale};
    };
    const auto conv = core::converge_truncation(observe, initial, 4, max_truncation, rel_tol, 1.0);
    last.converged = conv.converged;
    last.max_rel_change = conv.max_rel_change;
    return last;
}

}  // namespace qtricycle::engine
