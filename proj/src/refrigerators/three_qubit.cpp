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

// Three-qubit absorption refrigerator. Each bath couples through sigma_x of
// its qubit; in the global construction that operator is split into
// eigen-transitions A(omega) grouped by Bohr frequency, each damped with
// detailed-balance rates. Zero-frequency parts carry no heat and are dropped.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "internal.hpp"

namespace qtricycle::fridge {

using core::cplx;
using core::Matrix;
using core::Operator;
using detail::require_positive;

namespace {

const char* bath_label(Bath b) {
    switch (b) {
        case Bath::hot: return "hot";
        case Bath::cold: return "cold";
        default: return "work";
    }
}

const BathSpec& bath_spec(const ThreeQubitParams& p, Bath b) {
    switch (b) {
        case Bath::hot: return p.hot;
        case Bath::cold: return p.cold;
        default: return p.work;
    }
}

core::HilbertSpace qubits() { return core::HilbertSpace({{"hot", 2}, {"cold", 2}, {"work", 2}}); }

Operator embed(Operator (*make)(const std::string&), const char* label) {
    return core::tensor_embed(make(label), qubits(), label);
}

Operator sigma_x(const char* label) { return embed(core::sigma_plus, label) + embed(core::sigma_minus, label); }

// Table states |h, c, w>, index h*4 + c*2 + w.
std::array<core::Vector, 8> table_states() {
    std::array<core::Vector, 8> t;
    for (auto& v : t) v = core::Vector::Zero(8);
    const double s = 1.0 / std::sqrt(2.0);
    t[0](0) = 1.0;                 // |000>
    t[1](2) = 1.0;                 // |010>
    t[2](1) = 1.0;                 // |001>
    t[3](3) = s, t[3](4) = s;      // (|011> + |100>)/sqrt2
    t[4](3) = s, t[4](4) = -s;     // (|011> - |100>)/sqrt2
    t[5](6) = 1.0;                 // |110>
    t[6](5) = 1.0;                 // |101>
    t[7](7) = 1.0;                 // |111>
    return t;
}

double energy_scale(const ThreeQubitParams& p) { return 2.0 * p.omega_h + p.epsilon; }

struct Cluster {
    double energy;
    Matrix projector;
};

// Groups eigenvalues closer than 1e-12 of the scale into degenerate clusters;
// spacings in (1e-12, 1e-9] of the scale are rejected as near-degenerate.
std::vector<Cluster> eigen_clusters(const Matrix& h, double scale, double& min_gap) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    std::vector<Cluster> out;
    min_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < vals.size(); ++k) {
        const Matrix proj = vecs.col(k) * vecs.col(k).adjoint();
        if (!out.empty()) {
            const double gap = vals(k) - out.back().energy;
            if (gap <= 1e-12 * scale) {
                out.back().projector += proj;
                continue;
            }
            if (gap <= 1e-9 * scale)
                throw DomainError("three-qubit levels within 1e-9 of each other: secular generator ill-defined");
            min_gap = std::min(min_gap, gap);
        }
        out.push_back({vals(k), proj});
    }
    return out;
}

struct Transition {
    double omega;
    Matrix lowering;
};

// sigma_x of one qubit split into lowering parts grouped by Bohr frequency.
std::vector<Transition> transitions(const std::vector<Cluster>& clusters, const Matrix& s, double scale) {
    std::vector<Transition> out;
    for (std::size_t a = 0; a < clusters.size(); ++a) {
        for (std::size_t b = a + 1; b < clusters.size(); ++b) {
            const Matrix part = clusters[a].projector * s * clusters[b].projector;
            if (part.norm() < 1e-12) continue;
            const double w = clusters[b].energy - clusters[a].energy;
            auto it = std::find_if(out.begin(), out.end(),
                                   [&](const Transition& t) { return std::abs(t.omega - w) <= 1e-9 * scale; });
            if (it == out.end()) out.push_back({w, part});
            else it->lowering += part;
        }
    }
    return out;
}

double spectral_rate(const BathSpec& b, double omega) { return b.gamma * std::pow(omega, b.spectral_exponent); }

}  // namespace

void ThreeQubitParams::validate() const {
    require_positive(omega_h, "omega_h");
    require_positive(omega_c, "omega_c");
    require_positive(nu, "nu");
    if (epsilon < 0.0) throw DomainError("epsilon must be non-negative");
    if (std::abs(omega_h - omega_c - nu) > 1e-12 * omega_h)
        throw DomainError("three-qubit fridge needs resonance omega_h = omega_c + nu");
    if (work_noise_eta) require_positive(*work_noise_eta, "work noise strength");
    for (const BathSpec* b : {&hot, &cold, &work}) {
        if (b == &work && work_noise_eta) continue;
        require_positive(b->T, "bath temperature");
        require_positive(b->gamma, "bath rate");
        if (std::isinf(b->T)) throw DomainError("three-qubit baths need finite temperatures");
    }
}

Operator three_qubit_hamiltonian(const ThreeQubitParams& p) {
    const Operator hf = embed(core::excitation, "hot") * cplx(p.omega_h) +
                        embed(core::excitation, "cold") * cplx(p.omega_c) +
                        embed(core::excitation, "work") * cplx(p.nu);
    const Operator flip = embed(core::sigma_plus, "hot") * embed(core::sigma_minus, "cold") *
                          embed(core::sigma_minus, "work");
    return hf + (flip + flip.adjoint()) * cplx(p.epsilon);
}

std::array<double, 8> three_qubit_printed_levels(const ThreeQubitParams& p) {
    return {0.0,
            p.omega_c,
            p.nu,
            p.nu + p.epsilon,
            p.nu - p.epsilon,
            p.omega_c + p.omega_h,
            p.omega_h + p.nu,
            2.0 * p.omega_h};
}

std::array<double, 8> three_qubit_corrected_levels(const ThreeQubitParams& p) {
    auto l = three_qubit_printed_levels(p);
    l[3] = p.omega_h + p.epsilon;
    l[4] = p.omega_h - p.epsilon;
    return l;
}

std::array<double, 8> three_qubit_exact_levels(const ThreeQubitParams& p) {
    p.validate();
    const Matrix h = three_qubit_hamiltonian(p).matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const auto t = table_states();
    std::array<double, 8> out{};
    for (int k = 0; k < 8; ++k) {
        int best = 0;
        double best_overlap = -1.0;
        for (int j = 0; j < 8; ++j) {
            const double o = std::norm(t[k].dot(es.eigenvectors().col(j)));
            if (o > best_overlap) {
                best_overlap = o;
                best = j;
            }
        }
        out[k] = es.eigenvalues()(best);
    }
    return out;
}

std::vector<LevelPair> three_qubit_channel_pairs(const ThreeQubitParams& p, Bath bath) {
    p.validate();
    const Matrix s = sigma_x(bath_label(bath)).matrix();
    const auto t = table_states();
    std::vector<LevelPair> out;
    for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b)
            if (std::abs(t[a].dot(s * t[b])) > 1e-12) out.emplace_back(a + 1, b + 1);
    return out;
}

std::vector<LevelPair> printed_cold_pairs() { return {{1, 2}, {3, 4}, {3, 5}, {4, 8}, {5, 8}}; }

std::vector<LevelPair> corrected_cold_pairs() { return {{1, 2}, {3, 4}, {3, 5}, {4, 6}, {5, 6}, {7, 8}}; }

ThreeQubitReport three_qubit_fridge(const ThreeQubitParams& p) {
    p.validate();
    const auto space = qubits();
    const Operator h = three_qubit_hamiltonian(p);
    const double scale = energy_scale(p);

    ThreeQubitReport out;
    const auto clusters = eigen_clusters(h.matrix(), scale, out.min_level_gap);

    std::vector<core::LindbladTerm> terms;
    for (Bath b : {Bath::hot, Bath::cold, Bath::work}) {
        const BathSpec& spec = bath_spec(p, b);
        const char* tag = bath_label(b);
        const bool noise = b == Bath::work && p.work_noise_eta;
        if (p.local_known_inconsistent) {
            const double w = b == Bath::hot ? p.omega_h : (b == Bath::cold ? p.omega_c : p.nu);
            const double g = noise ? 2.0 * *p.work_noise_eta : spectral_rate(spec, w);
            const double n = noise ? 0.0 : detail::bose(w, spec.T);
            const double down = g * (n + 1.0);
            const double up = noise ? down : g * n;
            terms.emplace_back(embed(core::sigma_minus, tag), down, tag);
            terms.emplace_back(embed(core::sigma_plus, tag), up, tag);
            continue;
        }
        for (const auto& tr : transitions(clusters, sigma_x(tag).matrix(), scale)) {
            const Operator a(space, tr.lowering);
            if (noise) {
                terms.emplace_back(a, 2.0 * *p.work_noise_eta, tag);
                terms.emplace_back(a.adjoint(), 2.0 * *p.work_noise_eta, tag);
                continue;
            }
            const double g = spectral_rate(spec, tr.omega);
            const double n = detail::bose(tr.omega, spec.T);
            terms.emplace_back(a, g * (n + 1.0), tag);
            terms.emplace_back(a.adjoint(), g * n, tag);
        }
    }

    const auto l = core::build_liouvillian(h, terms);
    core::SteadyStateOptions opts;
    opts.propagation_check_limit = 0;  // rcond screening only; this runs inside large sweeps
    const auto rho = core::steady_state(l, opts);
    out.min_eigenvalue = rho.min_eigenvalue();
    out.residual = rho.diagnostics.residual;
    out.levels = three_qubit_exact_levels(p);
    out.currents.J_h = core::channel_current(l, "hot", rho, h);
    out.currents.J_c = core::channel_current(l, "cold", rho, h);
    out.currents.J_w = core::channel_current(l, "work", rho, h);
    detail::finalize_absorption(out.currents, p.hot.T, p.cold.T, p.work_noise_eta ? kInfinity : p.work.T);
    return out;
}

}  // namespace qtricycle::fridge
