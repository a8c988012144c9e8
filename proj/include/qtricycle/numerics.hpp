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

// Grid-seeded 1-d maximization and first-root search. Thin wrappers over
// Boost.Math (Brent's golden-section/parabolic minimizer and TOMS 748).

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

namespace qtricycle::numerics {

struct Maximum {
    double x = 0.0;
    double value = 0.0;
    bool interior = false;  // false when the best grid point sits on the boundary
};

inline std::vector<double> grid(double lo, double hi, int n, bool log_spaced) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double t = n == 1 ? 0.0 : static_cast<double>(k) / (n - 1);
        g[k] = log_spaced ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    }
    return g;
}

// Seeds on an n-point grid, then refines the best cell with Brent's method to
// ~2^-bits relative accuracy in x.
inline Maximum maximize(const std::function<double(double)>& f, double lo, double hi, int n = 64,
                        bool log_spaced = false, int bits = 40) {
    const auto g = grid(lo, hi, n, log_spaced);
    std::size_t best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double v = f(g[k]);
        if (v > best_val) {
            best_val = v;
            best = k;
        }
    }
    const double a = g[best == 0 ? 0 : best - 1];
    const double b = g[best + 1 >= g.size() ? g.size() - 1 : best + 1];
    std::uintmax_t iters = 500;
    auto r = boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, a, b, bits, iters);
    Maximum m{r.first, -r.second, best != 0 && best + 1 != g.size()};
    if (best_val > m.value) {
        m.x = g[best];
        m.value = best_val;
    }
    return m;
}

// Smallest root of f in (lo, hi): scans n points for the first sign change and
// polishes it with TOMS 748. Returns nullopt when no sign change is seen.
inline std::optional<double> first_root(const std::function<double(double)>& f, double lo, double hi,
                                        int n = 400, bool log_spaced = false, double rel_tol = 1e-15) {
    const auto g = grid(lo, hi, n, log_spaced);
    double prev_x = g[0];
    double prev_f = f(prev_x);
    if (prev_f == 0.0) return prev_x;
    for (std::size_t k = 1; k < g.size(); ++k) {
        const double fx = f(g[k]);
        if (fx == 0.0) return g[k];
        if ((fx < 0.0) != (prev_f < 0.0)) {
            std::uintmax_t iters = 200;
            auto tol = [rel_tol](double u, double v) { return std::abs(u - v) <= rel_tol * std::max(std::abs(u), std::abs(v)); };
            auto r = boost::math::tools::toms748_solve(f, prev_x, g[k], prev_f, fx, tol, iters);
            const double x = 0.5 * (r.first + r.second);
            return x;
        }
        prev_x = g[k];
        prev_f = fx;
    }
    return std::nullopt;
}

}  // namespace qtricycle::numerics
