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
#include <array>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

#include "experiments.hpp"

namespace qtricycle::cli {

namespace {

using detail::Point;
using detail::Row;

std::uint64_t row_seed(std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(std::uint64_t(index) >> 32)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (std::uint64_t(out[0]) << 32) | out[1];
}

// Cartesian product, first axis slowest.
std::vector<Point> build_grid(const Point& base, const std::vector<SweepAxis>& sweep) {
    std::vector<Point> grid{base};
    for (const auto& axis : sweep) {
        const auto vs = axis.values();
        std::vector<Point> next;
        next.reserve(grid.size() * vs.size());
        for (const auto& p : grid)
            for (double v : vs) {
                Point q = p;
                q[axis.param] = v;
                next.push_back(std::move(q));
            }
        grid = std::move(next);
    }
    return grid;
}

Row failed(std::size_t width, const std::string& message) {
    Row r;
    r.values.assign(width, std::numeric_limits<double>::quiet_NaN());
    r.verdict = "fail(error)";
    r.failure = message.empty() ? "error" : message;
    return r;
}

Row guarded(const detail::Experiment& e, const Point& p, std::uint64_t seed, std::size_t width) {
    try {
        Row r = e.evaluate(p, seed);
        if (r.values.size() != width) return failed(width, "internal: column count mismatch");
        return r;
    } catch (const std::exception& ex) {
        return failed(width, ex.what());
    }
}

std::vector<Row> parallel_map(const detail::Experiment& e, const std::vector<Point>& grid, std::uint64_t seed,
                              std::size_t width, int parallelism) {
    std::vector<Row> rows(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) rows[i] = guarded(e, grid[i], row_seed(seed, i), width);
    };
    const auto n = static_cast<std::size_t>(std::max(1, parallelism));
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < std::min(n, grid.size()); ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rows;
}

}  // namespace

std::size_t Column::size() const {
    return std::visit([](const auto& v) { return v.size(); }, data);
}

ResultTable run(const ExperimentConfig& config, int parallelism) {
    const auto* e = detail::find_experiment(config.experiment);
    if (!e) throw ConfigError("experiment: unknown '" + config.experiment + "'");
    const Point base(config.params.begin(), config.params.end());
    const auto names = e->columns(base);
    const std::size_t width = names.size();

    bool sweep_columns = true;
    bool draw_column = false;
    std::vector<Point> grid;
    if (!e->replicate_param.empty()) {
        grid.assign(static_cast<std::size_t>(detail::number(base, e->replicate_param)), base);
        sweep_columns = false;
        draw_column = true;
    } else {
        grid = build_grid(base, config.sweep);
    }

    std::vector<Row> rows;
    if (e->evaluate_all) {
        try {
            rows = e->evaluate_all(base, grid, config.seed, sweep_columns);
            if (sweep_columns && rows.size() != grid.size()) throw std::logic_error("internal: row count mismatch");
            for (auto& r : rows)
                if (r.values.size() != width) r = failed(width, "internal: column count mismatch");
        } catch (const std::exception& ex) {
            // A whole-grid evaluation fails as one unit; every row carries the message.
            rows.assign(sweep_columns ? grid.size() : 1, failed(width, ex.what()));
        }
    } else {
        rows = parallel_map(*e, grid, config.seed, width, parallelism);
    }

    ResultTable t;
    t.experiment = config.experiment;
    t.config_raw = config.raw;
    t.seed = config.seed;
    if (draw_column) {
        std::vector<double> idx(rows.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
        t.columns.push_back({"draw", idx});
    }
    if (sweep_columns)
        for (const auto& axis : config.sweep) {
            std::vector<double> v;
            for (const auto& p : grid) v.push_back(detail::number(p, axis.param));
            t.columns.push_back({axis.param, v});
        }
    for (std::size_t c = 0; c < width; ++c) {
        std::vector<double> v;
        for (const auto& r : rows) v.push_back(r.values[c]);
        t.columns.push_back({names[c], v});
    }
    std::vector<std::string> verdict, failure;
    for (const auto& r : rows) {
        verdict.push_back(r.verdict);
        failure.push_back(r.failure);
        if (!r.failure.empty()) ++t.failed_rows;
    }
    t.columns.push_back({"verdict", verdict});
    t.columns.push_back({"failure", failure});
    return t;
}

int default_parallelism() {
    const char* env = std::getenv("QTRICYCLE_THREADS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) return 1;
    return static_cast<int>(std::min(v, 1024L));
}

}  // namespace qtricycle::cli
