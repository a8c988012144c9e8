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

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cli.hpp"

namespace qtricycle::cli::detail {

using Point = std::map<std::string, ParamValue>;

struct ParamSpec {
    std::string name;
    ParamValue fallback;
    std::vector<std::string> choices;  // text parameters only
};

struct Row {
    std::vector<double> values;  // one per output column
    std::string verdict;         // "pass", "fail(<reason>)", "n/a" or a classification
    std::string failure;         // empty unless the point raised an error
};

struct Experiment {
    std::string name;
    std::string summary;
    std::vector<ParamSpec> params;
    // Output columns; may depend on text parameters (for example a mode switch).
    std::function<std::vector<std::string>(const Point&)> columns;
    // Point-wise evaluation, run in parallel. seed is unique per row.
    std::function<Row(const Point&, std::uint64_t seed)> evaluate;
    // Whole-grid evaluation for experiments that normalise or fit across rows.
    // Returns the rows and, through the last argument, whether sweep columns are
    // emitted (they are not when rows do not correspond to grid points).
    std::function<std::vector<Row>(const Point& base, const std::vector<Point>& grid, std::uint64_t seed,
                                   bool& sweep_columns)>
        evaluate_all;
    // Extra config checks beyond types and names; throws ConfigError.
    std::function<void(const ExperimentConfig&)> check;
    // When set, the grid is this many copies of the base point (one row per
    // seeded draw) and no sweep columns are emitted.
    std::string replicate_param;
};

const std::vector<Experiment>& registry();
const Experiment* find_experiment(const std::string& name);

double number(const Point& p, const std::string& key);
const std::string& text(const Point& p, const std::string& key);

}  // namespace qtricycle::cli::detail
