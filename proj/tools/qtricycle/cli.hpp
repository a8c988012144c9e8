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

// Batch front end: experiment configs, sweeps and table emission.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qtricycle::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kUnits = "hbar = k_B = 1; frequencies, temperatures and rates share one unit";

enum ExitCode : int { kOk = 0, kAllRowsFailed = 1, kConfigError = 2, kIoError = 3 };

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct SweepAxis {
    std::string param;
    double lo = 0.0;
    double hi = 0.0;
    int count = 2;
    bool log = false;
    std::vector<double> values() const;
};

using ParamValue = std::variant<double, std::string>;

struct ExperimentConfig {
    std::string raw;  // config text exactly as read
    std::string experiment;
    std::map<std::string, ParamValue> params;  // defaults merged with the file
    std::vector<SweepAxis> sweep;              // Cartesian product, first axis slowest
    std::optional<std::string> output;
    std::optional<Format> format;
    std::uint64_t seed = 0;
    std::optional<int> parallelism;
};

// Parses and validates; throws ConfigError with a message naming the offending key.
ExperimentConfig parse_config(const std::string& text);

struct ExperimentInfo {
    std::string name;
    std::string summary;
};
std::vector<ExperimentInfo> list_experiments();

// Named columns of equal length; numeric or text.
struct Column {
    std::string name;
    std::variant<std::vector<double>, std::vector<std::string>> data;
    std::size_t size() const;
};

struct ResultTable {
    std::vector<Column> columns;
    std::string config_raw;
    std::string experiment;
    std::uint64_t seed = 0;
    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    std::size_t failed_rows = 0;
};

// Evaluates every sweep point with the given number of worker threads. Row
// order follows the grid, so the table does not depend on the thread count.
ResultTable run(const ExperimentConfig& config, int parallelism);

// Shortest decimal that parses back to the same double; nan, inf, -inf otherwise.
std::string format_double(double v);

std::string to_csv(const ResultTable& t);
std::string to_json(const ResultTable& t);
// Inverses of the emitters, used for round-trip checks and post-processing.
// Column types are recovered from the values: a column is numeric when every
// cell parses as a number.
ResultTable from_csv(const std::string& text);
ResultTable from_json(const std::string& text);

// Writes the table; csv output also gets a sidecar <path>.meta.json with the
// metadata. Throws IoError.
void emit(const ResultTable& t, Format format, const std::string& path);
std::string metadata_json(const ResultTable& t);

// Parallelism from the environment (QTRICYCLE_THREADS), or 1.
int default_parallelism();

}  // namespace qtricycle::cli
