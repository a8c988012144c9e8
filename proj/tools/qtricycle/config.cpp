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

// Config documents are JSON objects:
//
//   {
//     "experiment": "<name>",
//     "params":   { "<name>": <number or string>, ... },
//     "sweep":    [ { "param": "<name>", "lo": x, "hi": y, "count": n,
//                     "spacing": "linear" | "log" }, ... ],
//     "output":   "<path>",
//     "format":   "csv" | "json",
//     "seed":     <non-negative integer>,
//     "parallelism": <positive integer>
//   }
//
// Only "experiment" is required. Unknown keys are errors.

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "experiments.hpp"
#include "qtricycle/numerics.hpp"

namespace qtricycle::cli {

namespace {

using nlohmann::json;

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

double finite_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where + ": must be finite");
    return x;
}

std::int64_t integer(const json& v, const std::string& where) {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
        const double x = v.get<double>();
        if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9e15) return static_cast<std::int64_t>(x);
    }
    throw ConfigError(where + ": expected an integer");
}

const detail::ParamSpec* find_param(const detail::Experiment& e, const std::string& name) {
    for (const auto& p : e.params)
        if (p.name == name) return &p;
    return nullptr;
}

SweepAxis parse_axis(const json& a, const detail::Experiment& e, std::size_t index) {
    const std::string where = "sweep[" + std::to_string(index) + "]";
    if (!a.is_object()) throw ConfigError(where + ": expected an object");
    only_keys(a, {"param", "lo", "hi", "count", "spacing"}, where);
    for (const char* k : {"param", "lo", "hi", "count"})
        if (!a.contains(k)) throw ConfigError(where + ": missing '" + k + "'");
    if (!a["param"].is_string()) throw ConfigError(where + ".param: expected a string");

    SweepAxis axis;
    axis.param = a["param"].get<std::string>();
    const auto* spec = find_param(e, axis.param);
    if (!spec) throw ConfigError(where + ".param: '" + axis.param + "' is not a parameter of " + e.name);
    if (!std::holds_alternative<double>(spec->fallback))
        throw ConfigError(where + ".param: '" + axis.param + "' is not numeric");
    axis.lo = finite_number(a["lo"], where + ".lo");
    axis.hi = finite_number(a["hi"], where + ".hi");
    const auto count = integer(a["count"], where + ".count");
    if (count < 2 || count > 1'000'000) throw ConfigError(where + ".count: must be in [2, 1000000]");
    axis.count = static_cast<int>(count);
    if (a.contains("spacing")) {
        if (!a["spacing"].is_string()) throw ConfigError(where + ".spacing: expected a string");
        const auto s = a["spacing"].get<std::string>();
        if (s != "linear" && s != "log") throw ConfigError(where + ".spacing: must be 'linear' or 'log'");
        axis.log = s == "log";
    }
    if (axis.log && !(axis.lo > 0.0 && axis.hi > 0.0)) throw ConfigError(where + ": log spacing needs lo, hi > 0");
    return axis;
}

}  // namespace

std::vector<double> SweepAxis::values() const { return numerics::grid(lo, hi, count, log); }

ExperimentConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    only_keys(doc, {"experiment", "params", "sweep", "output", "format", "seed", "parallelism"}, "config");

    ExperimentConfig c;
    c.raw = text;
    if (!doc.contains("experiment") || !doc["experiment"].is_string())
        throw ConfigError("experiment: required string");
    c.experiment = doc["experiment"].get<std::string>();
    const auto* e = detail::find_experiment(c.experiment);
    if (!e) throw ConfigError("experiment: unknown '" + c.experiment + "' (see list-experiments)");

    for (const auto& p : e->params) c.params[p.name] = p.fallback;
    if (doc.contains("params")) {
        const auto& ps = doc["params"];
        if (!ps.is_object()) throw ConfigError("params: expected an object");
        for (const auto& [key, value] : ps.items()) {
            const auto* spec = find_param(*e, key);
            if (!spec) throw ConfigError("params." + key + ": not a parameter of " + c.experiment);
            if (std::holds_alternative<double>(spec->fallback)) {
                c.params[key] = finite_number(value, "params." + key);
            } else {
                if (!value.is_string()) throw ConfigError("params." + key + ": expected a string");
                const auto s = value.get<std::string>();
                if (std::find(spec->choices.begin(), spec->choices.end(), s) == spec->choices.end())
                    throw ConfigError("params." + key + ": '" + s + "' is not an allowed value");
                c.params[key] = s;
            }
        }
    }

    if (doc.contains("sweep")) {
        const auto& sw = doc["sweep"];
        if (!sw.is_array()) throw ConfigError("sweep: expected an array");
        std::set<std::string> seen;
        for (std::size_t k = 0; k < sw.size(); ++k) {
            c.sweep.push_back(parse_axis(sw[k], *e, k));
            if (!seen.insert(c.sweep.back().param).second)
                throw ConfigError("sweep: '" + c.sweep.back().param + "' swept twice");
        }
    }

    if (doc.contains("output")) {
        if (!doc["output"].is_string() || doc["output"].get<std::string>().empty())
            throw ConfigError("output: expected a non-empty path");
        c.output = doc["output"].get<std::string>();
    }
    if (doc.contains("format")) {
        const auto& f = doc["format"];
        if (!f.is_string() || (f != "csv" && f != "json")) throw ConfigError("format: must be 'csv' or 'json'");
        c.format = f == "csv" ? Format::csv : Format::json;
    }
    if (doc.contains("seed")) {
        const auto& s = doc["seed"];
        if (s.is_number_unsigned()) c.seed = s.get<std::uint64_t>();
        else {
            const auto v = integer(s, "seed");
            if (v < 0) throw ConfigError("seed: must be non-negative");
            c.seed = static_cast<std::uint64_t>(v);
        }
    }
    if (doc.contains("parallelism")) {
        const auto v = integer(doc["parallelism"], "parallelism");
        if (v < 1 || v > 1024) throw ConfigError("parallelism: must be in [1, 1024]");
        c.parallelism = static_cast<int>(v);
    }

    if (e->check) e->check(c);
    return c;
}

std::vector<ExperimentInfo> list_experiments() {
    std::vector<ExperimentInfo> out;
    for (const auto& e : detail::registry()) out.push_back({e.name, e.summary});
    return out;
}

}  // namespace qtricycle::cli
