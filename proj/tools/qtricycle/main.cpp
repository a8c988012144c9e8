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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

using namespace qtricycle::cli;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qtricycle: steady-state quantum tricycle engines and refrigerators"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string output;
    std::string format;
    int parallelism = 0;
    std::uint64_t seed = 0;

    auto* run_cmd = app.add_subcommand("run", "evaluate an experiment config and emit a table");
    run_cmd->add_option("config", config_path, "config file (JSON)")->required();
    auto* out_opt = run_cmd->add_option("--output,-o", output, "output path; '-' or absent writes to stdout");
    auto* fmt_opt = run_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    auto* par_opt = run_cmd->add_option("--parallelism,-j", parallelism, "worker threads")->check(CLI::Range(1, 1024));
    auto* seed_opt = run_cmd->add_option("--seed", seed, "seed for randomised experiments");

    auto* validate_cmd = app.add_subcommand("validate", "check a config without running it");
    validate_cmd->add_option("config", config_path, "config file (JSON)")->required();

    auto* list_cmd = app.add_subcommand("list-experiments", "list the available experiments");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (list_cmd->parsed()) {
            for (const auto& e : list_experiments()) std::cout << e.name << "\t" << e.summary << "\n";
            return kOk;
        }

        auto config = parse_config(read_file(config_path));
        if (validate_cmd->parsed()) {
            std::cout << "ok: " << config.experiment << "\n";
            return kOk;
        }

        if (*seed_opt) config.seed = seed;
        // Flag, then config, then QTRICYCLE_THREADS.
        const int threads = *par_opt ? parallelism : config.parallelism.value_or(default_parallelism());
        std::string path = *out_opt ? output : config.output.value_or("-");
        Format fmt = Format::csv;
        if (*fmt_opt) fmt = format == "json" ? Format::json : Format::csv;
        else if (config.format) fmt = *config.format;
        else if (ends_with(path, ".json")) fmt = Format::json;

        const auto table = run(config, threads);
        if (path == "-") std::cout << (fmt == Format::json ? to_json(table) : to_csv(table));
        else emit(table, fmt, path);

        if (table.failed_rows > 0)
            std::cerr << table.failed_rows << " of " << table.rows() << " rows failed\n";
        return table.rows() > 0 && table.failed_rows == table.rows() ? kAllRowsFailed : kOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIoError;
    }
}
