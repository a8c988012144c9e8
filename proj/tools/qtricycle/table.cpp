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

// CSV follows RFC 4180 (CRLF is accepted on input, LF is written). JSON is one
// object {metadata, columns}; each column is {name, type, values} and
// non-finite reals are written as the strings "nan", "inf" and "-inf".

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>

#include <json.hpp>

#include "cli.hpp"

namespace qtricycle::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::optional<double> parse_double(const std::string& s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::vector<std::string>> parse_csv_records(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        any = true;
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            record.push_back(std::move(field));
            field.clear();
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            record.push_back(std::move(field));
            field.clear();
            records.push_back(std::move(record));
            record.clear();
            any = false;
        } else {
            field += c;
        }
    }
    if (quoted) throw std::runtime_error("csv: unterminated quoted field");
    if (any) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    return records;
}

// Numeric when every cell parses; an empty column stays numeric.
Column typed_column(std::string name, const std::vector<std::string>& cells) {
    std::vector<double> nums;
    for (const auto& c : cells) {
        const auto v = parse_double(c);
        if (!v) return {std::move(name), cells};
        nums.push_back(*v);
    }
    return {std::move(name), nums};
}

ordered_json metadata(const ResultTable& t) {
    ordered_json m;
    m["tool_version"] = kToolVersion;
    m["units"] = kUnits;
    m["experiment"] = t.experiment;
    m["seed"] = t.seed;
    m["rows"] = t.rows();
    m["failed_rows"] = t.failed_rows;
    m["config"] = t.config_raw;
    return m;
}

void read_metadata(const nlohmann::json& m, ResultTable& t) {
    if (m.contains("experiment")) t.experiment = m["experiment"].get<std::string>();
    if (m.contains("seed")) t.seed = m["seed"].get<std::uint64_t>();
    if (m.contains("failed_rows")) t.failed_rows = m["failed_rows"].get<std::size_t>();
    if (m.contains("config")) t.config_raw = m["config"].get<std::string>();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.close();
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string to_csv(const ResultTable& t) {
    std::string out;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out += ',';
        out += csv_field(t.columns[c].name);
    }
    out += '\n';
    for (std::size_t r = 0; r < t.rows(); ++r) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (c) out += ',';
            const auto& d = t.columns[c].data;
            if (const auto* v = std::get_if<std::vector<double>>(&d)) out += format_double((*v)[r]);
            else out += csv_field(std::get<std::vector<std::string>>(d)[r]);
        }
        out += '\n';
    }
    return out;
}

std::string metadata_json(const ResultTable& t) { return metadata(t).dump(2) + "\n"; }

std::string to_json(const ResultTable& t) {
    ordered_json doc;
    doc["metadata"] = metadata(t);
    auto cols = ordered_json::array();
    for (const auto& col : t.columns) {
        ordered_json j;
        j["name"] = col.name;
        if (const auto* v = std::get_if<std::vector<double>>(&col.data)) {
            j["type"] = "real";
            auto values = ordered_json::array();
            for (double x : *v) values.push_back(std::isfinite(x) ? ordered_json(x) : ordered_json(format_double(x)));
            j["values"] = std::move(values);
        } else {
            j["type"] = "text";
            j["values"] = std::get<std::vector<std::string>>(col.data);
        }
        cols.push_back(std::move(j));
    }
    doc["columns"] = std::move(cols);
    return doc.dump(2) + "\n";
}

ResultTable from_csv(const std::string& text) {
    const auto records = parse_csv_records(text);
    ResultTable t;
    if (records.empty()) return t;
    const auto& header = records.front();
    for (std::size_t r = 1; r < records.size(); ++r)
        if (records[r].size() != header.size())
            throw std::runtime_error("csv: row " + std::to_string(r) + " has the wrong field count");
    for (std::size_t c = 0; c < header.size(); ++c) {
        std::vector<std::string> cells;
        for (std::size_t r = 1; r < records.size(); ++r) cells.push_back(records[r][c]);
        t.columns.push_back(typed_column(header[c], cells));
    }
    return t;
}

ResultTable from_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    ResultTable t;
    if (doc.contains("metadata")) read_metadata(doc["metadata"], t);
    for (const auto& j : doc.at("columns")) {
        Column col;
        col.name = j.at("name").get<std::string>();
        if (j.at("type") == "real") {
            std::vector<double> v;
            for (const auto& x : j.at("values")) {
                if (x.is_number()) {
                    v.push_back(x.get<double>());
                } else {
                    const auto d = parse_double(x.get<std::string>());
                    if (!d) throw std::runtime_error("json: bad real in column '" + col.name + "'");
                    v.push_back(*d);
                }
            }
            col.data = std::move(v);
        } else {
            col.data = j.at("values").get<std::vector<std::string>>();
        }
        t.columns.push_back(std::move(col));
    }
    return t;
}

void emit(const ResultTable& t, Format format, const std::string& path) {
    if (format == Format::json) {
        write_file(path, to_json(t));
        return;
    }
    write_file(path, to_csv(t));
    write_file(path + ".meta.json", metadata_json(t));
}

}  // namespace qtricycle::cli
