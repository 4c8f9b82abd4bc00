// Copyright 2026 The mlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mlearn/expcli/csv.h"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mlearn/errors.h"

namespace mlearn {

namespace {

constexpr double kRateTolerance = 1e-12;

void check_text_field(const std::string &s, const char *name) {
    if (s.empty() || s.find_first_of(",\r\n\"") != std::string::npos) {
        throw InvariantViolation(std::string("render_row: field '") + name + "' is empty or holds a CSV delimiter");
    }
}

void check_finite(double x, const char *name) {
    if (!std::isfinite(x)) {
        throw InvariantViolation(std::string("render_row: field '") + name + "' is not finite");
    }
}

template <typename T>
T parse_number(std::string_view field, const char *name) {
    T value{};
    const char *begin = field.data();
    const char *end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (field.empty() || ec != std::errc() || ptr != end) {
        throw IoError(std::string("CSV: bad ") + name + " field '" + std::string(field) + "'");
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value)) {
            throw IoError(std::string("CSV: non-finite ") + name + " field");
        }
    }
    return value;
}

}  // namespace

ResultRow make_row(std::string experiment, std::size_t d, std::size_t n_queries, std::size_t trials,
                   std::size_t successes, double mean, double std_error, std::uint64_t seed, std::string backend) {
    ResultRow row;
    row.experiment = std::move(experiment);
    row.d = d;
    row.n_queries = n_queries;
    row.trials = trials;
    row.successes = successes;
    row.success_rate = trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
    row.mean = mean;
    row.std_error = std_error;
    row.seed = seed;
    row.backend = std::move(backend);
    return row;
}

std::string format_double(double x) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc()) {
        throw InvariantViolation("format_double: conversion failed");
    }
    return std::string(buf.data(), ptr);
}

std::string render_row(const ResultRow &row) {
    check_text_field(row.experiment, "experiment");
    check_text_field(row.backend, "backend");
    check_finite(row.success_rate, "success_rate");
    check_finite(row.mean, "mean");
    check_finite(row.std_error, "stderr");
    check_finite(row.elapsed_ms, "elapsed_ms");
    if (row.trials == 0 || row.successes > row.trials) {
        throw InvariantViolation("render_row: need 1 <= trials and successes <= trials");
    }
    std::string out;
    out += row.experiment;
    out += ',' + std::to_string(row.d);
    out += ',' + std::to_string(row.n_queries);
    out += ',' + std::to_string(row.trials);
    out += ',' + std::to_string(row.successes);
    out += ',' + format_double(row.success_rate);
    out += ',' + format_double(row.mean);
    out += ',' + format_double(row.std_error);
    out += ',' + std::to_string(row.seed);
    out += ',' + row.backend;
    out += ',' + format_double(row.elapsed_ms);
    return out;
}

std::string render_csv(std::span<const ResultRow> rows) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto &row : rows) {
        out += render_row(row);
        out += '\n';
    }
    return out;
}

ResultRow parse_row(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    if (fields.size() != 11) {
        throw IoError("CSV: expected 11 fields, got " + std::to_string(fields.size()) + " in '" + std::string(line) +
                      "'");
    }
    if (fields[0].empty() || fields[9].empty()) {
        throw IoError("CSV: empty experiment or backend field in '" + std::string(line) + "'");
    }
    ResultRow row;
    row.experiment = std::string(fields[0]);
    row.d = parse_number<std::size_t>(fields[1], "d");
    row.n_queries = parse_number<std::size_t>(fields[2], "n_queries");
    row.trials = parse_number<std::size_t>(fields[3], "trials");
    row.successes = parse_number<std::size_t>(fields[4], "successes");
    row.success_rate = parse_number<double>(fields[5], "success_rate");
    row.mean = parse_number<double>(fields[6], "mean");
    row.std_error = parse_number<double>(fields[7], "stderr");
    row.seed = parse_number<std::uint64_t>(fields[8], "seed");
    row.backend = std::string(fields[9]);
    row.elapsed_ms = parse_number<double>(fields[10], "elapsed_ms");
    if (row.trials == 0 || row.successes > row.trials) {
        throw IoError("CSV: need 1 <= trials and successes <= trials in '" + std::string(line) + "'");
    }
    double rate = static_cast<double>(row.successes) / static_cast<double>(row.trials);
    if (std::abs(rate - row.success_rate) > kRateTolerance) {
        throw IoError("CSV: success_rate disagrees with successes/trials in '" + std::string(line) + "'");
    }
    return row;
}

std::vector<ResultRow> parse_csv(std::string_view text) {
    std::vector<ResultRow> rows;
    std::size_t start = 0;
    bool header = true;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        start = nl == std::string_view::npos ? text.size() : nl + 1;
        if (header) {
            if (line != kCsvHeader) {
                throw IoError("CSV: header mismatch, got '" + std::string(line) + "'");
            }
            header = false;
            continue;
        }
        rows.push_back(parse_row(line));
    }
    if (header) {
        throw IoError("CSV: empty input");
    }
    return rows;
}

void append_csv(const std::filesystem::path &path, std::span<const ResultRow> rows) {
    std::error_code ec;
    bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
    if (!fresh) {
        std::ifstream in(path);
        std::string first;
        std::getline(in, first);
        if (first != kCsvHeader) {
            throw IoError("append_csv: " + path.string() + " exists with a different header");
        }
    }
    std::string text;
    if (fresh) {
        text += kCsvHeader;
        text += '\n';
    }
    for (const auto &row : rows) {
        text += render_row(row);
        text += '\n';
    }
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) {
        throw IoError("append_csv: cannot open " + path.string() + " for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("append_csv: write to " + path.string() + " failed");
    }
}

std::vector<ResultRow> read_csv(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("read_csv: cannot open " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

std::filesystem::path sidecar_path(const std::filesystem::path &path, std::string_view suffix) {
    auto out = path.parent_path() / path.stem();
    out += suffix;
    return out;
}

}  // namespace mlearn
