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

#ifndef MLEARN_EXPCLI_CSV_H
#define MLEARN_EXPCLI_CSV_H

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mlearn {

inline constexpr std::string_view kCsvHeader =
    "experiment,d,n_queries,trials,successes,success_rate,mean,stderr,seed,backend,elapsed_ms";

/// One aggregated experiment cell.
struct ResultRow {
    std::string experiment;
    std::size_t d = 0;
    std::size_t n_queries = 0;
    std::size_t trials = 0;
    std::size_t successes = 0;
    double success_rate = 0;
    double mean = 0;
    double std_error = 0;
    std::uint64_t seed = 0;
    std::string backend;
    double elapsed_ms = 0;

    bool operator==(const ResultRow &) const = default;
};

/// Fills success_rate from successes / trials.
ResultRow make_row(std::string experiment, std::size_t d, std::size_t n_queries, std::size_t trials,
                   std::size_t successes, double mean, double std_error, std::uint64_t seed, std::string backend);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

/// One CSV line without the trailing newline. Throws InvariantViolation for
/// non-finite values, trials = 0, or text fields containing ',' or newlines.
std::string render_row(const ResultRow &row);
/// Header plus one line per row, each terminated by '\n'.
std::string render_csv(std::span<const ResultRow> rows);

/// Inverse of render_row. Throws IoError naming the offending field.
ResultRow parse_row(std::string_view line);
/// Requires the exact header as the first line; rejects malformed rows.
std::vector<ResultRow> parse_csv(std::string_view text);

/// Appends rows to `path`, writing the header only when the file is new or
/// empty. An existing file must start with the header. Throws IoError.
void append_csv(const std::filesystem::path &path, std::span<const ResultRow> rows);

std::vector<ResultRow> read_csv(const std::filesystem::path &path);

/// `<dir>/<stem><suffix>` next to `path`.
std::filesystem::path sidecar_path(const std::filesystem::path &path, std::string_view suffix);

}  // namespace mlearn

#endif
