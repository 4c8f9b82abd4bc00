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

#ifndef MLEARN_MEASURE_POVM_IO_H
#define MLEARN_MEASURE_POVM_IO_H

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlearn/errors.h"
#include "mlearn/measure/measurement.h"

namespace mlearn {

// Measurement files are JSON documents of the form
//
//   {"d": 2, "kind": "povm" | "instrument",
//    "operators": [ [[ [re, im], ... d pairs ], ... d rows ], ... ]}
//
// Loading applies the type invariants in a fixed order and reports the first
// one violated: document shape, operator shapes, finiteness, then for POVMs
// Hermiticity, positivity and completeness, and for instruments completeness.

/// Thrown for a malformed or invalid measurement document.
struct MeasurementFileError : InvariantViolation {
    using InvariantViolation::InvariantViolation;
};

struct MeasurementFile {
    std::optional<Povm> povm;
    std::optional<Instrument> instrument;

    /// Effects of the POVM, or of the instrument's induced POVM.
    Povm effects() const;
};

MeasurementFile parse_measurement_json(std::string_view text);
MeasurementFile load_measurement_file(const std::filesystem::path &path);

std::string povm_to_json(const Povm &povm);
std::string instrument_to_json(const Instrument &inst);

}  // namespace mlearn

#endif
