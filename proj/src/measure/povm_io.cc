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

#include "mlearn/measure/povm_io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mlearn/errors.h"

namespace mlearn {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string &msg) {
    throw MeasurementFileError("measurement file: " + msg);
}

ComplexMatrix parse_operator(const json &op, std::size_t d, std::size_t index) {
    std::string where = "operator " + std::to_string(index);
    if (!op.is_array() || op.size() != d) {
        fail(where + " must be an array of " + std::to_string(d) + " rows");
    }
    std::vector<cplx> entries;
    entries.reserve(d * d);
    for (std::size_t r = 0; r < d; r++) {
        const json &row = op[r];
        if (!row.is_array() || row.size() != d) {
            fail(where + " row " + std::to_string(r) + " must hold " + std::to_string(d) + " [re, im] pairs");
        }
        for (std::size_t c = 0; c < d; c++) {
            const json &pair = row[c];
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
                fail(where + " entry (" + std::to_string(r) + "," + std::to_string(c) + ") must be a [re, im] pair");
            }
            double re = pair[0].get<double>();
            double im = pair[1].get<double>();
            if (!std::isfinite(re) || !std::isfinite(im)) {
                fail(where + " entry (" + std::to_string(r) + "," + std::to_string(c) + ") is not finite");
            }
            entries.emplace_back(re, im);
        }
    }
    return ComplexMatrix(d, d, entries);
}

json operator_to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); r++) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); c++) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string document(std::string_view kind, std::size_t d, const std::vector<ComplexMatrix> &ops) {
    json doc;
    doc["d"] = d;
    doc["kind"] = kind;
    doc["operators"] = json::array();
    for (const auto &op : ops) {
        doc["operators"].push_back(operator_to_json(op));
    }
    return doc.dump();
}

}  // namespace

Povm MeasurementFile::effects() const {
    if (povm) {
        return *povm;
    }
    return povm_of(*instrument);
}

MeasurementFile parse_measurement_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        fail(std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        fail("top level must be an object");
    }
    if (!doc.contains("d") || !doc["d"].is_number_integer() || doc["d"].get<long long>() < 1) {
        fail("\"d\" must be an integer >= 1");
    }
    auto d = static_cast<std::size_t>(doc["d"].get<long long>());
    if (!doc.contains("kind") || !doc["kind"].is_string()) {
        fail("\"kind\" must be \"povm\" or \"instrument\"");
    }
    std::string kind = doc["kind"].get<std::string>();
    if (kind != "povm" && kind != "instrument") {
        fail("\"kind\" must be \"povm\" or \"instrument\", got \"" + kind + "\"");
    }
    if (!doc.contains("operators") || !doc["operators"].is_array() || doc["operators"].empty()) {
        fail("\"operators\" must be a non-empty array");
    }
    std::vector<ComplexMatrix> ops;
    for (std::size_t i = 0; i < doc["operators"].size(); i++) {
        ops.push_back(parse_operator(doc["operators"][i], d, i));
    }

    MeasurementFile out;
    if (kind == "povm") {
        for (std::size_t i = 0; i < ops.size(); i++) {
            if (!is_hermitian(ops[i], kMeasurementTolerance)) {
                fail("effect " + std::to_string(i) + " is not Hermitian");
            }
        }
        for (std::size_t i = 0; i < ops.size(); i++) {
            Eigen::SelfAdjointEigenSolver<ComplexMatrix::Dense> solver(ops[i].dense(), Eigen::EigenvaluesOnly);
            if (solver.eigenvalues().minCoeff() < -kMeasurementTolerance) {
                fail("effect " + std::to_string(i) + " is not positive semidefinite");
            }
        }
        try {
            out.povm.emplace(std::move(ops));
        } catch (const InvariantViolation &e) {
            fail(e.what());
        }
    } else {
        try {
            out.instrument.emplace(std::move(ops));
        } catch (const InvariantViolation &e) {
            fail(e.what());
        }
    }
    return out;
}

MeasurementFile load_measurement_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        fail("cannot open " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_measurement_json(buf.str());
}

std::string povm_to_json(const Povm &povm) {
    return document("povm", povm.dim(), povm.effects());
}

std::string instrument_to_json(const Instrument &inst) {
    return document("instrument", inst.dim(), inst.kraus());
}

}  // namespace mlearn
