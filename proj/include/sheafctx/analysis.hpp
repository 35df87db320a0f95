// Copyright 2026 The sheafctx Authors
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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sheafctx/io.hpp"

namespace sheafctx {

enum class Check { NoSignaling, Ncf, Strong, Logical, Avn, SiAvn, SiAvnClosure, Kl };

/// "nosig", "ncf", "strong", "logical", "avn", "si-avn", "si-avn-closure", "kl".
std::optional<Check> parse_check(const std::string &name);
std::string check_name(Check check);
/// Every check, in the fixed report order.
const std::vector<Check> &all_checks();

/// Whatever a document provides. Possibilistic data is derived from a model,
/// and a Pauli set from Pauli-string labels.
struct AnalysisInput {
    std::string name;
    MeasurementScenario scenario;
    std::optional<EmpiricalModel> model;
    std::optional<PossibilisticModel> possibilistic;
    std::optional<PauliSet> paulis;
};

/// Recognizes model, possibilistic, Pauli-set ({"paulis": [...]} or a bare
/// array) and bare scenario documents. Throws ParseError.
AnalysisInput input_from_json(const std::string &name, const Json &doc);

/// Labels read as Hermitian Pauli strings of one qubit count, or nullopt.
std::optional<PauliSet> pauli_labels(const MeasurementScenario &scenario);

/// Runs the checks in fixed order. A check whose input is missing reports
/// null. Throws PreconditionError when ncf is requested on a signaling model.
Json analyze(const AnalysisInput &input, std::vector<Check> checks);

/// "key: value" lines for a report.
std::string render_table(const Json &report);

}  // namespace sheafctx
