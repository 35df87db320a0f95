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

#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "sheafctx/empirical.hpp"
#include "sheafctx/linear_theory.hpp"
#include "sheafctx/pauli.hpp"
#include "sheafctx/quantum.hpp"
#include "sheafctx/scenario.hpp"

/**
 * JSON documents. Key order is fixed and rationals are strings, so emitting
 * the same object twice gives byte-identical text.
 *
 *   scenario      {"measurements":[...], "outcomes":[0,1], "ring":"Z2"|"none",
 *                  "contexts":[[...],...], "equatorial":{"a1":[0,"pi/3"],...}}
 *   model         {"scenario":{...}, "rows":{"a1,b1":{"00":"1/2",...},...}}
 *   possibilistic {"scenario":{...}, "supports":{"a1,b1":["00","11"],...}}
 *   theory        {"scenario":{...}, "equations":[{"context":[...],
 *                  "r":{"XI":1,...}, "a":0},...]}
 *   state         {"n":2, "amplitudes":[["0.7071...","0"],...]}
 *   pauli set     ["XI","IX",...]
 *
 * A "scenario" member may also be a path to a scenario file. Omitted outcome
 * strings in a row have weight 0.
 *
 * Context keys join the labels with commas in label order; outcome strings
 * follow the same order.
 */
namespace sheafctx {

using Json = nlohmann::ordered_json;

/// Equatorial binding with the angle kept as written ("0", "pi/3", "1.25").
struct EquatorialSpec {
    std::size_t party = 0;
    std::string angle;
};

struct ScenarioDocument {
    MeasurementScenario scenario;
    std::map<MeasurementLabel, EquatorialSpec> equatorial;

    /// Equatorial labels as given, every other label as a Pauli string.
    Bindings bindings() const;
};

/// "pi/3", "-pi/2", "2*pi/3", "pi", or a decimal number. Throws ParseError.
double parse_angle(const std::string &text);

std::string context_key(const LabelSet &labels);

Json to_json(const ScenarioDocument &doc);
Json to_json(const MeasurementScenario &scenario);
Json to_json(const EmpiricalModel &e, const std::map<MeasurementLabel, EquatorialSpec> &equatorial = {});
Json to_json(const PossibilisticModel &p);
Json to_json(const LinearTheory &t);
Json to_json(const StateVector &psi);
Json to_json(const PauliSet &s);
Json to_json(const LinearEquation &phi);

/// All parsers throw ParseError on malformed documents.
ScenarioDocument scenario_from_json(const Json &j);
EmpiricalModel model_from_json(const Json &j);
PossibilisticModel possibilistic_from_json(const Json &j);
LinearTheory theory_from_json(const Json &j);
StateVector state_from_json(const Json &j);
PauliSet pauli_set_from_json(const Json &j);

/// Parses text, translating JSON syntax errors to ParseError.
Json parse_json_text(const std::string &text);
/// Reads and parses a file. Throws ParseError when unreadable.
Json read_json_file(const std::string &path);

}  // namespace sheafctx
