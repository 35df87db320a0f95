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

#include <string>
#include <vector>

#include "sheafctx/io.hpp"

namespace sheafctx {

/// Bell scenario with equatorial bindings: a1, b1 at angle 0 and a2, b2 at
/// pi/3; party 0 is Alice.
ScenarioDocument chsh_scenario();
EmpiricalModel pr_box_model();

/// The nine operators of the 3x3 magic square.
PauliSet mermin_square_operators();
/// {XI, IX, ZI, IZ}.
PauliSet xz222_operators();
/// {XII, IXI, IIX, YII, IYI, IIY}.
PauliSet mermin_star_operators();

enum class CorpusKind { Empirical, Possibilistic, PauliOperators };

struct CorpusEntry {
    std::string name;
    std::string summary;
    CorpusKind kind;
    /// A model, possibilistic model, or {"paulis": [...]} document. Realized
    /// entries also carry "state".
    Json document;
};

const std::vector<std::string> &corpus_names();
bool is_corpus_name(const std::string &name);
/// Throws DomainError for an unknown name.
CorpusEntry corpus_entry(const std::string &name);

}  // namespace sheafctx
