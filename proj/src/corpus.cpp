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

#include "sheafctx/corpus.hpp"

#include <algorithm>

#include "sheafctx/errors.hpp"

namespace sheafctx {

ScenarioDocument chsh_scenario() {
    MeasurementScenario sc({"a1", "a2", "b1", "b2"}, {{"a1", "b1"}, {"a1", "b2"}, {"a2", "b1"}, {"a2", "b2"}}, 2,
                           OutcomeRing::Z2);
    return {sc, {{"a1", {0, "0"}}, {"a2", {0, "pi/3"}}, {"b1", {1, "0"}}, {"b2", {1, "pi/3"}}}};
}

EmpiricalModel pr_box_model() {
    MeasurementScenario sc = chsh_scenario().scenario;
    const Rational h(1, 2);
    std::vector<ContextDistribution> rows;
    rows.emplace_back(LabelSet{"a1", "b1"}, 2, std::vector<Rational>{h, 0, 0, h});
    rows.emplace_back(LabelSet{"a1", "b2"}, 2, std::vector<Rational>{h, 0, 0, h});
    rows.emplace_back(LabelSet{"a2", "b1"}, 2, std::vector<Rational>{h, 0, 0, h});
    rows.emplace_back(LabelSet{"a2", "b2"}, 2, std::vector<Rational>{0, h, h, 0});
    return EmpiricalModel(sc, std::move(rows));
}

PauliSet mermin_square_operators() {
    return PauliSet::parse({"XI", "IX", "XX", "IZ", "ZI", "ZZ", "XZ", "ZX", "YY"});
}

PauliSet xz222_operators() { return PauliSet::parse({"XI", "IX", "ZI", "IZ"}); }

PauliSet mermin_star_operators() { return PauliSet::parse({"XII", "IXI", "IIX", "YII", "IYI", "IIY"}); }

namespace {

Json realized(const StateVector &psi, const std::string &state, const ScenarioDocument &doc) {
    Realization r = realize_model(psi, doc.scenario, doc.bindings());
    Json j = to_json(r.model(), doc.equatorial);
    j["state"] = state;
    return j;
}

ScenarioDocument pauli_document(const PauliSet &s) { return {pauli_scenario(s), {}}; }

}  // namespace

const std::vector<std::string> &corpus_names() {
    static const std::vector<std::string> names = {
        "chsh",        "pr-box",    "mermin-square-bell", "mermin-square-possibilistic",
        "xy322-ghz",   "xy322-plus", "xz222",             "mermin-star",
    };
    return names;
}

bool is_corpus_name(const std::string &name) {
    const auto &names = corpus_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

CorpusEntry corpus_entry(const std::string &name) {
    if (name == "chsh") {
        return {name, "Bell state, equatorial measurements at 0 and pi/3", CorpusKind::Empirical,
                realized(canonical_state("bell_phi_plus"), "bell_phi_plus", chsh_scenario())};
    }
    if (name == "pr-box") {
        return {name, "Popescu-Rohrlich box on the Bell scenario", CorpusKind::Empirical, to_json(pr_box_model())};
    }
    if (name == "mermin-square-bell") {
        return {name, "magic square realized by the Bell state", CorpusKind::Empirical,
                realized(canonical_state("bell_phi_plus"), "bell_phi_plus",
                         pauli_document(mermin_square_operators()))};
    }
    if (name == "mermin-square-possibilistic") {
        Realization r = realize_model(canonical_state("bell_phi_plus"), pauli_scenario(mermin_square_operators()));
        return {name, "support of the Bell-state magic square model", CorpusKind::Possibilistic,
                to_json(possibilistic_collapse(r.model()))};
    }
    if (name == "xy322-ghz") {
        return {name, "XY-(3,2,2) scenario realized by the GHZ state", CorpusKind::Empirical,
                realized(canonical_state("ghz(3)"), "ghz(3)", pauli_document(mermin_star_operators()))};
    }
    if (name == "xy322-plus") {
        // |000> is the equal superposition of the eigenvectors of every
        // context here, so each row is uniform. |+++> is an X eigenstate and
        // would make {XII, IXI, IIX} deterministic.
        return {name, "XY-(3,2,2) scenario realized by |000>, uniform in every context", CorpusKind::Empirical,
                realized(canonical_state("zero(3)"), "zero(3)", pauli_document(mermin_star_operators()))};
    }
    if (name == "xz222") {
        return {name, "{XI, IX, ZI, IZ} with local contexts, realized by the Bell state", CorpusKind::Empirical,
                realized(canonical_state("bell_phi_plus"), "bell_phi_plus", pauli_document(xz222_operators()))};
    }
    if (name == "mermin-star") {
        Json j = Json::object();
        j["paulis"] = to_json(mermin_star_operators());
        return {name, "local X and Y on three qubits, analysed in partial closure", CorpusKind::PauliOperators, j};
    }
    throw DomainError("unknown corpus entry '" + name + "'");
}

}  // namespace sheafctx
