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

#include "sheafctx/analysis.hpp"

#include <algorithm>

#include "sheafctx/errors.hpp"
#include "sheafctx/global_analysis.hpp"
#include "sheafctx/kl.hpp"

namespace sheafctx {

namespace {

const std::vector<std::pair<Check, std::string>> &check_names() {
    static const std::vector<std::pair<Check, std::string>> names = {
        {Check::NoSignaling, "nosig"}, {Check::Ncf, "ncf"},       {Check::Strong, "strong"},
        {Check::Logical, "logical"},   {Check::Avn, "avn"},       {Check::SiAvn, "si-avn"},
        {Check::SiAvnClosure, "si-avn-closure"}, {Check::Kl, "kl"},
    };
    return names;
}

std::string render_value(const Json &v) {
    if (v.is_null()) return "n/a";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string out;
        for (const auto &item : v) {
            if (!out.empty()) out += " ";
            out += render_value(item);
        }
        return out;
    }
    return v.dump();
}

}  // namespace

std::optional<Check> parse_check(const std::string &name) {
    for (const auto &[check, text] : check_names()) {
        if (text == name) return check;
    }
    return std::nullopt;
}

std::string check_name(Check check) {
    for (const auto &[c, text] : check_names()) {
        if (c == check) return text;
    }
    return "?";
}

const std::vector<Check> &all_checks() {
    static const std::vector<Check> checks = [] {
        std::vector<Check> out;
        for (const auto &[c, text] : check_names()) out.push_back(c);
        return out;
    }();
    return checks;
}

std::optional<PauliSet> pauli_labels(const MeasurementScenario &scenario) {
    std::vector<PauliOperator> ops;
    for (const auto &label : scenario.measurements()) {
        try {
            ops.push_back(label_operator(label));
        } catch (const ParseError &) {
            return std::nullopt;
        }
        if (!ops.back().is_hermitian() || ops.back().n() != ops.front().n()) return std::nullopt;
    }
    if (ops.empty()) return std::nullopt;
    return PauliSet(std::move(ops));
}

AnalysisInput input_from_json(const std::string &name, const Json &doc) {
    auto from_paulis = [&](const Json &list) {
        PauliSet s = pauli_set_from_json(list);
        for (const auto &p : s) {
            if (!p.is_hermitian()) throw ParseError(p.str() + " is not Hermitian");
        }
        return AnalysisInput{name, pauli_scenario(s), std::nullopt, std::nullopt, s};
    };
    if (doc.is_array()) return from_paulis(doc);
    if (!doc.is_object()) throw ParseError("unrecognized document");
    if (doc.contains("paulis")) return from_paulis(doc["paulis"]);
    if (doc.contains("rows")) {
        EmpiricalModel e = model_from_json(doc);
        MeasurementScenario sc = e.scenario();
        PossibilisticModel p = possibilistic_collapse(e);
        return AnalysisInput{name, sc, std::move(e), std::move(p), pauli_labels(sc)};
    }
    if (doc.contains("supports")) {
        PossibilisticModel p = possibilistic_from_json(doc);
        MeasurementScenario sc = p.scenario();
        return AnalysisInput{name, sc, std::nullopt, std::move(p), pauli_labels(sc)};
    }
    if (doc.contains("contexts")) {
        MeasurementScenario sc = scenario_from_json(doc).scenario;
        return AnalysisInput{name, sc, std::nullopt, std::nullopt, pauli_labels(sc)};
    }
    throw ParseError("unrecognized document: expected a model, supports, Pauli set or scenario");
}

Json analyze(const AnalysisInput &input, std::vector<Check> checks) {
    std::sort(checks.begin(), checks.end());
    checks.erase(std::unique(checks.begin(), checks.end()), checks.end());
    Json results = Json::object();
    for (Check check : checks) {
        switch (check) {
            case Check::NoSignaling:
                if (input.model) {
                    auto violations = check_no_signaling(*input.model);
                    results["no_signaling"] = violations.empty();
                    results["signaling_violations"] = violations.size();
                } else {
                    results["no_signaling"] = nullptr;
                }
                break;
            case Check::Ncf:
                if (input.model) {
                    auto nc = noncontextual_fraction(*input.model);
                    results["ncf"] = to_string(nc.ncf);
                    results["cf"] = to_string(nc.cf);
                } else {
                    results["ncf"] = nullptr;
                    results["cf"] = nullptr;
                }
                break;
            case Check::Strong:
                if (input.possibilistic) {
                    auto sections = global_section_indices(*input.possibilistic);
                    results["strongly_contextual"] = sections.empty();
                    results["global_section_count"] = sections.size();
                } else {
                    results["strongly_contextual"] = nullptr;
                }
                break;
            case Check::Logical:
                if (input.possibilistic) {
                    results["logically_contextual"] = is_logically_contextual(*input.possibilistic);
                } else {
                    results["logically_contextual"] = nullptr;
                }
                break;
            case Check::Avn:
                if (input.possibilistic && input.scenario.ring() == OutcomeRing::Z2) {
                    results["avn"] = is_avn(*input.possibilistic);
                } else {
                    results["avn"] = nullptr;
                }
                break;
            case Check::SiAvn:
                if (input.paulis) {
                    results["si_avn"] = is_state_independent_avn(*input.paulis, false);
                } else {
                    results["si_avn"] = nullptr;
                }
                break;
            case Check::SiAvnClosure:
                if (input.paulis) {
                    PauliSet closure = partial_closure(*input.paulis);
                    results["si_avn_closure"] = is_state_independent_avn(closure, false);
                    results["closure_size"] = closure.size();
                } else {
                    results["si_avn_closure"] = nullptr;
                }
                break;
            case Check::Kl:
                if (input.paulis) {
                    auto witness = kl_witness(*input.paulis);
                    results["kl_witness"] = witness.has_value();
                    results["kl_witness_operator"] = witness ? Json(witness->x.str()) : Json(nullptr);
                    auto pattern = kl_pattern_test(*input.paulis);
                    results["kl_pattern"] = pattern.passes;
                    if (pattern.subset) {
                        Json subset = Json::array();
                        for (const auto &p : *pattern.subset) subset.push_back(p.str());
                        results["kl_pattern_subset"] = std::move(subset);
                        results["kl_pattern_class"] = *pattern.pattern;
                        results["kl_pattern_cached"] = to_string(*pattern.cached);
                    } else {
                        results["kl_pattern_subset"] = nullptr;
                    }
                } else {
                    results["kl_witness"] = nullptr;
                    results["kl_pattern"] = nullptr;
                }
                break;
        }
    }
    Json report = Json::object();
    report["input"] = input.name;
    report["results"] = std::move(results);
    return report;
}

std::string render_table(const Json &report) {
    std::string out;
    if (report.contains("input")) out += "input: " + render_value(report["input"]) + "\n";
    if (report.contains("results")) {
        for (const auto &[key, value] : report["results"].items()) out += key + ": " + render_value(value) + "\n";
    }
    return out;
}

}  // namespace sheafctx
