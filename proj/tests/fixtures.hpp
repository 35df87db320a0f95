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

// Reference tables. Each row lists its labels in display order and its
// outcome strings follow that order. Helpers translate them into the
// library's label-sorted form.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "sheafctx/empirical.hpp"
#include "sheafctx/pauli.hpp"
#include "sheafctx/rational.hpp"

namespace fixtures {

using namespace sheafctx;

struct ListedRow {
    std::vector<std::string> labels;
    std::map<std::string, std::string> weights;  // listed outcome -> weight
};

inline Assignment listed_assignment(const std::vector<std::string> &labels, const std::string &outcome) {
    std::vector<MeasurementLabel> domain(labels.begin(), labels.end());
    std::vector<Outcome> values;
    for (char c : outcome) values.push_back(static_cast<Outcome>(c - '0'));
    return Assignment(std::move(domain), std::move(values));
}

inline Context listed_context(const std::vector<std::string> &labels) {
    return Context(std::vector<MeasurementLabel>(labels.begin(), labels.end()));
}

inline ContextDistribution listed_distribution(const ListedRow &row) {
    Context c = listed_context(row.labels);
    std::vector<Rational> w(assignment_count(c.size(), 2), Rational(0));
    for (const auto &[outcome, weight] : row.weights) {
        w[assignment_index(listed_assignment(row.labels, outcome), 2)] = parse_rational(weight);
    }
    return ContextDistribution(c.members(), 2, std::move(w));
}

inline std::vector<std::size_t> listed_support(const ListedRow &row) {
    std::vector<std::size_t> out;
    for (const auto &[outcome, weight] : row.weights) {
        out.push_back(assignment_index(listed_assignment(row.labels, outcome), 2));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline EmpiricalModel listed_model(const MeasurementScenario &sc, const std::vector<ListedRow> &rows) {
    std::vector<ContextDistribution> out;
    for (const auto &r : rows) out.push_back(listed_distribution(r));
    return EmpiricalModel(sc, std::move(out));
}

inline MeasurementScenario listed_scenario(const std::vector<ListedRow> &rows) {
    std::vector<Context> cover;
    for (const auto &r : rows) cover.push_back(listed_context(r.labels));
    return MeasurementScenario::from_cover(std::move(cover), 2, OutcomeRing::Z2);
}

// Bell state, equatorial angles 0 (a1, b1) and pi/3 (a2, b2).
inline std::vector<ListedRow> chsh_table() {
    return {
        {{"a1", "b1"}, {{"00", "1/2"}, {"01", "0"}, {"10", "0"}, {"11", "1/2"}}},
        {{"a1", "b2"}, {{"00", "3/8"}, {"01", "1/8"}, {"10", "1/8"}, {"11", "3/8"}}},
        {{"a2", "b1"}, {{"00", "3/8"}, {"01", "1/8"}, {"10", "1/8"}, {"11", "3/8"}}},
        {{"a2", "b2"}, {{"00", "1/8"}, {"01", "3/8"}, {"10", "3/8"}, {"11", "1/8"}}},
    };
}

inline std::vector<ListedRow> pr_box_table() {
    return {
        {{"a1", "b1"}, {{"00", "1/2"}, {"11", "1/2"}}},
        {{"a1", "b2"}, {{"00", "1/2"}, {"11", "1/2"}}},
        {{"a2", "b1"}, {{"00", "1/2"}, {"11", "1/2"}}},
        {{"a2", "b2"}, {{"01", "1/2"}, {"10", "1/2"}}},
    };
}

// Magic square realized by the Bell state.
inline std::vector<ListedRow> mermin_bell_table() {
    return {
        {{"XI", "IX", "XX"}, {{"000", "1/2"}, {"110", "1/2"}}},
        {{"IZ", "ZI", "ZZ"}, {{"000", "1/2"}, {"110", "1/2"}}},
        {{"XZ", "ZX", "YY"}, {{"011", "1/2"}, {"101", "1/2"}}},
        {{"XI", "IZ", "XZ"}, {{"000", "1/4"}, {"011", "1/4"}, {"101", "1/4"}, {"110", "1/4"}}},
        {{"IX", "ZI", "ZX"}, {{"000", "1/4"}, {"011", "1/4"}, {"101", "1/4"}, {"110", "1/4"}}},
        {{"XX", "ZZ", "YY"}, {{"001", "1"}}},
    };
}

// Possibility table of the same model.
inline std::vector<ListedRow> mermin_possibility_table() {
    return {
        {{"XI", "IX", "XX"}, {{"000", "1"}, {"110", "1"}}},
        {{"IZ", "ZI", "ZZ"}, {{"000", "1"}, {"110", "1"}}},
        {{"XZ", "ZX", "YY"}, {{"011", "1"}, {"101", "1"}}},
        {{"XI", "IZ", "XZ"}, {{"000", "1"}, {"011", "1"}, {"101", "1"}, {"110", "1"}}},
        {{"IX", "ZI", "ZX"}, {{"000", "1"}, {"011", "1"}, {"101", "1"}, {"110", "1"}}},
        {{"XX", "ZZ", "YY"}, {{"001", "1"}}},
    };
}

// Four rows of the GHZ model.
inline std::vector<ListedRow> ghz_listed_rows() {
    const std::map<std::string, std::string> even{{"000", "1/4"}, {"011", "1/4"}, {"101", "1/4"}, {"110", "1/4"}};
    const std::map<std::string, std::string> odd{{"001", "1/4"}, {"010", "1/4"}, {"100", "1/4"}, {"111", "1/4"}};
    return {
        {{"XII", "IXI", "IIX"}, even},
        {{"XII", "IYI", "IIY"}, odd},
        {{"YII", "IXI", "IIY"}, odd},
        {{"YII", "IYI", "IIX"}, odd},
    };
}

// The magic-square relations: contexts, all-ones coefficients, constants.
struct Relation {
    std::vector<std::string> labels;
    bool a;
};
inline std::vector<Relation> mermin_relations() {
    return {
        {{"XI", "IX", "XX"}, false}, {{"IZ", "ZI", "ZZ"}, false}, {{"XZ", "ZX", "YY"}, false},
        {{"XI", "IZ", "XZ"}, false}, {{"IX", "ZI", "ZX"}, false}, {{"XX", "ZZ", "YY"}, true},
    };
}

// Closure of {XI, IX, ZI, IZ} as listed: ± each of these.
inline std::vector<std::string> xz222_closure_listing() {
    return {"II", "XI", "IX", "XX", "IZ", "ZI", "ZZ", "XZ", "ZX", "YY"};
}

inline PauliSet paulis(const std::vector<std::string> &texts) { return PauliSet::parse(texts); }

// The nine operators of the magic square.
inline PauliSet square_operators() { return paulis({"XI", "IX", "XX", "IZ", "ZI", "ZZ", "XZ", "ZX", "YY"}); }

/// The 15 nontrivial positive 2-qubit Paulis in canonical order.
inline std::vector<PauliOperator> two_qubit_nontrivial() {
    std::vector<PauliOperator> out;
    const std::string letters = "IXYZ";
    for (char a : letters)
        for (char b : letters) {
            if (a == 'I' && b == 'I') continue;
            out.push_back(PauliOperator::parse(std::string{a, b}));
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace fixtures
