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

#include "sheafctx/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "sheafctx/errors.hpp"

namespace sheafctx {

namespace {

const Json &field(const Json &j, const char *key) {
    if (!j.is_object()) throw ParseError(std::string("expected an object holding \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing \"") + key + "\"");
    return *it;
}

std::string text_of(const Json &j, const char *what) {
    if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

const Json &array_of(const Json &j, const char *what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    return j;
}

std::vector<MeasurementLabel> labels_of(const Json &j, const char *what) {
    std::vector<MeasurementLabel> out;
    for (const auto &item : array_of(j, what)) {
        try {
            out.emplace_back(text_of(item, "measurement label"));
        } catch (const DomainError &err) {
            throw ParseError(err.what());
        }
    }
    return out;
}

// Labels of a context key, in written order.
std::vector<MeasurementLabel> split_key(const std::string &key) {
    std::vector<MeasurementLabel> out;
    std::size_t start = 0;
    while (true) {
        auto comma = key.find(',', start);
        std::string part = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (part.empty()) throw ParseError("malformed context key '" + key + "'");
        out.emplace_back(part);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

// Maps a context key of the document to its cover index.
std::size_t context_of_key(const MeasurementScenario &sc, const std::string &key,
                           std::vector<MeasurementLabel> &written) {
    written = split_key(key);
    Context ctx = [&] {
        try {
            return Context(written);
        } catch (const DomainError &err) {
            throw ParseError(err.what());
        }
    }();
    if (ctx.size() != written.size()) throw ParseError("repeated label in context key '" + key + "'");
    std::size_t c = sc.context_index(ctx);
    if (c == sc.cover().size()) throw ParseError("'" + key + "' is not a context of the cover");
    return c;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string &text) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        throw ParseError("malformed number '" + text + "'");
    }
    if (used != text.size()) throw ParseError("malformed number '" + text + "'");
    return v;
}

Rational rational_of(const Json &j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    return parse_rational(text_of(j, "probability"));
}

}  // namespace

double parse_angle(const std::string &raw) {
    std::string text;
    for (char c : raw) {
        if (c != ' ') text += c;
    }
    auto pi = text.find("pi");
    if (pi == std::string::npos) return parse_double(text);
    std::string before = text.substr(0, pi);
    std::string after = text.substr(pi + 2);
    double factor = 1;
    if (before == "-") {
        factor = -1;
    } else if (!before.empty() && before != "+") {
        if (before.back() != '*') throw ParseError("malformed angle '" + raw + "'");
        factor = parse_double(before.substr(0, before.size() - 1));
    }
    double divisor = 1;
    if (!after.empty()) {
        if (after.front() != '/') throw ParseError("malformed angle '" + raw + "'");
        divisor = parse_double(after.substr(1));
        if (divisor == 0) throw ParseError("zero divisor in angle '" + raw + "'");
    }
    return factor * std::numbers::pi / divisor;
}

Bindings ScenarioDocument::bindings() const {
    Bindings out;
    for (const auto &label : scenario.measurements()) {
        auto it = equatorial.find(label);
        if (it != equatorial.end()) {
            out.emplace(label, EquatorialMeasurement{it->second.party, parse_angle(it->second.angle)});
        } else {
            out.emplace(label, label_operator(label));
        }
    }
    return out;
}

std::string context_key(const LabelSet &labels) { return join_labels(labels, ","); }

Json to_json(const MeasurementScenario &scenario) { return to_json(ScenarioDocument{scenario, {}}); }

Json to_json(const ScenarioDocument &doc) {
    const auto &sc = doc.scenario;
    Json j = Json::object();
    j["measurements"] = Json::array();
    for (const auto &m : sc.measurements()) j["measurements"].push_back(m.str());
    j["outcomes"] = Json::array();
    for (Outcome o = 0; o < sc.outcome_count(); ++o) j["outcomes"].push_back(o);
    j["ring"] = sc.ring() == OutcomeRing::Z2 ? "Z2" : "none";
    j["contexts"] = Json::array();
    for (const auto &c : sc.cover()) {
        Json ctx = Json::array();
        for (const auto &m : c.members()) ctx.push_back(m.str());
        j["contexts"].push_back(std::move(ctx));
    }
    if (!doc.equatorial.empty()) {
        Json eq = Json::object();
        for (const auto &[label, spec] : doc.equatorial) eq[label.str()] = Json::array({spec.party, spec.angle});
        j["equatorial"] = std::move(eq);
    }
    return j;
}

ScenarioDocument scenario_from_json(const Json &j) {
    std::vector<Context> cover;
    for (const auto &ctx : array_of(field(j, "contexts"), "\"contexts\"")) {
        try {
            cover.emplace_back(labels_of(ctx, "context"));
        } catch (const DomainError &err) {
            throw ParseError(err.what());
        }
    }
    Outcome outcomes = 2;
    if (j.contains("outcomes")) {
        // Either the list 0..k-1 or the count k.
        const Json &o = j["outcomes"];
        if (o.is_number_unsigned() && o.get<std::uint64_t>() >= 1 && o.get<std::uint64_t>() <= 1024) {
            outcomes = o.get<Outcome>();
        } else if (o.is_array() && !o.empty() && o.size() <= 1024) {
            for (std::size_t k = 0; k < o.size(); ++k) {
                if (!o[k].is_number_unsigned() || o[k].get<std::uint64_t>() != k) {
                    throw ParseError("\"outcomes\" must list 0, 1, ..., k-1");
                }
            }
            outcomes = static_cast<Outcome>(o.size());
        } else {
            throw ParseError("\"outcomes\" must list 0, 1, ..., k-1");
        }
    }
    OutcomeRing ring = outcomes == 2 ? OutcomeRing::Z2 : OutcomeRing::None;
    if (j.contains("ring")) {
        std::string r = text_of(j["ring"], "\"ring\"");
        if (r == "Z2") {
            ring = OutcomeRing::Z2;
        } else if (r == "none") {
            ring = OutcomeRing::None;
        } else {
            throw ParseError("unknown ring '" + r + "'");
        }
    }
    std::vector<MeasurementLabel> measurements;
    if (j.contains("measurements")) {
        measurements = labels_of(j["measurements"], "\"measurements\"");
    } else {
        for (const auto &c : cover) measurements.insert(measurements.end(), c.members().begin(), c.members().end());
    }
    ScenarioDocument doc{[&] {
                             try {
                                 return MeasurementScenario(std::move(measurements), std::move(cover), outcomes, ring);
                             } catch (const DomainError &err) {
                                 throw ParseError(err.what());
                             }
                         }(),
                         {}};
    if (j.contains("equatorial")) {
        const Json &eq = j["equatorial"];
        if (!eq.is_object()) throw ParseError("\"equatorial\" must be an object");
        for (const auto &[label, spec] : eq.items()) {
            if (!spec.is_array() || spec.size() != 2 || !spec[0].is_number_unsigned()) {
                throw ParseError("equatorial binding for " + label + " must be [party, angle]");
            }
            std::string angle = spec[1].is_string() ? spec[1].get<std::string>() : spec[1].dump();
            parse_angle(angle);
            doc.equatorial.emplace(MeasurementLabel(label), EquatorialSpec{spec[0].get<std::size_t>(), angle});
        }
    }
    return doc;
}

namespace {

ScenarioDocument scenario_member(const Json &j) {
    const Json &sc = field(j, "scenario");
    if (sc.is_string()) return scenario_from_json(read_json_file(sc.get<std::string>()));
    return scenario_from_json(sc);
}

}  // namespace

Json to_json(const EmpiricalModel &e, const std::map<MeasurementLabel, EquatorialSpec> &equatorial) {
    Json j = Json::object();
    j["scenario"] = to_json(ScenarioDocument{e.scenario(), equatorial});
    Json table = Json::object();
    const Outcome base = e.scenario().outcome_count();
    for (const auto &row : e.rows()) {
        Json dist = Json::object();
        for (std::size_t k = 0; k < row.weights().size(); ++k) {
            dist[outcome_string(assignment_at(row.domain(), base, k))] = to_string(row.weight_at(k));
        }
        table[context_key(row.domain())] = std::move(dist);
    }
    j["rows"] = std::move(table);
    return j;
}

EmpiricalModel model_from_json(const Json &j) {
    ScenarioDocument doc = scenario_member(j);
    const auto &sc = doc.scenario;
    const Json &table = field(j, "rows");
    if (!table.is_object()) throw ParseError("\"rows\" must be an object");
    std::vector<std::vector<Rational>> weights(sc.cover().size());
    std::vector<bool> seen(sc.cover().size(), false);
    for (const auto &[key, dist] : table.items()) {
        std::vector<MeasurementLabel> written;
        std::size_t c = context_of_key(sc, key, written);
        if (seen[c]) throw ParseError("context {" + sc.cover()[c].str() + "} listed twice");
        seen[c] = true;
        weights[c].assign(assignment_count(written.size(), sc.outcome_count()), Rational(0));
        if (!dist.is_object()) throw ParseError("row '" + key + "' must be an object");
        for (const auto &[outcome, w] : dist.items()) {
            Assignment s = parse_outcome_string(written, outcome, sc.outcome_count());
            weights[c][assignment_index(s, sc.outcome_count())] = rational_of(w);
        }
    }
    std::vector<ContextDistribution> rows;
    for (std::size_t c = 0; c < sc.cover().size(); ++c) {
        if (!seen[c]) throw ParseError("missing row for context {" + sc.cover()[c].str() + "}");
        try {
            rows.emplace_back(sc.cover()[c].members(), sc.outcome_count(), std::move(weights[c]));
        } catch (const DomainError &err) {
            throw ParseError(err.what());
        }
    }
    return EmpiricalModel(sc, std::move(rows));
}

Json to_json(const PossibilisticModel &p) {
    Json j = Json::object();
    j["scenario"] = to_json(p.scenario());
    Json supports = Json::object();
    for (std::size_t c = 0; c < p.scenario().cover().size(); ++c) {
        Json list = Json::array();
        for (const auto &s : p.support(c)) list.push_back(outcome_string(s));
        supports[context_key(p.scenario().cover()[c].members())] = std::move(list);
    }
    j["supports"] = std::move(supports);
    return j;
}

PossibilisticModel possibilistic_from_json(const Json &j) {
    ScenarioDocument doc = scenario_member(j);
    const auto &sc = doc.scenario;
    const Json &supports = field(j, "supports");
    if (!supports.is_object()) throw ParseError("\"supports\" must be an object");
    std::vector<std::vector<std::size_t>> out(sc.cover().size());
    std::vector<bool> seen(sc.cover().size(), false);
    for (const auto &[key, list] : supports.items()) {
        std::vector<MeasurementLabel> written;
        std::size_t c = context_of_key(sc, key, written);
        if (seen[c]) throw ParseError("context {" + sc.cover()[c].str() + "} listed twice");
        seen[c] = true;
        for (const auto &item : array_of(list, "support")) {
            Assignment s = parse_outcome_string(written, text_of(item, "outcome"), sc.outcome_count());
            out[c].push_back(assignment_index(s, sc.outcome_count()));
        }
    }
    for (std::size_t c = 0; c < sc.cover().size(); ++c) {
        if (!seen[c]) throw ParseError("missing support for context {" + sc.cover()[c].str() + "}");
    }
    try {
        return PossibilisticModel(sc, std::move(out));
    } catch (const DomainError &err) {
        throw ParseError(err.what());
    }
}

Json to_json(const LinearEquation &phi) {
    Json j = Json::object();
    j["context"] = Json::array();
    Json r = Json::object();
    for (std::size_t i = 0; i < phi.context.size(); ++i) {
        j["context"].push_back(phi.context.members()[i].str());
        r[phi.context.members()[i].str()] = phi.r[i] ? 1 : 0;
    }
    j["r"] = std::move(r);
    j["a"] = phi.a ? 1 : 0;
    return j;
}

Json to_json(const LinearTheory &t) {
    Json j = Json::object();
    j["scenario"] = to_json(t.scenario());
    j["equations"] = Json::array();
    for (const auto &phi : t.basis()) j["equations"].push_back(to_json(phi));
    return j;
}

LinearTheory theory_from_json(const Json &j) {
    ScenarioDocument doc = scenario_member(j);
    LinearTheory theory(doc.scenario);
    for (const auto &eq : array_of(field(j, "equations"), "\"equations\"")) {
        Context ctx = [&] {
            try {
                return Context(labels_of(field(eq, "context"), "context"));
            } catch (const DomainError &err) {
                throw ParseError(err.what());
            }
        }();
        const Json &r = field(eq, "r");
        if (!r.is_object()) throw ParseError("\"r\" must be an object");
        BitVec bits(ctx.size());
        for (const auto &[label, bit] : r.items()) {
            const auto &m = ctx.members();
            auto it = std::lower_bound(m.begin(), m.end(), MeasurementLabel(label));
            if (it == m.end() || it->str() != label) throw ParseError(label + " is not in {" + ctx.str() + "}");
            if (!bit.is_number_integer() || (bit != 0 && bit != 1)) throw ParseError("coefficients must be 0 or 1");
            bits[static_cast<std::size_t>(it - m.begin())] = bit == 1;
        }
        const Json &a = field(eq, "a");
        if (!a.is_number_integer() || (a != 0 && a != 1)) throw ParseError("\"a\" must be 0 or 1");
        try {
            theory.add(LinearEquation(ctx, std::move(bits), a == 1));
        } catch (const DomainError &err) {
            throw ParseError(err.what());
        }
    }
    return theory;
}

Json to_json(const StateVector &psi) {
    Json j = Json::object();
    j["n"] = psi.n();
    j["amplitudes"] = Json::array();
    for (const auto &a : psi.amplitudes()) j["amplitudes"].push_back({format_double(a.real()), format_double(a.imag())});
    return j;
}

StateVector state_from_json(const Json &j) {
    const Json &n = field(j, "n");
    if (!n.is_number_unsigned()) throw ParseError("\"n\" must be a nonnegative integer");
    std::vector<Amplitude> amps;
    for (const auto &pair : array_of(field(j, "amplitudes"), "\"amplitudes\"")) {
        if (!pair.is_array() || pair.size() != 2) throw ParseError("each amplitude is [re, im]");
        auto part = [](const Json &v) { return v.is_number() ? v.get<double>() : parse_double(text_of(v, "amplitude")); };
        amps.emplace_back(part(pair[0]), part(pair[1]));
    }
    try {
        return StateVector(n.get<std::size_t>(), std::move(amps));
    } catch (const DomainError &err) {
        throw ParseError(err.what());
    }
}

Json to_json(const PauliSet &s) {
    Json j = Json::array();
    for (const auto &p : s) j.push_back(p.str());
    return j;
}

PauliSet pauli_set_from_json(const Json &j) {
    std::vector<std::string> texts;
    for (const auto &item : array_of(j, "Pauli set")) texts.push_back(text_of(item, "Pauli string"));
    try {
        return PauliSet::parse(texts);
    } catch (const DomainError &err) {
        throw ParseError(err.what());
    }
}

Json parse_json_text(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception &err) {
        throw ParseError(std::string("invalid JSON: ") + err.what());
    }
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

}  // namespace sheafctx
