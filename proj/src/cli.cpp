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

#include "sheafctx/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "sheafctx/analysis.hpp"
#include "sheafctx/conjecture_scan.hpp"
#include "sheafctx/corpus.hpp"
#include "sheafctx/errors.hpp"
#include "sheafctx/global_analysis.hpp"
#include "sheafctx/kl.hpp"

namespace sheafctx {

namespace {

class UsageError : public Error {
   public:
    explicit UsageError(const std::string &what) : Error(what) {}
};

struct Globals {
    std::string format = "table";
    std::uint64_t seed = 0;
    std::string out_path;
    bool json() const { return format == "json"; }
};

Json load_document(const std::string &source) {
    if (is_corpus_name(source)) return corpus_entry(source).document;
    return read_json_file(source);
}

AnalysisInput load_input(const std::string &source) { return input_from_json(source, load_document(source)); }

void require_valid(const MeasurementScenario &sc) {
    auto violations = validate_scenario(sc);
    if (!violations.empty()) throw PreconditionError("invalid scenario: " + violations.front().message);
}

// Operators from inline strings, a single corpus name, or a set file.
PauliSet load_paulis(const std::vector<std::string> &items, const std::string &set_file) {
    if (!set_file.empty()) {
        AnalysisInput in = input_from_json(set_file, read_json_file(set_file));
        if (!in.paulis) throw ParseError(set_file + " does not describe Pauli operators");
        return *in.paulis;
    }
    if (items.empty()) throw UsageError("no Pauli operators given");
    if (items.size() == 1 && is_corpus_name(items[0])) {
        AnalysisInput in = load_input(items[0]);
        if (!in.paulis) throw UsageError(items[0] + " has no Pauli labels");
        return *in.paulis;
    }
    PauliSet s = PauliSet::parse(items);
    for (const auto &p : s) {
        if (!p.is_hermitian()) throw PreconditionError(p.str() + " is not Hermitian");
    }
    return s;
}

Json equations_json(const std::vector<LinearEquation> &eqs) {
    Json j = Json::array();
    for (const auto &phi : eqs) j.push_back(phi.str());
    return j;
}

Json contexts_json(const std::vector<Context> &cover) {
    Json j = Json::array();
    for (const auto &c : cover) j.push_back(c.str());
    return j;
}

void print_lines(std::ostream &os, const std::string &title, const Json &list) {
    os << title << " (" << list.size() << "):\n";
    for (const auto &item : list) os << "  " << item.get<std::string>() << "\n";
}

Json tree_json(const DeterminingTree &t) {
    Json j = Json::object();
    j["root"] = t.root().str();
    j["tree"] = t.str();
    j["determining_set"] = to_json(t.determining_set);
    return j;
}

int cmd_validate(const Globals &g, const std::string &source, std::ostream &os) {
    Json doc = load_document(source);
    AnalysisInput in = input_from_json(source, doc);
    auto violations = validate_scenario(in.scenario);
    std::vector<SignalingViolation> signaling;
    if (in.model) signaling = check_no_signaling(*in.model);
    bool ok = violations.empty() && signaling.empty();
    if (g.json()) {
        Json j = Json::object();
        j["valid"] = ok;
        j["violations"] = Json::array();
        for (const auto &v : violations) j["violations"].push_back(v.message);
        j["signaling"] = Json::array();
        for (const auto &v : signaling) {
            j["signaling"].push_back("{" + v.first.str() + "} vs {" + v.second.str() + "} at " +
                                     outcome_string(v.at) + ": " + to_string(v.first_value) + " != " +
                                     to_string(v.second_value));
        }
        os << j.dump(2) << "\n";
    } else {
        os << (ok ? "valid" : "invalid") << "\n";
        for (const auto &v : violations) os << "  " << v.message << "\n";
        for (const auto &v : signaling) {
            os << "  signaling: {" << v.first.str() << "} vs {" << v.second.str() << "} at " << outcome_string(v.at)
               << ": " << to_string(v.first_value) << " != " << to_string(v.second_value) << "\n";
        }
    }
    return ok ? kExitOk : kExitValidation;
}

int cmd_analyze(const Globals &g, const std::string &source, const std::string &checks_text, std::ostream &os) {
    std::vector<Check> checks;
    if (checks_text.empty()) {
        checks = all_checks();
    } else {
        std::stringstream ss(checks_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto c = parse_check(item);
            if (!c) throw UsageError("unknown check '" + item + "'");
            checks.push_back(*c);
        }
        if (checks.empty()) throw UsageError("no checks requested");
    }
    AnalysisInput in = load_input(source);
    require_valid(in.scenario);
    Json report = analyze(in, checks);
    os << (g.json() ? report.dump(2) + "\n" : render_table(report));
    return kExitOk;
}

int cmd_realize(const Globals &g, const std::string &state_source, const std::string &source, std::ostream &os) {
    StateVector psi = [&] {
        try {
            return canonical_state(state_source);
        } catch (const DomainError &) {
            return state_from_json(read_json_file(state_source));
        }
    }();
    Json doc = load_document(source);
    const Json &scenario_json = doc.contains("scenario") ? doc["scenario"] : doc;
    ScenarioDocument sd = scenario_from_json(scenario_json);
    require_valid(sd.scenario);
    Realization r = realize_model(psi, sd.scenario, sd.bindings());
    if (g.json()) {
        Json j = r.exact ? to_json(*r.exact, sd.equatorial) : Json::object();
        if (!r.exact) {
            j["scenario"] = to_json(sd);
            Json table = Json::object();
            for (const auto &row : r.rows) {
                Json dist = Json::object();
                for (std::size_t k = 0; k < row.probabilities.size(); ++k) {
                    dist[outcome_string(assignment_at(row.domain, 2, k))] = row.probabilities[k];
                }
                table[context_key(row.domain)] = std::move(dist);
            }
            j["rows"] = std::move(table);
        }
        j["exact"] = r.exact.has_value();
        j["residual"] = r.residual;
        os << j.dump(2) << "\n";
        return kExitOk;
    }
    os << (r.exact ? "exact" : "float-tagged") << " (residual " << r.residual << ")\n";
    for (const auto &row : r.rows) {
        os << "{" << join_labels(row.domain) << "}";
        for (std::size_t k = 0; k < row.probabilities.size(); ++k) {
            os << "  " << outcome_string(assignment_at(row.domain, 2, k)) << "=";
            if (row.exact) {
                os << to_string(row.exact->weight_at(k));
            } else {
                os << row.probabilities[k];
            }
        }
        os << "\n";
    }
    return kExitOk;
}

int cmd_closure(const Globals &g, const PauliSet &s, std::ostream &os) {
    PauliSet closure = partial_closure(s);
    LinearTheory theory = state_independent_theory(closure);
    Consistency verdict = is_consistent(theory);
    Json members = to_json(closure);
    Json cover = contexts_json(theory.scenario().cover());
    Json basis = equations_json(theory.basis());
    if (g.json()) {
        Json j = Json::object();
        j["members"] = members;
        j["cover"] = cover;
        j["theory"] = basis;
        j["consistent"] = verdict.consistent;
        j["si_avn_closure"] = !verdict.consistent;
        if (!verdict.consistent) j["certificate"] = equations_json(verdict.certificate);
        os << j.dump(2) << "\n";
        return kExitOk;
    }
    print_lines(os, "closure", members);
    print_lines(os, "cover", cover);
    print_lines(os, "theory basis", basis);
    os << (verdict.consistent ? "consistent" : "inconsistent (state-independent AvN in closure)") << "\n";
    if (!verdict.consistent) print_lines(os, "certificate", equations_json(verdict.certificate));
    return kExitOk;
}

int cmd_si_avn(const Globals &g, const PauliSet &s, bool in_closure, std::ostream &os) {
    LinearTheory theory = state_independent_theory(in_closure ? partial_closure(s) : s);
    Consistency verdict = is_consistent(theory);
    if (g.json()) {
        Json j = Json::object();
        j["set"] = to_json(s);
        j["in_closure"] = in_closure;
        j["si_avn"] = !verdict.consistent;
        j["certificate"] = equations_json(verdict.certificate);
        os << j.dump(2) << "\n";
        return kExitOk;
    }
    os << "state-independent AvN" << (in_closure ? " in closure" : "") << ": "
       << (verdict.consistent ? "false" : "true") << "\n";
    if (!verdict.consistent) print_lines(os, "certificate", equations_json(verdict.certificate));
    return kExitOk;
}

int cmd_kl(const Globals &g, const PauliSet &s, std::ostream &os) {
    auto witness = kl_witness(s);
    auto pattern = kl_pattern_test(s);
    if (g.json()) {
        Json j = Json::object();
        j["set"] = to_json(s);
        if (witness) {
            Json w = Json::object();
            w["x"] = witness->x.str();
            w["positive"] = tree_json(witness->positive);
            w["negative"] = tree_json(witness->negative);
            j["witness"] = std::move(w);
        } else {
            j["witness"] = nullptr;
        }
        j["pattern_test"] = pattern.passes;
        if (pattern.subset) {
            Json sub = Json::array();
            for (const auto &p : *pattern.subset) sub.push_back(p.str());
            j["subset"] = std::move(sub);
            j["pattern"] = *pattern.pattern;
            j["cached_verdict"] = to_string(*pattern.cached);
        }
        os << j.dump(2) << "\n";
        return kExitOk;
    }
    if (witness) {
        os << "witness: " << witness->x.str() << "\n";
        os << "  tree(+): " << witness->positive.str() << "\n";
        os << "  tree(-): " << witness->negative.str() << "\n";
        os << "  determining set: " << join_labels([&] {
            std::vector<MeasurementLabel> labels;
            for (const auto &p : witness->positive.determining_set) labels.emplace_back(p.str());
            return labels;
        }(), " ") << "\n";
    } else {
        os << "witness: none\n";
    }
    os << "pattern test: " << (pattern.passes ? "true" : "false") << "\n";
    if (pattern.subset) {
        os << "  subset:";
        for (const auto &p : *pattern.subset) os << " " << p.str();
        os << "\n  pattern: " << *pattern.pattern << " (cached: " << to_string(*pattern.cached) << ")\n";
    }
    return kExitOk;
}

int cmd_corpus(const Globals &g, const std::string &name, std::ostream &os) {
    if (name.empty() || name == "list") {
        if (g.json()) {
            Json j = Json::array();
            for (const auto &n : corpus_names()) j.push_back(n);
            os << j.dump(2) << "\n";
        } else {
            for (const auto &n : corpus_names()) os << n << "  " << corpus_entry(n).summary << "\n";
        }
        return kExitOk;
    }
    if (!is_corpus_name(name)) throw UsageError("unknown corpus entry '" + name + "'");
    os << corpus_entry(name).document.dump(2) << "\n";
    return kExitOk;
}

int cmd_scan(const Globals &g, ScanOptions options, std::ostream &os) {
    options.seed = g.seed;
    try {
        check_scan_options(options);
    } catch (const SizeError &err) {
        throw UsageError(err.what());
    }
    ScanReport report = conjecture_scan(options);
    if (g.json()) {
        os << to_json(report).dump(2) << "\n";
        return kExitOk;
    }
    os << "examined: " << report.examined << "\n";
    os << "contextual realization found: " << report.contextual << "\n";
    os << "closure-AvN: " << report.closure_avn << "\n";
    os << "counterexample candidates: " << report.counterexamples.size() << "\n";
    for (const auto &v : report.counterexamples) {
        os << " ";
        for (const auto &p : v.set) os << " " << p.str();
        os << "  cf=" << to_string(v.best_cf) << "\n";
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Contextuality analysis for measurement scenarios and Pauli observables", "sheafctx"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--format", g.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--out", g.out_path, "write output to this file");

    std::string source;
    std::string corpus_name;
    std::string input_path;
    std::string checks;
    std::string state;
    std::string set_file;
    std::vector<std::string> paulis;
    bool in_closure = false;
    ScanOptions scan;

    auto *validate = app.add_subcommand("validate", "check a scenario or model document");
    validate->add_option("source", source, "corpus name or file")->required();

    auto *analyze_cmd = app.add_subcommand("analyze", "run contextuality checks");
    analyze_cmd->add_option("source", source, "corpus name or file");
    analyze_cmd->add_option("--corpus", corpus_name, "corpus entry");
    analyze_cmd->add_option("--input", input_path, "model, support, scenario or Pauli-set file");
    analyze_cmd->add_option("--checks", checks, "comma list of nosig,ncf,strong,logical,avn,si-avn,si-avn-closure,kl");

    auto *realize = app.add_subcommand("realize", "Born-rule model of a state on a scenario");
    realize->add_option("--state", state, "canonical state name or state file")->required();
    realize->add_option("source", source, "scenario file or corpus name")->required();

    auto *closure = app.add_subcommand("closure", "partial closure, cover, theory and verdict");
    closure->add_option("paulis", paulis, "Pauli strings (use -- before signed ones)");
    closure->add_option("--set", set_file, "Pauli set file");

    auto *si = app.add_subcommand("si-avn", "state-independent AvN test");
    si->add_option("paulis", paulis, "Pauli strings");
    si->add_option("--set", set_file, "Pauli set file");
    si->add_flag("--closure", in_closure, "test the partial closure");

    auto *kl = app.add_subcommand("kl-test", "determining-tree witness and 4-operator pattern test");
    kl->add_option("paulis", paulis, "Pauli strings");
    kl->add_option("--set", set_file, "Pauli set file");

    auto *corpus = app.add_subcommand("corpus", "list or emit built-in examples");
    corpus->add_option("name", source, "entry name or 'list'");

    auto *conj = app.add_subcommand("conjecture-scan", "search Pauli covers for contextual realizations");
    conj->add_option("--max-qubits", scan.max_qubits);
    conj->add_option("--max-set-size", scan.max_set_size);
    conj->add_option("--samples", scan.samples);
    conj->add_option("--random-states", scan.random_states);
    conj->add_flag("--exhaustive", scan.exhaustive);

    std::vector<std::string> argv_storage;
    argv_storage.push_back("sheafctx");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_storage) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    std::ostringstream buffer;
    int code = kExitOk;
    try {
        if (*validate) {
            code = cmd_validate(g, source, buffer);
        } else if (*analyze_cmd) {
            int given = !source.empty() + !corpus_name.empty() + !input_path.empty();
            if (given != 1) throw UsageError("analyze needs exactly one of a source, --corpus or --input");
            if (!corpus_name.empty()) {
                if (!is_corpus_name(corpus_name)) throw UsageError("unknown corpus entry '" + corpus_name + "'");
                source = corpus_name;
            } else if (!input_path.empty()) {
                source = input_path;
            }
            code = cmd_analyze(g, source, checks, buffer);
        } else if (*realize) {
            code = cmd_realize(g, state, source, buffer);
        } else if (*closure) {
            code = cmd_closure(g, load_paulis(paulis, set_file), buffer);
        } else if (*si) {
            code = cmd_si_avn(g, load_paulis(paulis, set_file), in_closure, buffer);
        } else if (*kl) {
            code = cmd_kl(g, load_paulis(paulis, set_file), buffer);
        } else if (*corpus) {
            code = cmd_corpus(g, source, buffer);
        } else if (*conj) {
            code = cmd_scan(g, scan, buffer);
        }
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    if (!g.out_path.empty()) {
        std::ofstream file(g.out_path);
        if (!file) {
            err << "cannot write " << g.out_path << "\n";
            return kExitUsage;
        }
        file << buffer.str();
    } else {
        out << buffer.str();
    }
    return code;
}

}  // namespace sheafctx
