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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero when any fails. All comparisons are exact unless noted.

#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sheafctx/analysis.hpp"
#include "sheafctx/corpus.hpp"
#include "sheafctx/global_analysis.hpp"
#include "sheafctx/io.hpp"
#include "sheafctx/kl.hpp"
#include "sheafctx/linear_theory.hpp"
#include "sheafctx/pauli.hpp"
#include "sheafctx/quantum.hpp"

using namespace sheafctx;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream why;

    void expect(bool ok, const std::string &what) {
        if (!ok && pass) why << what;
        pass = pass && ok;
    }
};

MeasurementScenario bell() { return fixtures::listed_scenario(fixtures::chsh_table()); }

Rational pinned_chsh_ncf() {
    Json j = read_json_file(SHEAFCTX_TEST_DATA "/corpus_expectations.json");
    return parse_rational(j["chsh"]["ncf"].get<std::string>());
}

void bell_table(Verdict &o) {
    ScenarioDocument doc = chsh_scenario();
    Realization r = realize_model(canonical_state("bell_phi_plus"), doc.scenario, doc.bindings());
    o.expect(r.exact.has_value(), "realization is float-tagged");
    if (!r.exact) return;
    EmpiricalModel expected = fixtures::listed_model(bell(), fixtures::chsh_table());
    o.expect(*r.exact == expected, "realized rows differ from the reference table");
}

void bell_marginals(Verdict &o) {
    EmpiricalModel e = fixtures::listed_model(bell(), fixtures::chsh_table());
    for (const auto &ctx : {Context{"a1", "b1"}, Context{"a1", "b2"}}) {
        ContextDistribution m = marginalize(e.row(ctx), {MeasurementLabel("a1")});
        o.expect(m.weight_at(0) == Rational(1, 2) && m.weight_at(1) == Rational(1, 2),
                 "a1 marginal of {" + ctx.str() + "} is not 1/2");
    }
}

void pr_box(Verdict &o) {
    EmpiricalModel e = fixtures::listed_model(bell(), fixtures::pr_box_table());
    o.expect(!find_global_distribution(e), "global distribution found");
    o.expect(noncontextual_fraction(e).ncf == 0, "ncf is not 0");
    o.expect(global_sections(possibilistic_collapse(e)).empty(), "global sections exist");
}

void chsh(Verdict &o) {
    EmpiricalModel e = fixtures::listed_model(bell(), fixtures::chsh_table());
    o.expect(!find_global_distribution(e), "global distribution found");
    oracle::BruteIncidence b = oracle::brute_incidence(e);
    std::vector<Rational> ones(b.matrix.front().size(), Rational(1));
    oracle::TableauResult t = oracle::tableau_maximize(b.matrix, b.v, ones);
    Rational ncf = noncontextual_fraction(e).ncf;
    o.expect(t.bounded && t.optimum == ncf, "ncf differs from the tableau oracle");
    o.expect(ncf == pinned_chsh_ncf(), "ncf differs from the pinned value " + to_string(pinned_chsh_ncf()));
}

void square_state_independent(Verdict &o) {
    PauliSet square = fixtures::square_operators();
    LinearTheory t = state_independent_theory(square);
    std::vector<LinearEquation> eqs;
    for (const auto &r : fixtures::mermin_relations()) {
        eqs.emplace_back(fixtures::listed_context(r.labels), std::vector<int>(3, 1), r.a);
    }
    o.expect(t == LinearTheory(pauli_scenario(square), eqs), "theory is not the span of the six relations");
    Consistency c = is_consistent(t);
    o.expect(!c.consistent, "theory is consistent");
    bool total = false;
    for (const auto &phi : c.certificate) total ^= phi.a;
    o.expect(!c.certificate.empty() && total, "certificate constants do not sum to 1");
}

void square_realized(Verdict &o) {
    MeasurementScenario sc = pauli_scenario(fixtures::square_operators());
    Realization r = realize_model(canonical_state("bell_phi_plus"), sc);
    o.expect(r.exact.has_value(), "realization is float-tagged");
    if (!r.exact) return;
    const EmpiricalModel &e = *r.exact;
    for (const auto &row : fixtures::mermin_bell_table()) {
        Context c = fixtures::listed_context(row.labels);
        o.expect(e.row(c) == fixtures::listed_distribution(row), "row {" + c.str() + "} differs");
    }
    PossibilisticModel p = possibilistic_collapse(e);
    for (const auto &row : fixtures::mermin_possibility_table()) {
        Context c = fixtures::listed_context(row.labels);
        std::vector<Assignment> expect;
        for (std::size_t i : fixtures::listed_support(row)) expect.push_back(assignment_at(c.members(), 2, i));
        o.expect(p.support(sc.context_index(c)) == expect, "support of {" + c.str() + "} differs");
    }
    o.expect(is_avn(p), "not AvN");
    o.expect(global_sections(p).empty(), "global sections exist");
    o.expect(noncontextual_fraction(e).ncf == 0, "ncf is not 0");
}

void xz222(Verdict &o) {
    PauliSet s = fixtures::paulis({"XI", "IX", "ZI", "IZ"});
    MeasurementScenario sc = pauli_scenario(s);
    o.expect(sc.cover().size() == 4, "cover does not have four local contexts");
    Realization r = realize_model(canonical_state("bell_phi_plus"), sc);
    o.expect(r.exact && noncontextual_fraction(*r.exact).ncf == 1, "ncf is not 1");
    PauliSet c = partial_closure(s);
    std::set<std::string> expect;
    for (const auto &p : fixtures::xz222_closure_listing()) {
        expect.insert(p);
        expect.insert("-" + p);
    }
    auto got = c.strings();
    o.expect(c.size() == 20 && std::set<std::string>(got.begin(), got.end()) == expect,
             "closure differs from the listing");
    o.expect(is_state_independent_avn(s, true), "not AvN in closure");
}

void ghz_plus(Verdict &o) {
    EmpiricalModel ghz = model_from_json(corpus_entry("xy322-ghz").document);
    for (const auto &row : fixtures::ghz_listed_rows()) {
        Context c = fixtures::listed_context(row.labels);
        o.expect(ghz.row(c) == fixtures::listed_distribution(row), "GHZ row {" + c.str() + "} differs");
    }
    o.expect(is_avn(possibilistic_collapse(ghz)), "GHZ model not AvN");
    EmpiricalModel plus = model_from_json(corpus_entry("xy322-plus").document);
    for (const auto &row : plus.rows()) {
        for (const auto &w : row.weights()) o.expect(w == Rational(1, 8), "uniform model has a weight other than 1/8");
    }
    o.expect(noncontextual_fraction(plus).ncf == 1, "uniform model ncf is not 1");
}

void hidden_variables(Verdict &o) {
    MeasurementScenario sc = bell();
    const std::size_t globals = 16;
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        std::map<std::size_t, Rational> w;
        std::size_t parts = 1 + rng() % 5;
        long total = 0;
        std::vector<std::pair<std::size_t, long>> draws;
        for (std::size_t k = 0; k < parts; ++k) {
            long weight = 1 + static_cast<long>(rng() % 9);
            draws.emplace_back(rng() % globals, weight);
            total += weight;
        }
        for (const auto &[g, weight] : draws) w[g] += Rational(weight, total);
        GlobalDistribution input(sc.measurements(), 2, w);
        EmpiricalModel e = induced_model(input, sc);
        auto d = find_global_distribution(e);
        if (!d) {
            o.expect(false, "no global distribution on trial " + std::to_string(trial));
            return;
        }
        HiddenVariableModel h = to_hidden_variable(*d, sc);
        o.expect(!find_factorisation_failure(h), "hidden-variable model not factorisable");
        GlobalDistribution back = from_hidden_variable(h);
        for (const auto &c : sc.cover()) {
            o.expect(back.marginal(c.members()) == e.row(c), "marginal mismatch on trial " + std::to_string(trial));
        }
    }
}

void pauli_oracle(Verdict &o) {
    std::vector<std::string> letters;
    for (char a : std::string("IXYZ"))
        for (char b : std::string("IXYZ")) letters.push_back(std::string{a, b});
    std::size_t pairs = 0;
    for (const auto &a : letters) {
        for (const auto &b : letters) {
            PauliOperator p = PauliOperator::parse(a);
            PauliOperator q = PauliOperator::parse(b);
            oracle::Matrix mp = oracle::pauli_matrix(a);
            oracle::Matrix mq = oracle::pauli_matrix(b);
            oracle::Matrix pq = oracle::matmul(mp, mq);
            auto id = oracle::identify_pauli(pq);
            PauliOperator r = multiply(p, q);
            o.expect(id && r.letters() == id->second && r.phase() == id->first, "product " + a + "*" + b + " differs");
            o.expect(commutes(p, q) == oracle::approx_equal(pq, oracle::matmul(mq, mp)), "commutation " + a + "," + b);
            ++pairs;
        }
    }
    o.expect(pairs == 256, "not 256 pairs");
    o.expect(multiply(PauliOperator::parse("XX"), PauliOperator::parse("ZZ")) == PauliOperator::parse("-YY"),
             "XX*ZZ is not -YY");
}

void hierarchy(Verdict &o) {
    for (const auto &name : corpus_names()) {
        Json report = analyze(input_from_json(name, corpus_entry(name).document), all_checks());
        const Json &r = report.contains("results") ? report["results"] : report;
        auto is_true = [&](const char *key) { return r.contains(key) && r[key].is_boolean() && r[key].get<bool>(); };
        auto known = [&](const char *key) { return r.contains(key) && !r[key].is_null(); };
        if (is_true("si_avn") && known("avn")) o.expect(is_true("avn"), name + ": si-AvN but not AvN");
        if (is_true("avn")) o.expect(is_true("strongly_contextual"), name + ": AvN but not strongly contextual");
        if (known("ncf") && known("strongly_contextual")) {
            o.expect(is_true("strongly_contextual") == (r["ncf"] == "0"), name + ": strong differs from ncf = 0");
        }
    }
}

void kl_consistency(Verdict &o) {
    auto pool = fixtures::two_qubit_nontrivial();
    std::size_t subsets = 0;
    for (std::size_t a = 0; a < 15; ++a)
        for (std::size_t b = a + 1; b < 15; ++b)
            for (std::size_t c = b + 1; c < 15; ++c)
                for (std::size_t d = c + 1; d < 15; ++d) {
                    std::array<PauliOperator, 4> ops{pool[a], pool[b], pool[c], pool[d]};
                    PauliSet s(std::vector<PauliOperator>(ops.begin(), ops.end()));
                    bool avn = is_state_independent_avn(s, true);
                    bool cached = pattern_verdict(commutability_pattern(ops)) == PatternVerdict::Contextual;
                    KLPatternResult t = kl_pattern_test(s);
                    std::string tag = "{" + s.strings()[0] + "," + s.strings()[1] + "," + s.strings()[2] + "," +
                                      s.strings()[3] + "}";
                    o.expect(cached == avn, "pattern table disagrees on " + tag);
                    o.expect(t.passes == avn, "pattern test disagrees on " + tag);
                    if (t.cached) o.expect(*t.cached == PatternVerdict::Contextual, "cached verdict on " + tag);
                    if (kl_witness(s)) o.expect(avn, "witness without closure AvN on " + tag);
                    ++subsets;
                }
    o.expect(subsets == 1365, "not 1365 subsets");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Verdict &)>>> criteria{
        {"bell table reproduction", bell_table},
        {"no-signaling marginals", bell_marginals},
        {"PR box", pr_box},
        {"CHSH contextuality", chsh},
        {"magic square, state-independent", square_state_independent},
        {"magic square, realized", square_realized},
        {"XZ-(2,2,2)", xz222},
        {"GHZ vs uniform", ghz_plus},
        {"hidden-variable round trip", hidden_variables},
        {"Pauli algebra oracle", pauli_oracle},
        {"hierarchy coherence", hierarchy},
        {"KL consistency", kl_consistency},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict o;
        try {
            criteria[i].second(o);
        } catch (const std::exception &e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first;
        if (!o.pass) std::cout << ": " << o.why.str();
        std::cout << "\n";
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
