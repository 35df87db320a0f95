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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "sheafctx/empirical.hpp"
#include "sheafctx/errors.hpp"

using namespace sheafctx;
using fixtures::listed_model;
using fixtures::listed_scenario;

namespace {

EmpiricalModel chsh_model() { return listed_model(listed_scenario(fixtures::chsh_table()), fixtures::chsh_table()); }

Rational random_rational(std::mt19937_64 &rng, int max_den = 97) {
    int den = 1 + static_cast<int>(rng() % max_den);
    int num = static_cast<int>(rng() % (den + 1));
    return Rational(num, den);
}

// A random no-signaling model on the Bell scenario: a mixture of point
// masses on global assignments, computed by hand from the labels.
EmpiricalModel random_local_model(const MeasurementScenario &sc, std::mt19937_64 &rng) {
    std::vector<Rational> mix(16);
    Rational total = 0;
    for (auto &w : mix) {
        w = Rational(static_cast<int>(rng() % 5));
        total += w;
    }
    if (total == 0) {
        mix[0] = 1;
        total = 1;
    }
    std::vector<ContextDistribution> rows;
    for (const auto &c : sc.cover()) {
        std::vector<Rational> w(4);
        for (std::size_t g = 0; g < 16; ++g) {
            // Global order a1, a2, b1, b2 with a1 most significant.
            std::map<std::string, unsigned> val{{"a1", (g >> 3) & 1u}, {"a2", (g >> 2) & 1u},
                                                {"b1", (g >> 1) & 1u}, {"b2", g & 1u}};
            std::size_t k = 2 * val[c.members()[0].str()] + val[c.members()[1].str()];
            w[k] += mix[g] / total;
        }
        rows.emplace_back(c.members(), 2, std::move(w));
    }
    return EmpiricalModel(sc, std::move(rows));
}

}  // namespace

TEST_SUITE("empirical") {
    TEST_CASE("rationals parse and print") {
        CHECK(parse_rational("3/8") == Rational(3, 8));
        CHECK(parse_rational("-2") == Rational(-2));
        CHECK(parse_rational("6/8") == Rational(3, 4));
        CHECK(to_string(Rational(3, 4)) == "3/4");
        CHECK(to_string(Rational(1)) == "1");
        CHECK(to_string(Rational(0)) == "0");
        CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
        CHECK_THROWS_AS(parse_rational("x"), ParseError);
        CHECK(limit_denominator(exact_from_double(0.375000000001), 1 << 16) == Rational(3, 8));
    }

    TEST_CASE("distributions must be normalized and nonnegative") {
        LabelSet d = make_label_set({"a", "b"});
        CHECK_THROWS_AS(ContextDistribution(d, 2, {1, 0, 0, 1}), DomainError);
        CHECK_THROWS_AS(ContextDistribution(d, 2, {Rational(3, 2), Rational(-1, 2), 0, 0}), DomainError);
        CHECK_THROWS_AS(ContextDistribution(d, 2, {1, 0}), DomainError);
        auto u = ContextDistribution::uniform(d, 2);
        CHECK(u.weight_at(3) == Rational(1, 4));
        auto p = ContextDistribution::point_mass(Assignment({"a", "b"}, {1, 0}), 2);
        CHECK(p.support() == std::vector<std::size_t>{2});
    }

    TEST_CASE("first bell row as a distribution") {
        EmpiricalModel e = chsh_model();
        const auto &row = e.row(Context{"a1", "b1"});
        CHECK(row.weight(Assignment({"a1", "b1"}, {0, 0})) == Rational(1, 2));
        CHECK(row.weight(Assignment({"a1", "b1"}, {0, 1})) == 0);
        CHECK(row.weight(Assignment({"a1", "b1"}, {1, 0})) == 0);
        CHECK(row.weight(Assignment({"a1", "b1"}, {1, 1})) == Rational(1, 2));
    }

    TEST_CASE("marginal at a1 agrees between the first two rows") {
        EmpiricalModel e = chsh_model();
        auto m1 = marginalize(e.row(Context{"a1", "b1"}), {"a1"});
        auto m2 = marginalize(e.row(Context{"a1", "b2"}), {"a1"});
        CHECK(m1.weight(Assignment({"a1"}, {0})) == Rational(1, 2));
        CHECK(m2.weight(Assignment({"a1"}, {0})) == Rational(1, 2));
        CHECK(m1 == m2);
        CHECK_THROWS_AS(marginalize(e.row(0), {"a2"}), DomainError);
    }

    TEST_CASE("two joint distributions with equal single marginals") {
        LabelSet d = make_label_set({"a", "b"});
        ContextDistribution d1(d, 2, {Rational(1, 2), 0, 0, Rational(1, 2)});
        ContextDistribution d2 = ContextDistribution::uniform(d, 2);
        CHECK_FALSE(d1 == d2);
        for (const char *l : {"a", "b"}) {
            CHECK(marginalize(d1, {l}) == marginalize(d2, {l}));
            CHECK(marginalize(d1, {l}).weight_at(0) == Rational(1, 2));
        }
    }

    TEST_CASE("marginalization composes") {
        std::mt19937_64 rng(11);
        LabelSet dom = make_label_set({"a", "b", "c", "d"});
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Rational> w(16);
            Rational total = 0;
            for (auto &x : w) {
                x = Rational(static_cast<int>(rng() % 7));
                total += x;
            }
            if (total == 0) {
                w[0] = 1;
                total = 1;
            }
            for (auto &x : w) x /= total;
            ContextDistribution d(dom, 2, w);
            std::vector<MeasurementLabel> mid;
            std::vector<MeasurementLabel> inner;
            for (const auto &l : dom) {
                if (rng() % 3) {
                    mid.push_back(l);
                    if (rng() % 2) inner.push_back(l);
                }
            }
            CHECK(marginalize(marginalize(d, mid), inner) == marginalize(d, inner));
        }
    }

    TEST_CASE("bell and PR tables are no-signaling") {
        CHECK(check_no_signaling(chsh_model()).empty());
        auto pr = listed_model(listed_scenario(fixtures::pr_box_table()), fixtures::pr_box_table());
        CHECK(check_no_signaling(pr).empty());
    }

    TEST_CASE("point mass in one row signals at b1") {
        EmpiricalModel e = chsh_model();
        std::vector<ContextDistribution> rows = e.rows();
        rows[0] = ContextDistribution::point_mass(Assignment({"a1", "b1"}, {0, 0}), 2);
        EmpiricalModel bad(e.scenario(), rows);
        auto v = check_no_signaling(bad);
        bool at_b1 = std::any_of(v.begin(), v.end(), [](const SignalingViolation &x) {
            return x.at.domain() == make_label_set({"b1"}) && x.at.values()[0] == 0 &&
                   ((x.first_value == 1 && x.second_value == Rational(1, 2)) ||
                    (x.first_value == Rational(1, 2) && x.second_value == 1));
        });
        CHECK(at_b1);
    }

    TEST_CASE("rows must match the cover") {
        EmpiricalModel e = chsh_model();
        std::vector<ContextDistribution> rows = e.rows();
        rows.pop_back();
        CHECK_THROWS_AS(EmpiricalModel(e.scenario(), rows), DomainError);
        rows.push_back(ContextDistribution::uniform(make_label_set({"a1", "a2"}), 2));
        CHECK_THROWS_AS(EmpiricalModel(e.scenario(), rows), DomainError);
        CHECK_THROWS_AS(e.row(Context{"a1", "a2"}), DomainError);
    }

    TEST_CASE("mixing preserves no-signaling") {
        std::mt19937_64 rng(3);
        MeasurementScenario sc = listed_scenario(fixtures::chsh_table());
        EmpiricalModel pr = listed_model(sc, fixtures::pr_box_table());
        for (int trial = 0; trial < 100; ++trial) {
            EmpiricalModel e1 = trial % 2 ? chsh_model() : random_local_model(sc, rng);
            EmpiricalModel e2 = trial % 3 ? pr : random_local_model(sc, rng);
            Rational lambda = random_rational(rng);
            EmpiricalModel mix = convex_mix(e1, e2, lambda);
            CHECK(check_no_signaling(mix).empty());
            for (std::size_t c = 0; c < 4; ++c) {
                for (std::size_t k = 0; k < 4; ++k) {
                    CHECK(mix.row(c).weight_at(k) ==
                          lambda * e1.row(c).weight_at(k) + (1 - lambda) * e2.row(c).weight_at(k));
                }
            }
        }
        CHECK_THROWS_AS(convex_mix(pr, pr, Rational(3, 2)), DomainError);
    }

    TEST_CASE("support of a mixture contains the support of each positive part") {
        std::mt19937_64 rng(5);
        MeasurementScenario sc = listed_scenario(fixtures::chsh_table());
        for (int trial = 0; trial < 100; ++trial) {
            EmpiricalModel e = random_local_model(sc, rng);
            EmpiricalModel f = random_local_model(sc, rng);
            Rational lambda = random_rational(rng) / 2 + Rational(1, 1000);
            PossibilisticModel pe = possibilistic_collapse(e);
            PossibilisticModel pm = possibilistic_collapse(convex_mix(e, f, lambda));
            for (std::size_t c = 0; c < 4; ++c) {
                const auto &big = pm.support_indices(c);
                for (std::size_t k : pe.support_indices(c)) {
                    CHECK(std::binary_search(big.begin(), big.end(), k));
                }
            }
        }
    }

    TEST_CASE("square realized by the Bell state collapses to its possibility table") {
        MeasurementScenario sc = listed_scenario(fixtures::mermin_bell_table());
        EmpiricalModel e = listed_model(sc, fixtures::mermin_bell_table());
        std::vector<std::vector<std::size_t>> supports;
        for (const auto &row : fixtures::mermin_possibility_table()) supports.push_back(fixtures::listed_support(row));
        // Rows and cover contexts are in the same listed order here only if
        // the cover kept it; place supports by context instead.
        std::vector<std::vector<std::size_t>> by_context(sc.cover().size());
        for (std::size_t i = 0; i < supports.size(); ++i) {
            by_context[sc.context_index(fixtures::listed_context(fixtures::mermin_possibility_table()[i].labels))] =
                supports[i];
        }
        CHECK(possibilistic_collapse(e) == PossibilisticModel(sc, by_context));
    }

    TEST_CASE("deterministic model collapses to singletons") {
        MeasurementScenario sc = listed_scenario(fixtures::chsh_table());
        Assignment g({"a1", "a2", "b1", "b2"}, {1, 0, 0, 1});
        std::vector<ContextDistribution> rows;
        for (const auto &c : sc.cover()) rows.push_back(ContextDistribution::point_mass(restrict(g, c.members()), 2));
        PossibilisticModel p = possibilistic_collapse(EmpiricalModel(sc, rows));
        for (std::size_t c = 0; c < 4; ++c) {
            REQUIRE(p.support(c).size() == 1);
            CHECK(p.support(c)[0] == restrict(g, sc.cover()[c].members()));
        }
    }

    TEST_CASE("uniform rows collapse to full supports") {
        MeasurementScenario sc = listed_scenario(fixtures::ghz_listed_rows());
        std::vector<ContextDistribution> rows;
        for (const auto &c : sc.cover()) rows.push_back(ContextDistribution::uniform(c.members(), 2));
        PossibilisticModel p = possibilistic_collapse(EmpiricalModel(sc, rows));
        for (std::size_t c = 0; c < sc.cover().size(); ++c) CHECK(p.support(c).size() == 8);
    }

    TEST_CASE("possibilistic model rejects empty and out-of-range supports") {
        MeasurementScenario sc = listed_scenario(fixtures::chsh_table());
        CHECK_THROWS_AS(PossibilisticModel(sc, {{0}, {0}, {0}, {}}), DomainError);
        CHECK_THROWS_AS(PossibilisticModel(sc, {{0}, {0}, {0}, {4}}), DomainError);
        CHECK_THROWS_AS(PossibilisticModel(sc, {{0}, {0}, {0}}), DomainError);
        PossibilisticModel p(sc, {{3, 0, 0}, {0}, {0}, {0}});
        CHECK(p.support_indices(0) == std::vector<std::size_t>{0, 3});
    }

    TEST_CASE("derived support on a single label") {
        MeasurementScenario sc = listed_scenario(fixtures::pr_box_table());
        PossibilisticModel p = possibilistic_collapse(listed_model(sc, fixtures::pr_box_table()));
        auto s = p.derived_support({"a1"});
        CHECK(s.size() == 2);
        // a1 = 0 with b1 = 1 is impossible in {a1, b1}.
        auto pair = p.derived_support({"a1", "b1"});
        CHECK(pair.size() == 2);
    }
}
