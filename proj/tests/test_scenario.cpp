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

#include <map>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "sheafctx/analysis.hpp"
#include "sheafctx/corpus.hpp"
#include "sheafctx/errors.hpp"
#include "sheafctx/scenario.hpp"

using namespace sheafctx;

namespace {

MeasurementScenario chsh() {
    return MeasurementScenario::from_cover({{"a1", "b1"}, {"a1", "b2"}, {"a2", "b1"}, {"a2", "b2"}}, 2,
                                           OutcomeRing::Z2);
}

}  // namespace

TEST_SUITE("scenario") {
    TEST_CASE("labels and contexts are sorted and deduplicated") {
        Context c{"b1", "a1", "b1"};
        CHECK(c.size() == 2);
        CHECK(c.members()[0].str() == "a1");
        CHECK(c.str() == "a1,b1");
        CHECK(c.contains("b1"));
        CHECK_FALSE(c.contains("a2"));
        CHECK_THROWS_AS(MeasurementLabel(""), DomainError);
        CHECK_THROWS_AS(Context(std::vector<MeasurementLabel>{}), DomainError);
    }

    TEST_CASE("bell cover is valid") {
        CHECK(validate_scenario(chsh()).empty());
        CHECK(chsh().measurements().size() == 4);
        CHECK(chsh().context_index(Context{"a2", "b1"}) == 2);
        CHECK(chsh().context_index(Context{"a1", "a2"}) == 4);
    }

    TEST_CASE("uncovered measurement is reported") {
        MeasurementScenario sc({"a1", "a2", "b1"}, {Context{"a1", "b1"}}, 2);
        auto v = validate_scenario(sc);
        REQUIRE(v.size() == 1);
        CHECK(v[0].kind == ScenarioViolation::Kind::Uncovered);
        CHECK(v[0].items == std::vector<std::string>{"a2"});
    }

    TEST_CASE("nested contexts violate the antichain condition") {
        MeasurementScenario sc({"a1", "b1"}, {Context{"a1"}, Context{"a1", "b1"}}, 2);
        auto v = validate_scenario(sc);
        REQUIRE(v.size() == 1);
        CHECK(v[0].kind == ScenarioViolation::Kind::NotAntichain);
        CHECK(v[0].items == std::vector<std::string>{"a1", "a1,b1"});
    }

    TEST_CASE("context label outside the measurement set") {
        MeasurementScenario sc({"a1"}, {Context{"a1", "b9"}}, 2);
        auto v = validate_scenario(sc);
        REQUIRE_FALSE(v.empty());
        CHECK(v[0].kind == ScenarioViolation::Kind::UnknownLabel);
    }

    TEST_CASE("Z2 ring needs two outcomes") {
        CHECK_THROWS_AS(MeasurementScenario({"a"}, {Context{"a"}}, 3, OutcomeRing::Z2), DomainError);
        CHECK_THROWS_AS(MeasurementScenario({"a"}, {Context{"a"}}, 0), DomainError);
    }

    TEST_CASE("restriction of a worked assignment") {
        Assignment s({"a1", "b1"}, {0, 1});
        Assignment r = restrict(s, {"a1"});
        CHECK(r == Assignment({"a1"}, {0}));
        CHECK_THROWS_AS(restrict(s, {"a2"}), DomainError);
        CHECK(s.at("b1") == 1);
        CHECK_THROWS_AS(s.at("a2"), DomainError);
    }

    TEST_CASE("assignments re-sort with their values") {
        Assignment s({"b1", "a1"}, {1, 0});
        CHECK(s.domain()[0].str() == "a1");
        CHECK(s.values() == std::vector<Outcome>{0, 1});
        CHECK(outcome_string(s) == "01");
        CHECK_THROWS_AS(Assignment({"a", "a"}, {0, 1}), DomainError);
        CHECK_THROWS_AS(Assignment({"a"}, {0, 1}), DomainError);
    }

    TEST_CASE("enumeration order is mixed radix, first label most significant") {
        auto all = enumerate_assignments({"a1", "b1"}, 2);
        REQUIRE(all.size() == 4);
        CHECK(outcome_string(all[0]) == "00");
        CHECK(outcome_string(all[1]) == "01");
        CHECK(outcome_string(all[2]) == "10");
        CHECK(outcome_string(all[3]) == "11");
        for (std::size_t i = 0; i < all.size(); ++i) {
            CHECK(assignment_index(all[i], 2) == i);
            CHECK(assignment_at(all[i].domain(), 2, i) == all[i]);
        }
    }

    TEST_CASE("empty domain has one assignment") {
        auto all = enumerate_assignments({}, 2);
        REQUIRE(all.size() == 1);
        CHECK(all[0].size() == 0);
    }

    TEST_CASE("nine binary labels give 512 assignments") {
        auto square = fixtures::paulis({"XI", "IX", "XX", "IZ", "ZI", "ZZ", "XZ", "ZX", "YY"});
        std::vector<MeasurementLabel> labels;
        for (const auto &p : square) labels.emplace_back(p.str());
        CHECK(enumerate_assignments(labels, 2).size() == 512);
        CHECK(assignment_count(9, 2) == 512);
    }

    TEST_CASE("outcome strings parse against a domain") {
        LabelSet d = make_label_set({"a", "b", "c"});
        CHECK(parse_outcome_string(d, "101", 2) == Assignment({"a", "b", "c"}, {1, 0, 1}));
        CHECK_THROWS_AS(parse_outcome_string(d, "10", 2), ParseError);
        CHECK_THROWS_AS(parse_outcome_string(d, "1x1", 2), ParseError);
        CHECK_THROWS_AS(parse_outcome_string(d, "121", 2), ParseError);
        CHECK(parse_outcome_string(d, "121", 3).values()[1] == 2);
    }

    TEST_CASE("restriction is functorial") {
        std::mt19937_64 rng(7);
        LabelSet domain = make_label_set({"a", "b", "c", "d", "e"});
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<Outcome> values;
            for (std::size_t i = 0; i < domain.size(); ++i) values.push_back(rng() % 3);
            Assignment s(domain, values);
            std::vector<MeasurementLabel> mid;
            std::vector<MeasurementLabel> inner;
            for (const auto &l : domain) {
                if (rng() % 2) {
                    mid.push_back(l);
                    if (rng() % 2) inner.push_back(l);
                }
            }
            CHECK(restrict(restrict(s, mid), inner) == restrict(s, inner));
        }
    }

    TEST_CASE("restricting all assignments covers each smaller one equally often") {
        LabelSet u = make_label_set({"a", "b", "c", "d"});
        for (Outcome base : {2u, 3u}) {
            for (std::uint32_t mask = 0; mask < 16; ++mask) {
                std::vector<MeasurementLabel> v;
                for (std::size_t i = 0; i < 4; ++i) {
                    if (mask >> i & 1u) v.push_back(u[i]);
                }
                std::map<Assignment, std::size_t> counts;
                for (const auto &s : enumerate_assignments(u, base)) ++counts[restrict(s, v)];
                std::size_t expected = assignment_count(4 - v.size(), base);
                CHECK(counts.size() == assignment_count(v.size(), base));
                for (const auto &[s, k] : counts) CHECK(k == expected);
            }
        }
    }

    TEST_CASE("every corpus scenario validates") {
        for (const auto &name : corpus_names()) {
            CAPTURE(name);
            CHECK(validate_scenario(input_from_json(name, corpus_entry(name).document).scenario).empty());
        }
    }
}
