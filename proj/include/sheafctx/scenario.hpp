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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace sheafctx {

/// Opaque measurement identifier. Labels are totally ordered by their string;
/// every enumeration, serialization and tie-break in the library follows it.
class MeasurementLabel {
   public:
    explicit MeasurementLabel(std::string name);
    MeasurementLabel(const char *name) : MeasurementLabel(std::string(name)) {}

    const std::string &str() const { return name_; }

    friend auto operator<=>(const MeasurementLabel &, const MeasurementLabel &) = default;
    friend bool operator==(const MeasurementLabel &, const MeasurementLabel &) = default;

   private:
    std::string name_;
};

/// Sorted, duplicate-free list of labels. This is the shape of every domain
/// (contexts, restriction targets, the measurement set).
using LabelSet = std::vector<MeasurementLabel>;

/// Sorts and deduplicates.
LabelSet make_label_set(std::vector<MeasurementLabel> labels);
bool is_subset(std::span<const MeasurementLabel> inner, std::span<const MeasurementLabel> outer);
LabelSet set_intersection(std::span<const MeasurementLabel> a, std::span<const MeasurementLabel> b);
std::string join_labels(std::span<const MeasurementLabel> labels, const std::string &sep = ",");

/// A set of measurements that can be performed together. Nonempty; members
/// are stored sorted and deduplicated.
class Context {
   public:
    explicit Context(std::vector<MeasurementLabel> members);
    Context(std::initializer_list<MeasurementLabel> members)
        : Context(std::vector<MeasurementLabel>(members)) {}

    const LabelSet &members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool contains(const MeasurementLabel &label) const;
    std::string str() const { return join_labels(members_); }

    friend auto operator<=>(const Context &, const Context &) = default;
    friend bool operator==(const Context &, const Context &) = default;

   private:
    LabelSet members_;
};

enum class OutcomeRing { None, Z2 };

using Outcome = std::uint32_t;

/// The triple <X, M, O>. Outcomes are 0..outcome_count-1. The cover is kept
/// sorted and deduplicated; covering and the anti-chain property are checked
/// by validate_scenario rather than enforced here, so that malformed inputs
/// can still be reported on.
class MeasurementScenario {
   public:
    MeasurementScenario(std::vector<MeasurementLabel> measurements, std::vector<Context> cover,
                        Outcome outcome_count, OutcomeRing ring = OutcomeRing::None);

    /// Measurements are the union of the cover.
    static MeasurementScenario from_cover(std::vector<Context> cover, Outcome outcome_count,
                                          OutcomeRing ring = OutcomeRing::None);

    const LabelSet &measurements() const { return measurements_; }
    const std::vector<Context> &cover() const { return cover_; }
    Outcome outcome_count() const { return outcome_count_; }
    OutcomeRing ring() const { return ring_; }

    /// Index of `context` in cover(), or cover().size() when absent.
    std::size_t context_index(const Context &context) const;

    friend bool operator==(const MeasurementScenario &, const MeasurementScenario &) = default;

   private:
    LabelSet measurements_;
    std::vector<Context> cover_;
    Outcome outcome_count_;
    OutcomeRing ring_;
};

struct ScenarioViolation {
    enum class Kind { Uncovered, NotAntichain, UnknownLabel, BadOutcomes };
    Kind kind;
    /// Offending items: the uncovered label; the smaller then larger context;
    /// the unknown label and its context.
    std::vector<std::string> items;
    std::string message;
};

/// Every covering and anti-chain failure. Empty iff the scenario is valid.
std::vector<ScenarioViolation> validate_scenario(const MeasurementScenario &scenario);

/// A section s: U -> O of the event sheaf.
class Assignment {
   public:
    Assignment() = default;
    /// `values[i]` is the outcome of `domain[i]`; the pair is re-sorted into
    /// label order.
    Assignment(std::vector<MeasurementLabel> domain, std::vector<Outcome> values);

    const LabelSet &domain() const { return domain_; }
    const std::vector<Outcome> &values() const { return values_; }
    std::size_t size() const { return domain_.size(); }

    /// Throws DomainError if `label` is outside the domain.
    Outcome at(const MeasurementLabel &label) const;

    friend auto operator<=>(const Assignment &, const Assignment &) = default;
    friend bool operator==(const Assignment &, const Assignment &) = default;

   private:
    LabelSet domain_;
    std::vector<Outcome> values_;
};

/// Functional restriction s|_U. Throws DomainError unless U is a subset of
/// the domain of s.
Assignment restrict(const Assignment &s, std::vector<MeasurementLabel> target);

/// All |O|^|U| assignments on U, lexicographic in the outcome tuple read in
/// label order.
std::vector<Assignment> enumerate_assignments(std::vector<MeasurementLabel> domain,
                                              Outcome outcome_count);

/// Position of `s` in enumerate_assignments(domain(s), outcome_count).
std::size_t assignment_index(const Assignment &s, Outcome outcome_count);
std::size_t assignment_index(std::span<const Outcome> values, Outcome outcome_count);
/// Inverse of assignment_index.
Assignment assignment_at(const LabelSet &domain, Outcome outcome_count, std::size_t index);
/// |O|^|U|, throwing SizeError if it does not fit in 63 bits.
std::size_t assignment_count(std::size_t domain_size, Outcome outcome_count);

/// Outcome string in label order, e.g. "011". Outcomes above 9 are written
/// comma-separated.
std::string outcome_string(const Assignment &s);
/// Inverse of outcome_string over `domain`. Throws ParseError.
Assignment parse_outcome_string(const LabelSet &domain, const std::string &text,
                                Outcome outcome_count);

/// Position of each label of `sub` inside the sorted `super` domain.
std::vector<std::size_t> positions_in(std::span<const MeasurementLabel> sub,
                                      std::span<const MeasurementLabel> super);

}  // namespace sheafctx
