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

#include <cstddef>
#include <utility>
#include <vector>

#include "sheafctx/rational.hpp"
#include "sheafctx/scenario.hpp"

namespace sheafctx {

/// Probability distribution over the assignments of a label set. Weights are
/// stored densely in enumerate_assignments order: nonnegative, summing to
/// exactly 1.
class ContextDistribution {
   public:
    ContextDistribution(LabelSet domain, Outcome outcome_count, std::vector<Rational> weights);

    static ContextDistribution point_mass(const Assignment &s, Outcome outcome_count);
    static ContextDistribution uniform(LabelSet domain, Outcome outcome_count);

    const LabelSet &domain() const { return domain_; }
    Outcome outcome_count() const { return outcome_count_; }
    const std::vector<Rational> &weights() const { return weights_; }
    const Rational &weight(const Assignment &s) const;
    const Rational &weight_at(std::size_t index) const { return weights_[index]; }
    /// Indices with nonzero weight, ascending.
    std::vector<std::size_t> support() const;

    friend bool operator==(const ContextDistribution &, const ContextDistribution &) = default;

   private:
    LabelSet domain_;
    Outcome outcome_count_;
    std::vector<Rational> weights_;
};

/// The marginal d|_U. Throws DomainError unless U is a subset of the domain.
ContextDistribution marginalize(const ContextDistribution &d, std::vector<MeasurementLabel> target);

/// One distribution per cover context, aligned with scenario().cover().
class EmpiricalModel {
   public:
    /// Rows may come in any order but must be exactly the cover contexts.
    EmpiricalModel(MeasurementScenario scenario, std::vector<ContextDistribution> rows);

    const MeasurementScenario &scenario() const { return scenario_; }
    const std::vector<ContextDistribution> &rows() const { return rows_; }
    const ContextDistribution &row(std::size_t index) const { return rows_[index]; }
    /// Throws DomainError for a context outside the cover.
    const ContextDistribution &row(const Context &context) const;

    friend bool operator==(const EmpiricalModel &, const EmpiricalModel &) = default;

   private:
    MeasurementScenario scenario_;
    std::vector<ContextDistribution> rows_;
};

struct SignalingViolation {
    Context first;
    Context second;
    Assignment at;  ///< assignment on the overlap of the two contexts
    Rational first_value;
    Rational second_value;
};

/// Compares marginals on every overlapping pair of contexts. Empty iff the
/// family is compatible.
std::vector<SignalingViolation> check_no_signaling(const EmpiricalModel &e);

/// lambda * e1 + (1 - lambda) * e2, contextwise. Throws DomainError on a
/// scenario mismatch or lambda outside [0, 1].
EmpiricalModel convex_mix(const EmpiricalModel &e1, const EmpiricalModel &e2, const Rational &lambda);

/// Support sets at the cover contexts. Sub-context supports are derived on
/// demand from these, never stored.
class PossibilisticModel {
   public:
    /// `supports[i]` lists assignment indices of cover context i. Each must be
    /// nonempty and in range; order and duplicates are normalized.
    PossibilisticModel(MeasurementScenario scenario, std::vector<std::vector<std::size_t>> supports);

    const MeasurementScenario &scenario() const { return scenario_; }
    const std::vector<std::vector<std::size_t>> &supports() const { return supports_; }
    const std::vector<std::size_t> &support_indices(std::size_t context) const { return supports_[context]; }
    std::vector<Assignment> support(std::size_t context) const;
    bool contains(std::size_t context, const Assignment &s) const;

    /// S(U) for an arbitrary U: assignments on U whose restriction to U ∩ C
    /// is a restriction of some support element of C, for every context C.
    std::vector<Assignment> derived_support(std::vector<MeasurementLabel> target) const;

    friend bool operator==(const PossibilisticModel &, const PossibilisticModel &) = default;

   private:
    MeasurementScenario scenario_;
    std::vector<std::vector<std::size_t>> supports_;
};

/// Keeps the assignments of nonzero probability at each context.
PossibilisticModel possibilistic_collapse(const EmpiricalModel &e);

}  // namespace sheafctx
