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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sheafctx/empirical.hpp"
#include "sheafctx/lp.hpp"
#include "sheafctx/rational.hpp"
#include "sheafctx/scenario.hpp"

namespace sheafctx {

/// Largest accepted number of global assignments |O|^|X|.
inline constexpr std::size_t kMaxGlobalAssignments = std::size_t{1} << 20;

/// The m x n Boolean matrix relating global assignments (columns) to local
/// ones (rows <C, s>). Rows are grouped by cover context in cover order, each
/// group in assignment order; columns are global assignments in assignment
/// order. Entries are computed from the restriction map rather than stored.
class IncidenceMatrix final : public lp::ColumnSource {
   public:
    explicit IncidenceMatrix(const MeasurementScenario &scenario);

    std::size_t rows() const override { return row_count_; }
    std::size_t cols() const override { return col_count_; }
    void column(std::size_t g, std::vector<lp::Entry> &out) const override;

    bool entry(std::size_t row, std::size_t g) const;
    /// (context index, local assignment index) of a row.
    std::pair<std::size_t, std::size_t> row_key(std::size_t row) const;
    std::size_t row_offset(std::size_t context) const { return offsets_[context]; }
    /// Local assignment index of g|_C for cover context `context`.
    std::size_t restrict_index(std::size_t g, std::size_t context) const;
    Assignment column_assignment(std::size_t g) const;

    const MeasurementScenario &scenario() const { return scenario_; }

   private:
    MeasurementScenario scenario_;
    std::size_t row_count_ = 0;
    std::size_t col_count_ = 0;
    std::vector<std::size_t> offsets_;
    // For each context, the weight of each global digit in the local index
    // (0 for measurements outside the context).
    std::vector<std::vector<std::size_t>> digit_weights_;
};

/// Throws SizeError when |O|^|X| exceeds kMaxGlobalAssignments.
IncidenceMatrix build_incidence(const MeasurementScenario &scenario);

/// Distribution over global assignments, keyed by global assignment index.
class GlobalDistribution {
   public:
    GlobalDistribution(LabelSet measurements, Outcome outcome_count, std::map<std::size_t, Rational> weights);

    const LabelSet &measurements() const { return measurements_; }
    Outcome outcome_count() const { return outcome_count_; }
    /// Nonzero weights only.
    const std::map<std::size_t, Rational> &weights() const { return weights_; }
    Rational weight(std::size_t global_index) const;
    ContextDistribution marginal(const LabelSet &target) const;

    friend bool operator==(const GlobalDistribution &, const GlobalDistribution &) = default;

   private:
    LabelSet measurements_;
    Outcome outcome_count_;
    std::map<std::size_t, Rational> weights_;
};

/// The empirical model a global distribution induces on `scenario`.
EmpiricalModel induced_model(const GlobalDistribution &d, const MeasurementScenario &scenario);

/// Some nonnegative exact solution of M X = V with |X|_1 = 1, or nullopt when
/// none exists. Throws PreconditionError if `e` is signaling.
std::optional<GlobalDistribution> find_global_distribution(const EmpiricalModel &e);

struct NoncontextualFraction {
    Rational ncf;
    Rational cf;
    /// Subnormalized X* with M X* <= V, nonzero entries by global index.
    std::vector<std::pair<std::size_t, Rational>> witness;
    /// Optimal dual y >= 0: M^T y >= 1 and V.y = ncf certify optimality.
    std::vector<Rational> dual;
};

/// Exact optimum of max sum(X) s.t. M X <= V, X >= 0. Throws
/// PreconditionError if `e` is signaling.
NoncontextualFraction noncontextual_fraction(const EmpiricalModel &e);

/// Some X of any sign with M X = V and sum(X) = 1, or nullopt.
std::optional<std::vector<Rational>> signed_global_solution(const EmpiricalModel &e);

/// Global assignment indices g with g|_C in S(C) for every C, ascending.
/// Backtracks over contexts ordered by ascending support size.
std::vector<std::size_t> global_section_indices(const PossibilisticModel &p);
std::vector<Assignment> global_sections(const PossibilisticModel &p);

bool is_strongly_contextual(const PossibilisticModel &p);

/// True iff no global section restricts to `s` at `context`. Throws
/// PreconditionError when s is not in the support of the context.
bool logically_contextual_at(const PossibilisticModel &p, const Context &context, const Assignment &s);
/// Logically contextual at some support element.
bool is_logically_contextual(const PossibilisticModel &p);

/// Hidden-variable model: prior over Λ and, per λ, one distribution per cover
/// context (aligned with scenario().cover()).
struct HiddenVariableModel {
    MeasurementScenario scenario;
    std::vector<std::string> lambdas;
    std::vector<Rational> prior;
    std::vector<std::vector<ContextDistribution>> conditionals;

    /// Σ_λ prior(λ) h_C^λ for each context.
    EmpiricalModel realized_model() const;
};

/// Λ = E(X), prior = d, conditionals λ ↦ δ_{λ|C}. Λ ranges over the support
/// of d; λ names are outcome strings of the global assignment.
HiddenVariableModel to_hidden_variable(const GlobalDistribution &d, const MeasurementScenario &scenario);

/// Where the factorisability check fails.
struct FactorisationFailure {
    std::size_t lambda;
    std::size_t context;
    Assignment at;
};

/// First (λ, C, s) with h_C^λ(s) != Π_m h_C^λ|_m(s|_m), if any.
std::optional<FactorisationFailure> find_factorisation_failure(const HiddenVariableModel &h);

/// d(s) = Σ_λ h_Λ(λ) Π_m h_m^λ(s|_m). Throws PreconditionError naming the
/// offending (λ, C, s) if h is not factorisable, and if some λ's conditionals
/// are not compatible.
GlobalDistribution from_hidden_variable(const HiddenVariableModel &h);

}  // namespace sheafctx
