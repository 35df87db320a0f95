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

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sheafctx/empirical.hpp"
#include "sheafctx/scenario.hpp"

namespace sheafctx {

using BitVec = boost::dynamic_bitset<>;

namespace gf2 {

/// Reduces `rows` (all of one width) to reduced row-echelon form in place,
/// drops zero rows, and returns the pivot column of each remaining row.
/// Pivots are the lowest set bit, rows sorted by pivot.
std::vector<std::size_t> rref(std::vector<BitVec> &rows);

/// Basis of {v : <v, row> = 0 for every row}, in reduced row-echelon form.
std::vector<BitVec> nullspace(std::vector<BitVec> rows, std::size_t width);

}  // namespace gf2

/// <C, r, a>: sum over x in C of r(x) s(x) = a in Z2. Bit i of `r` is the
/// coefficient of context.members()[i].
struct LinearEquation {
    Context context;
    BitVec r;
    bool a = false;

    LinearEquation(Context context, BitVec r, bool a);
    LinearEquation(Context context, const std::vector<int> &r, bool a);

    bool coefficient(const MeasurementLabel &label) const;
    /// "s(XI) + s(IX) + s(XX) = 0"; a zero left-hand side renders as "0".
    std::string str() const;

    friend bool operator==(const LinearEquation &, const LinearEquation &) = default;
};

/// Throws RingError for an outcome outside {0, 1} and DomainError when s does
/// not define every label of the context.
bool satisfies(const Assignment &s, const LinearEquation &phi);

/// A set of Z2-linear equations over a scenario, stored as the span of a
/// canonical reduced basis per cover context.
class LinearTheory {
   public:
    /// Largest context whose span is enumerated by span().
    static constexpr std::size_t kMaxSpanContext = 16;

    explicit LinearTheory(MeasurementScenario scenario);
    /// Throws DomainError for an equation whose context is not in the cover.
    LinearTheory(MeasurementScenario scenario, const std::vector<LinearEquation> &equations);

    const MeasurementScenario &scenario() const { return scenario_; }
    void add(const LinearEquation &phi);

    /// Reduced basis on cover context `context`.
    std::vector<LinearEquation> basis(std::size_t context) const;
    /// All basis equations, context by context.
    std::vector<LinearEquation> basis() const;
    /// Every equation in the span on `context`, including 0 = 0. Throws
    /// SizeError above kMaxSpanContext.
    std::vector<LinearEquation> span(std::size_t context) const;
    /// Whether phi lies in the span of the theory on its context.
    bool contains(const LinearEquation &phi) const;
    std::size_t dimension(std::size_t context) const { return rows_[context].size(); }

    friend bool operator==(const LinearTheory &, const LinearTheory &) = default;

   private:
    MeasurementScenario scenario_;
    // Per context: reduced rows of width |C| + 1, the last bit being a.
    std::vector<std::vector<BitVec>> rows_;
};

/// Equations satisfied by every support element, context by context: the
/// annihilator of {(s, 1) : s in S(C)}. Throws RingError unless the scenario
/// ring is Z2.
LinearTheory theory_of_supports(const PossibilisticModel &p);

struct Consistency {
    bool consistent = false;
    /// Satisfying global assignment over the scenario measurements, with
    /// free variables set to 0.
    std::optional<Assignment> witness;
    /// Basis equations whose sum is 0 = 1.
    std::vector<LinearEquation> certificate;
};

/// Gaussian elimination over all basis equations, variables in label order.
Consistency is_consistent(const LinearTheory &theory);

/// The support theory is inconsistent.
bool is_avn(const PossibilisticModel &p);

}  // namespace sheafctx
