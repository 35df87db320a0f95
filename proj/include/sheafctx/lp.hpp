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
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sheafctx/rational.hpp"

/**
 * Exact-rational linear programming.
 *
 * The solver is a revised primal simplex that keeps an explicit basis inverse
 * (m x m) and asks a ColumnSource for constraint columns on demand. That shape
 * fits incidence matrices, where the row count is small and the column count is
 * exponential in the number of measurements. Entering and leaving variables are
 * chosen by Bland's rule, so the method terminates on degenerate problems and
 * the reported vertex depends only on the problem data.
 */
namespace sheafctx::lp {

/// One nonzero of a constraint column.
struct Entry {
    std::size_t row;
    std::int64_t value;
};

/// Read-only access to an integer constraint matrix, column by column.
class ColumnSource {
   public:
    virtual ~ColumnSource() = default;
    virtual std::size_t rows() const = 0;
    virtual std::size_t cols() const = 0;
    /// Overwrites `out` with the nonzeros of column j.
    virtual void column(std::size_t j, std::vector<Entry> &out) const = 0;
};

/// Dense integer matrix, mostly for tests and small problems.
class DenseColumns final : public ColumnSource {
   public:
    explicit DenseColumns(std::vector<std::vector<std::int64_t>> row_major);
    std::size_t rows() const override { return rows_; }
    std::size_t cols() const override { return cols_; }
    void column(std::size_t j, std::vector<Entry> &out) const override;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::vector<std::int64_t>> data_;
};

enum class Sense { LessEqual, Equal };

/// maximize c.x subject to A x (<= or =) b, x >= 0, with b >= 0.
struct Problem {
    const ColumnSource *matrix = nullptr;
    std::vector<Rational> rhs;
    std::vector<Sense> sense;
    /// One entry per column; empty means the zero objective.
    std::vector<Rational> objective;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
    Status status = Status::Infeasible;
    Rational objective;
    /// Nonzero structural variables, ascending by column.
    std::vector<std::pair<std::size_t, Rational>> primal;
    /// Row duals y with c_B B^-1 at the final basis (size rows()).
    std::vector<Rational> dual;
    std::size_t pivots = 0;
};

/// Two-phase simplex. Throws DomainError for a negative right-hand side or
/// mismatched dimensions.
Solution solve(const Problem &problem);

/// Phase one only: some vertex of {x >= 0 : A x (<=/=) b}, or Infeasible.
/// The objective is ignored; `objective` of the result is zero.
Solution find_feasible(const Problem &problem);

/// Some x (any sign) with A x = b, or nullopt if the system is inconsistent.
/// Exact Gauss-Jordan elimination; free variables are set to zero.
std::optional<std::vector<Rational>> solve_unrestricted(const ColumnSource &matrix,
                                                        const std::vector<Rational> &rhs);

}  // namespace sheafctx::lp
