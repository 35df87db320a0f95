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

#include "sheafctx/lp.hpp"

#include <algorithm>

#include "sheafctx/errors.hpp"

namespace sheafctx::lp {

DenseColumns::DenseColumns(std::vector<std::vector<std::int64_t>> row_major) : data_(std::move(row_major)) {
    rows_ = data_.size();
    cols_ = rows_ ? data_[0].size() : 0;
    for (const auto &row : data_) {
        if (row.size() != cols_) throw DomainError("ragged constraint matrix");
    }
}

void DenseColumns::column(std::size_t j, std::vector<Entry> &out) const {
    out.clear();
    for (std::size_t i = 0; i < rows_; ++i) {
        if (data_[i][j] != 0) out.push_back({i, data_[i][j]});
    }
}

namespace {

class Simplex {
   public:
    explicit Simplex(const Problem &p) : p_(p), a_(*p.matrix), m_(a_.rows()), n_(a_.cols()) {
        if (p.rhs.size() != m_ || p.sense.size() != m_) {
            throw DomainError("right-hand side and row senses must match the row count");
        }
        if (!p.objective.empty() && p.objective.size() != n_) {
            throw DomainError("objective length must match the column count");
        }
        for (const auto &b : p.rhs) {
            if (b < 0) throw DomainError("right-hand sides must be nonnegative");
        }
        basis_.resize(m_);
        basic_.assign(n_ + m_, false);
        binv_.assign(m_, std::vector<Rational>(m_));
        xb_ = p.rhs;
        for (std::size_t i = 0; i < m_; ++i) {
            basis_[i] = n_ + i;
            basic_[n_ + i] = true;
            binv_[i][i] = 1;
            if (p.sense[i] == Sense::Equal) has_artificial_ = true;
        }
    }

    Solution run(bool phase_two) {
        Solution out;
        if (has_artificial_) {
            phase_ = 1;
            if (iterate() != Status::Optimal) {
                throw Error("phase one cannot be unbounded");  // objective bounded above by 0
            }
            if (objective() != 0) {
                out.status = Status::Infeasible;
                out.pivots = pivots_;
                return out;
            }
            drive_out_artificials();
        }
        out.status = Status::Optimal;
        if (phase_two) {
            phase_ = 2;
            out.status = iterate();
        }
        out.pivots = pivots_;
        if (out.status != Status::Optimal) return out;
        out.objective = phase_two ? objective() : Rational(0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_ && xb_[i] != 0) out.primal.emplace_back(basis_[i], xb_[i]);
        }
        std::sort(out.primal.begin(), out.primal.end(),
                  [](const auto &a, const auto &b) { return a.first < b.first; });
        out.dual = duals();
        return out;
    }

   private:
    bool is_artificial(std::size_t var) const { return var >= n_ && p_.sense[var - n_] == Sense::Equal; }

    Rational cost(std::size_t var) const {
        if (phase_ == 1) return is_artificial(var) ? Rational(-1) : Rational(0);
        if (var < n_ && !p_.objective.empty()) return p_.objective[var];
        return 0;
    }

    std::vector<Rational> duals() const {
        std::vector<Rational> y(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            Rational c = cost(basis_[i]);
            if (c == 0) continue;
            for (std::size_t k = 0; k < m_; ++k) {
                if (binv_[i][k] != 0) y[k] += c * binv_[i][k];
            }
        }
        return y;
    }

    Rational objective() const {
        Rational z = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            Rational c = cost(basis_[i]);
            if (c != 0) z += c * xb_[i];
        }
        return z;
    }

    void load_column(std::size_t var) {
        if (var < n_) {
            a_.column(var, col_);
        } else {
            col_.clear();
            col_.push_back({var - n_, 1});
        }
    }

    // u = B^-1 A_var
    void ftran(std::vector<Rational> &u) {
        u.assign(m_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i) {
            for (const auto &e : col_) {
                const Rational &b = binv_[i][e.row];
                if (b != 0) u[i] += b * e.value;
            }
        }
    }

    // Bland: lowest-index eligible variable with positive reduced cost.
    std::optional<std::size_t> entering(const std::vector<Rational> &y) {
        Rational d;
        for (std::size_t var = 0; var < n_ + m_; ++var) {
            if (basic_[var] || is_artificial(var)) continue;
            load_column(var);
            d = cost(var);
            for (const auto &e : col_) {
                if (y[e.row] != 0) d -= y[e.row] * e.value;
            }
            if (d > 0) return var;
        }
        return std::nullopt;
    }

    void pivot(std::size_t r, std::size_t var, const std::vector<Rational> &u) {
        const Rational piv = u[r];
        for (auto &b : binv_[r]) {
            if (b != 0) b /= piv;
        }
        xb_[r] /= piv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || u[i] == 0) continue;
            const Rational f = u[i];
            for (std::size_t k = 0; k < m_; ++k) {
                if (binv_[r][k] != 0) binv_[i][k] -= f * binv_[r][k];
            }
            if (xb_[r] != 0) xb_[i] -= f * xb_[r];
        }
        basic_[basis_[r]] = false;
        basis_[r] = var;
        basic_[var] = true;
        ++pivots_;
    }

    Status iterate() {
        std::vector<Rational> u;
        while (true) {
            auto y = duals();
            auto var = entering(y);
            if (!var) return Status::Optimal;
            load_column(*var);
            ftran(u);
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (u[i] <= 0) continue;
                Rational ratio = xb_[i] / u[i];
                if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave) return Status::Unbounded;
            pivot(*leave, *var, u);
        }
    }

    // Replaces zero-level artificials by real columns where the row allows;
    // rows that do not allow it are redundant and keep their artificial at 0.
    void drive_out_artificials() {
        std::vector<Rational> u;
        for (std::size_t r = 0; r < m_; ++r) {
            if (!is_artificial(basis_[r])) continue;
            for (std::size_t var = 0; var < n_ + m_; ++var) {
                if (basic_[var] || is_artificial(var)) continue;
                load_column(var);
                Rational dot = 0;
                for (const auto &e : col_) {
                    if (binv_[r][e.row] != 0) dot += binv_[r][e.row] * e.value;
                }
                if (dot == 0) continue;
                ftran(u);
                pivot(r, var, u);
                break;
            }
        }
    }

    const Problem &p_;
    const ColumnSource &a_;
    std::size_t m_;
    std::size_t n_;
    int phase_ = 2;
    bool has_artificial_ = false;
    std::vector<std::size_t> basis_;
    std::vector<bool> basic_;
    std::vector<std::vector<Rational>> binv_;
    std::vector<Rational> xb_;
    std::vector<Entry> col_;
    std::size_t pivots_ = 0;
};

}  // namespace

Solution solve(const Problem &problem) {
    if (!problem.matrix) throw DomainError("problem has no constraint matrix");
    return Simplex(problem).run(true);
}

Solution find_feasible(const Problem &problem) {
    if (!problem.matrix) throw DomainError("problem has no constraint matrix");
    return Simplex(problem).run(false);
}

std::optional<std::vector<Rational>> solve_unrestricted(const ColumnSource &matrix, const std::vector<Rational> &rhs) {
    const std::size_t m = matrix.rows();
    const std::size_t n = matrix.cols();
    if (rhs.size() != m) throw DomainError("right-hand side must match the row count");
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(n + 1));
    std::vector<Entry> col;
    for (std::size_t j = 0; j < n; ++j) {
        matrix.column(j, col);
        for (const auto &e : col) t[e.row][j] = e.value;
    }
    for (std::size_t i = 0; i < m; ++i) t[i][n] = rhs[i];

    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t j = 0; j < n && row < m; ++j) {
        std::size_t p = row;
        while (p < m && t[p][j] == 0) ++p;
        if (p == m) continue;
        std::swap(t[p], t[row]);
        const Rational inv = 1 / t[row][j];
        for (std::size_t k = j; k <= n; ++k) {
            if (t[row][k] != 0) t[row][k] *= inv;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || t[i][j] == 0) continue;
            const Rational f = t[i][j];
            for (std::size_t k = j; k <= n; ++k) {
                if (t[row][k] != 0) t[i][k] -= f * t[row][k];
            }
        }
        pivot_col.push_back(j);
        ++row;
    }
    for (std::size_t i = row; i < m; ++i) {
        if (t[i][n] != 0) return std::nullopt;
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = t[i][n];
    return x;
}

}  // namespace sheafctx::lp
