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

#include "sheafctx/linear_theory.hpp"

#include <algorithm>

#include "sheafctx/errors.hpp"

namespace sheafctx {

namespace gf2 {

std::vector<std::size_t> rref(std::vector<BitVec> &rows) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    const std::size_t width = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
        std::size_t p = rank;
        while (p < rows.size() && !rows[p][col]) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != rank && rows[i][col]) rows[i] ^= rows[rank];
        }
        pivots.push_back(col);
        ++rank;
    }
    rows.resize(rank);
    return pivots;
}

std::vector<BitVec> nullspace(std::vector<BitVec> rows, std::size_t width) {
    for (const auto &row : rows) {
        if (row.size() != width) throw DomainError("row width mismatch in GF(2) system");
    }
    auto pivots = rref(rows);
    std::vector<bool> is_pivot(width, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<BitVec> out;
    for (std::size_t f = 0; f < width; ++f) {
        if (is_pivot[f]) continue;
        BitVec v(width);
        v[f] = true;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][f]) v[pivots[i]] = true;
        }
        out.push_back(std::move(v));
    }
    rref(out);
    return out;
}

}  // namespace gf2

LinearEquation::LinearEquation(Context context_, BitVec r_, bool a_)
    : context(std::move(context_)), r(std::move(r_)), a(a_) {
    if (r.size() != context.size()) {
        throw DomainError("equation on {" + context.str() + "} needs " + std::to_string(context.size()) +
                          " coefficients");
    }
}

LinearEquation::LinearEquation(Context context_, const std::vector<int> &coefficients, bool a_)
    : context(std::move(context_)), r(coefficients.size()), a(a_) {
    if (r.size() != context.size()) {
        throw DomainError("equation on {" + context.str() + "} needs " + std::to_string(context.size()) +
                          " coefficients");
    }
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        if (coefficients[i] != 0 && coefficients[i] != 1) throw RingError("coefficient outside Z2");
        r[i] = coefficients[i] == 1;
    }
}

bool LinearEquation::coefficient(const MeasurementLabel &label) const {
    const auto &m = context.members();
    auto it = std::lower_bound(m.begin(), m.end(), label);
    if (it == m.end() || *it != label) throw DomainError(label.str() + " is not in {" + context.str() + "}");
    return r[static_cast<std::size_t>(it - m.begin())];
}

std::string LinearEquation::str() const {
    std::string lhs;
    for (std::size_t i = 0; i < context.size(); ++i) {
        if (!r[i]) continue;
        if (!lhs.empty()) lhs += " + ";
        lhs += "s(" + context.members()[i].str() + ")";
    }
    if (lhs.empty()) lhs = "0";
    return lhs + " = " + (a ? "1" : "0");
}

bool satisfies(const Assignment &s, const LinearEquation &phi) {
    bool sum = false;
    for (std::size_t i = 0; i < phi.context.size(); ++i) {
        Outcome v = s.at(phi.context.members()[i]);
        if (v > 1) throw RingError("outcome " + std::to_string(v) + " is not in Z2");
        if (phi.r[i] && v == 1) sum = !sum;
    }
    return sum == phi.a;
}

LinearTheory::LinearTheory(MeasurementScenario scenario)
    : scenario_(std::move(scenario)), rows_(scenario_.cover().size()) {}

LinearTheory::LinearTheory(MeasurementScenario scenario, const std::vector<LinearEquation> &equations)
    : LinearTheory(std::move(scenario)) {
    for (const auto &phi : equations) add(phi);
}

void LinearTheory::add(const LinearEquation &phi) {
    std::size_t c = scenario_.context_index(phi.context);
    if (c == scenario_.cover().size()) {
        throw DomainError("{" + phi.context.str() + "} is not a context of the cover");
    }
    BitVec row = phi.r;
    row.push_back(phi.a);
    rows_[c].push_back(std::move(row));
    gf2::rref(rows_[c]);
}

std::vector<LinearEquation> LinearTheory::basis(std::size_t context) const {
    std::vector<LinearEquation> out;
    const Context &ctx = scenario_.cover()[context];
    for (const auto &row : rows_[context]) {
        BitVec r = row;
        bool a = r[ctx.size()];
        r.resize(ctx.size());
        out.emplace_back(ctx, std::move(r), a);
    }
    return out;
}

std::vector<LinearEquation> LinearTheory::basis() const {
    std::vector<LinearEquation> out;
    for (std::size_t c = 0; c < rows_.size(); ++c) {
        auto b = basis(c);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

std::vector<LinearEquation> LinearTheory::span(std::size_t context) const {
    const Context &ctx = scenario_.cover()[context];
    if (ctx.size() > kMaxSpanContext) {
        throw SizeError("span enumeration is limited to contexts of at most " + std::to_string(kMaxSpanContext) +
                        " measurements");
    }
    const auto &rows = rows_[context];
    std::vector<LinearEquation> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << rows.size()); ++mask) {
        BitVec v(ctx.size() + 1);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (mask >> i & 1) v ^= rows[i];
        }
        bool a = v[ctx.size()];
        v.resize(ctx.size());
        out.emplace_back(ctx, std::move(v), a);
    }
    return out;
}

bool LinearTheory::contains(const LinearEquation &phi) const {
    std::size_t c = scenario_.context_index(phi.context);
    if (c == scenario_.cover().size()) return false;
    BitVec v = phi.r;
    v.push_back(phi.a);
    for (const auto &row : rows_[c]) {
        if (v[row.find_first()]) v ^= row;
    }
    return v.none();
}

LinearTheory theory_of_supports(const PossibilisticModel &p) {
    const auto &sc = p.scenario();
    if (sc.ring() != OutcomeRing::Z2) throw RingError("support theories need the Z2 outcome ring");
    LinearTheory theory(sc);
    for (std::size_t c = 0; c < sc.cover().size(); ++c) {
        const Context &ctx = sc.cover()[c];
        const std::size_t k = ctx.size();
        std::vector<BitVec> vectors;
        for (std::size_t idx : p.support_indices(c)) {
            BitVec v(k + 1);
            for (std::size_t i = 0; i < k; ++i) v[i] = (idx >> (k - 1 - i)) & 1;
            v[k] = true;
            vectors.push_back(std::move(v));
        }
        for (auto &row : gf2::nullspace(std::move(vectors), k + 1)) {
            bool a = row[k];
            row.resize(k);
            theory.add(LinearEquation(ctx, std::move(row), a));
        }
    }
    return theory;
}

Consistency is_consistent(const LinearTheory &theory) {
    const auto &xs = theory.scenario().measurements();
    const std::size_t n = xs.size();
    auto eqs = theory.basis();
    const std::size_t e = eqs.size();

    std::vector<BitVec> rows;
    std::vector<BitVec> combos;
    for (std::size_t i = 0; i < e; ++i) {
        BitVec row(n + 1);
        auto pos = positions_in(eqs[i].context.members(), xs);
        for (std::size_t j = 0; j < pos.size(); ++j) row[pos[j]] = eqs[i].r[j];
        row[n] = eqs[i].a;
        rows.push_back(std::move(row));
        BitVec combo(e);
        combo[i] = true;
        combos.push_back(std::move(combo));
    }

    std::vector<std::size_t> pivot_of_row(e, n);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < e; ++col) {
        std::size_t p = rank;
        while (p < e && !rows[p][col]) ++p;
        if (p == e) continue;
        std::swap(rows[p], rows[rank]);
        std::swap(combos[p], combos[rank]);
        for (std::size_t i = 0; i < e; ++i) {
            if (i != rank && rows[i][col]) {
                rows[i] ^= rows[rank];
                combos[i] ^= combos[rank];
            }
        }
        pivot_of_row[rank] = col;
        ++rank;
    }

    Consistency out;
    for (std::size_t i = rank; i < e; ++i) {
        if (!rows[i][n]) continue;
        for (std::size_t k = combos[i].find_first(); k != BitVec::npos; k = combos[i].find_next(k)) {
            out.certificate.push_back(eqs[k]);
        }
        return out;
    }
    out.consistent = true;
    std::vector<Outcome> values(n, 0);
    for (std::size_t i = 0; i < rank; ++i) values[pivot_of_row[i]] = rows[i][n] ? 1 : 0;
    out.witness = Assignment(xs, std::move(values));
    return out;
}

bool is_avn(const PossibilisticModel &p) { return !is_consistent(theory_of_supports(p)).consistent; }

}  // namespace sheafctx
