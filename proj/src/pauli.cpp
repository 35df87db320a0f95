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

#include "sheafctx/pauli.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "sheafctx/errors.hpp"

namespace sheafctx {

namespace {

std::uint64_t low_mask(std::size_t n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

void require_same_n(const PauliOperator &p, const PauliOperator &q) {
    if (p.n() != q.n()) {
        throw DomainError("Pauli operators on " + std::to_string(p.n()) + " and " + std::to_string(q.n()) +
                          " qubits");
    }
}

}  // namespace

PauliOperator::PauliOperator(std::size_t n, std::uint64_t x, std::uint64_t z, unsigned phase)
    : n_(n), x_(x), z_(z), phase_(phase % 4) {
    if (n > kMaxQubits) throw SizeError("Pauli operators are limited to 64 qubits");
    if ((x | z) & ~low_mask(n)) throw DomainError("Pauli bits beyond the qubit count");
}

PauliOperator PauliOperator::identity(std::size_t n) { return PauliOperator(n, 0, 0, 0); }

PauliOperator PauliOperator::parse(std::string_view text) {
    std::string_view body = text;
    unsigned phase = 0;
    if (body.starts_with("+")) {
        body.remove_prefix(1);
    } else if (body.starts_with("-")) {
        body.remove_prefix(1);
        phase = 2;
    } else if (body.starts_with("\xE2\x88\x92")) {
        body.remove_prefix(3);
        phase = 2;
    }
    if (body.empty()) throw ParseError("Pauli string '" + std::string(text) + "' has no letters");
    if (body.size() > kMaxQubits) throw ParseError("Pauli string '" + std::string(text) + "' is too long");
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    for (std::size_t k = 0; k < body.size(); ++k) {
        std::uint64_t bit = std::uint64_t{1} << k;
        switch (body[k]) {
            case 'I':
                break;
            case 'X':
                x |= bit;
                break;
            case 'Y':
                x |= bit;
                z |= bit;
                break;
            case 'Z':
                z |= bit;
                break;
            default:
                throw ParseError("bad character '" + std::string(1, body[k]) + "' in Pauli string '" +
                                 std::string(text) + "'");
        }
    }
    return PauliOperator(body.size(), x, z, phase);
}

char PauliOperator::letter(std::size_t qubit) const {
    bool xb = x_ >> qubit & 1;
    bool zb = z_ >> qubit & 1;
    return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
}

std::string PauliOperator::letters() const {
    std::string out(n_, 'I');
    for (std::size_t k = 0; k < n_; ++k) out[k] = letter(k);
    return out;
}

std::string PauliOperator::str() const {
    static const char *const prefix[] = {"", "i", "-", "-i"};
    return prefix[phase_] + letters();
}

std::strong_ordering operator<=>(const PauliOperator &a, const PauliOperator &b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.phase_ <=> b.phase_; c != 0) return c;
    return a.letters() <=> b.letters();
}

PauliOperator multiply(const PauliOperator &p, const PauliOperator &q) {
    require_same_n(p, q);
    int exponent = static_cast<int>(p.phase() + q.phase());
    for (std::size_t k = 0; k < p.n(); ++k) {
        int x1 = p.x() >> k & 1, z1 = p.z() >> k & 1;
        int x2 = q.x() >> k & 1, z2 = q.z() >> k & 1;
        if (x1 && z1) {
            exponent += z2 - x2;
        } else if (x1) {
            exponent += z2 * (2 * x2 - 1);
        } else if (z1) {
            exponent += x2 * (1 - 2 * z2);
        }
    }
    return PauliOperator(p.n(), p.x() ^ q.x(), p.z() ^ q.z(), static_cast<unsigned>(((exponent % 4) + 4) % 4));
}

bool commutes(const PauliOperator &p, const PauliOperator &q) {
    require_same_n(p, q);
    return std::popcount((p.x() & q.z()) ^ (p.z() & q.x())) % 2 == 0;
}

PauliSet::PauliSet(std::vector<PauliOperator> members) : members_(std::move(members)) {
    for (const auto &p : members_) {
        if (p.n() != members_.front().n()) throw DomainError("Pauli set mixes qubit counts");
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

PauliSet PauliSet::parse(const std::vector<std::string> &texts) {
    std::vector<PauliOperator> ops;
    for (const auto &t : texts) ops.push_back(PauliOperator::parse(t));
    return PauliSet(std::move(ops));
}

std::size_t PauliSet::index_of(const PauliOperator &p) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), p);
    if (it == members_.end() || *it != p) return members_.size();
    return static_cast<std::size_t>(it - members_.begin());
}

bool PauliSet::contains(const PauliOperator &p) const { return index_of(p) != members_.size(); }

std::vector<std::string> PauliSet::strings() const {
    std::vector<std::string> out;
    for (const auto &p : members_) out.push_back(p.str());
    return out;
}

CommutationGraph::CommutationGraph(PauliSet vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    adjacency_.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) adjacency_[i][j] = i != j && commutes(vertices_[i], vertices_[j]);
    }
}

std::vector<std::pair<std::size_t, std::size_t>> CommutationGraph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < adjacency_.size(); ++i) {
        for (std::size_t j = i + 1; j < adjacency_.size(); ++j) {
            if (adjacency_[i][j]) out.emplace_back(i, j);
        }
    }
    return out;
}

std::vector<Context> measurement_cover(const PauliSet &s) {
    std::vector<PauliOperator> ops;
    for (const auto &p : s) {
        if (!p.is_identity_up_to_phase()) ops.push_back(p);
    }
    const std::size_t n = ops.size();
    std::vector<BitVec> nbr(n, BitVec(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) nbr[i][j] = i != j && commutes(ops[i], ops[j]);
    }

    std::vector<Context> out;
    std::vector<std::size_t> r;
    auto bk = [&](auto &&self, BitVec p, BitVec x) -> void {
        if (p.none() && x.none()) {
            std::vector<MeasurementLabel> labels;
            for (std::size_t v : r) labels.emplace_back(ops[v].str());
            out.emplace_back(std::move(labels));
            return;
        }
        BitVec px = p | x;
        std::size_t pivot = px.find_first();
        std::size_t best = (p & nbr[pivot]).count();
        for (std::size_t u = px.find_next(pivot); u != BitVec::npos; u = px.find_next(u)) {
            std::size_t c = (p & nbr[u]).count();
            if (c > best) {
                best = c;
                pivot = u;
            }
        }
        BitVec candidates = p - nbr[pivot];
        for (std::size_t v = candidates.find_first(); v != BitVec::npos; v = candidates.find_next(v)) {
            r.push_back(v);
            self(self, p & nbr[v], x & nbr[v]);
            r.pop_back();
            p[v] = false;
            x[v] = true;
        }
    };
    if (n > 0) {
        BitVec all(n);
        all.set();
        bk(bk, all, BitVec(n));
    }
    std::sort(out.begin(), out.end());
    return out;
}

MeasurementScenario pauli_scenario(const PauliSet &s) {
    std::vector<MeasurementLabel> labels;
    for (const auto &p : s) {
        if (!p.is_identity_up_to_phase()) labels.emplace_back(p.str());
    }
    return MeasurementScenario(std::move(labels), measurement_cover(s), 2, OutcomeRing::Z2);
}

PauliOperator label_operator(const MeasurementLabel &label) { return PauliOperator::parse(label.str()); }

PartialClosure derive_closure(const PauliSet &s) {
    std::vector<PauliOperator> found(s.begin(), s.end());
    std::vector<Derivation> how(found.size());
    std::map<PauliOperator, std::size_t> index;
    for (std::size_t i = 0; i < found.size(); ++i) index.emplace(found[i], i);

    auto add = [&](PauliOperator p, Derivation d) {
        if (index.count(p)) return;
        if (found.size() >= kMaxClosureSize) {
            throw SizeError("partial closure exceeds " + std::to_string(kMaxClosureSize) + " elements");
        }
        index.emplace(p, found.size());
        found.push_back(std::move(p));
        how.push_back(d);
    };
    for (std::size_t i = 0; i < found.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            if (!commutes(found[j], found[i])) continue;
            add(multiply(found[j], found[i]), {Derivation::Kind::Product, j, i});
        }
    }
    add(PauliOperator::identity(s.n()), {Derivation::Kind::Axiom, 0, 0});

    PartialClosure out;
    out.members = PauliSet(found);
    std::vector<std::size_t> rank(found.size());
    for (std::size_t i = 0; i < found.size(); ++i) rank[i] = out.members.index_of(found[i]);
    out.derivations.resize(found.size());
    out.discovery = rank;
    for (std::size_t i = 0; i < found.size(); ++i) {
        Derivation d = how[i];
        if (d.kind == Derivation::Kind::Product) {
            d.left = rank[d.left];
            d.right = rank[d.right];
        }
        out.derivations[rank[i]] = d;
    }
    return out;
}

PauliSet partial_closure(const PauliSet &s) { return derive_closure(s).members; }

LinearTheory state_independent_theory(const PauliSet &s) {
    for (const auto &p : s) {
        if (!p.is_hermitian()) throw PreconditionError(p.str() + " is not Hermitian");
    }
    MeasurementScenario sc = pauli_scenario(s);
    LinearTheory theory(sc);
    const std::size_t n = s.n();
    for (const auto &ctx : sc.cover()) {
        std::vector<PauliOperator> ops;
        for (const auto &label : ctx.members()) ops.push_back(label_operator(label));
        const std::size_t k = ops.size();
        std::vector<BitVec> rows(2 * n, BitVec(k));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t b = 0; b < n; ++b) {
                rows[b][i] = ops[i].x() >> b & 1;
                rows[n + b][i] = ops[i].z() >> b & 1;
            }
        }
        for (auto &r : gf2::nullspace(std::move(rows), k)) {
            PauliOperator product = PauliOperator::identity(n);
            for (std::size_t i = 0; i < k; ++i) {
                if (r[i]) product = multiply(product, ops[i]);
            }
            if (!product.is_identity_up_to_phase() || !product.is_hermitian()) {
                throw Error("kernel product on {" + ctx.str() + "} is " + product.str() + ", not ±I");
            }
            theory.add(LinearEquation(ctx, std::move(r), product.phase() == 2));
        }
    }
    return theory;
}

bool is_state_independent_avn(const PauliSet &s, bool in_closure) {
    return !is_consistent(state_independent_theory(in_closure ? partial_closure(s) : s)).consistent;
}

}  // namespace sheafctx
