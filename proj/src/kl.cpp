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

#include "sheafctx/kl.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "sheafctx/errors.hpp"

namespace sheafctx {

namespace {

using OpKey = std::tuple<unsigned, std::uint64_t, std::uint64_t>;

OpKey key_of(const PauliOperator &p) { return {p.phase(), p.x(), p.z()}; }

// Odd-multiplicity leaves of the unfolded DAG.
PauliSet odd_leaves(const std::vector<DeterminingTree::Node> &nodes) {
    std::vector<std::optional<std::map<OpKey, PauliOperator>>> memo(nodes.size());
    auto parity = [&](auto &&self, std::size_t i) -> const std::map<OpKey, PauliOperator> & {
        if (memo[i]) return *memo[i];
        std::map<OpKey, PauliOperator> out;
        if (nodes[i].children.empty()) {
            out.emplace(key_of(nodes[i].op), nodes[i].op);
        } else {
            for (std::size_t c : nodes[i].children) {
                for (const auto &[k, op] : self(self, c)) {
                    if (!out.erase(k)) out.emplace(k, op);
                }
            }
        }
        memo[i] = std::move(out);
        return *memo[i];
    };
    std::vector<PauliOperator> ops;
    for (const auto &[k, op] : parity(parity, 0)) ops.push_back(op);
    return PauliSet(std::move(ops));
}

}  // namespace

std::string DeterminingTree::str(std::size_t max_nodes) const {
    std::string out;
    std::size_t emitted = 0;
    auto render = [&](auto &&self, std::size_t i) -> void {
        if (emitted >= max_nodes) {
            out += "...";
            return;
        }
        ++emitted;
        out += nodes[i].op.str();
        if (nodes[i].children.empty()) return;
        out += "(";
        for (std::size_t k = 0; k < nodes[i].children.size(); ++k) {
            if (k) out += ", ";
            self(self, nodes[i].children[k]);
        }
        out += ")";
    };
    render(render, 0);
    return out;
}

bool is_valid_tree(const DeterminingTree &tree, const PauliSet &s) {
    if (tree.nodes.empty()) return false;
    for (const auto &node : tree.nodes) {
        if (node.children.empty()) {
            bool lone_identity = tree.nodes.size() == 1 && s.empty() && node.op.is_identity();
            if (!s.contains(node.op) && !lone_identity) return false;
            continue;
        }
        PauliOperator product = PauliOperator::identity(node.op.n());
        for (std::size_t a = 0; a < node.children.size(); ++a) {
            const auto &ca = tree.nodes.at(node.children[a]).op;
            for (std::size_t b = a + 1; b < node.children.size(); ++b) {
                if (!commutes(ca, tree.nodes.at(node.children[b]).op)) return false;
            }
            product = multiply(product, ca);
        }
        if (product != node.op) return false;
    }
    return odd_leaves(tree.nodes) == tree.determining_set;
}

std::optional<DeterminingTree> find_determining_tree(const PauliOperator &x, const PauliSet &s) {
    if (!s.empty() && x.n() != s.n()) throw DomainError("operator and set differ in qubit count");
    PartialClosure pc = derive_closure(s);
    std::size_t root = pc.members.index_of(x);
    if (root == pc.members.size()) return std::nullopt;

    DeterminingTree tree;
    std::vector<std::size_t> node_of(pc.members.size(), SIZE_MAX);
    auto build = [&](auto &&self, std::size_t idx) -> std::size_t {
        if (node_of[idx] != SIZE_MAX) return node_of[idx];
        std::size_t me = tree.nodes.size();
        node_of[idx] = me;
        tree.nodes.push_back({pc.members[idx], {}});
        const Derivation &d = pc.derivations[idx];
        std::vector<std::size_t> kids;
        if (d.kind == Derivation::Kind::Product) {
            kids.push_back(self(self, d.left));
            kids.push_back(self(self, d.right));
        } else if (d.kind == Derivation::Kind::Axiom && !s.empty()) {
            std::size_t first = self(self, pc.members.index_of(s[0]));
            kids = {first, first};
        }
        tree.nodes[me].children = std::move(kids);
        return me;
    };
    build(build, root);
    tree.determining_set = odd_leaves(tree.nodes);
    return tree;
}

std::optional<KLWitness> kl_witness(const PauliSet &s) {
    for (const auto &p : s) {
        if (!p.is_hermitian()) throw PreconditionError(p.str() + " is not Hermitian");
    }
    if (s.size() > 64) throw SizeError("witness search is limited to 64 generators");
    PartialClosure pc = derive_closure(s);
    const auto &elems = pc.members;
    std::map<OpKey, std::size_t> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(key_of(elems[i]), i);

    struct State {
        std::size_t elem;
        std::uint64_t d;
        std::size_t left;
        std::size_t right;
    };
    constexpr std::size_t kLeaf = SIZE_MAX;
    std::vector<State> states;
    std::vector<std::unordered_map<std::uint64_t, std::size_t>> by_elem(elems.size());
    std::optional<std::pair<std::size_t, std::size_t>> hit;

    auto add = [&](std::size_t elem, std::uint64_t d, std::size_t left, std::size_t right) {
        if (by_elem[elem].count(d)) return;
        if (states.size() >= kMaxWitnessStates) throw SizeError("witness search exceeds its state budget");
        by_elem[elem].emplace(d, states.size());
        states.push_back({elem, d, left, right});
        if (hit || elems[elem].is_identity_up_to_phase()) return;
        auto neg = index.find(key_of(elems[elem].negated()));
        if (neg == index.end()) return;
        auto other = by_elem[neg->second].find(d);
        if (other != by_elem[neg->second].end()) hit = {states.size() - 1, other->second};
    };

    for (std::size_t i = 0; i < s.size(); ++i) add(elems.index_of(s[i]), std::uint64_t{1} << i, kLeaf, kLeaf);
    for (std::size_t t = 0; t < states.size() && !hit; ++t) {
        for (std::size_t u = 0; u <= t && !hit; ++u) {
            const auto &a = elems[states[u].elem];
            const auto &b = elems[states[t].elem];
            if (!commutes(a, b)) continue;
            std::size_t prod = index.at(key_of(multiply(a, b)));
            add(prod, states[u].d ^ states[t].d, u, t);
        }
    }
    if (!hit) return std::nullopt;

    auto tree_of = [&](std::size_t root) {
        DeterminingTree tree;
        std::unordered_map<std::size_t, std::size_t> node_of;
        auto build = [&](auto &&self, std::size_t st) -> std::size_t {
            if (auto it = node_of.find(st); it != node_of.end()) return it->second;
            std::size_t me = tree.nodes.size();
            node_of.emplace(st, me);
            tree.nodes.push_back({elems[states[st].elem], {}});
            if (states[st].left != kLeaf) {
                std::size_t l = self(self, states[st].left);
                std::size_t r = self(self, states[st].right);
                tree.nodes[me].children = {l, r};
            }
            return me;
        };
        build(build, root);
        tree.determining_set = odd_leaves(tree.nodes);
        return tree;
    };

    auto [first, second] = *hit;
    if (elems[states[first].elem].phase() != 0) std::swap(first, second);
    KLWitness w{elems[states[first].elem], tree_of(first), tree_of(second)};
    return w;
}

unsigned commutability_pattern(const std::array<PauliOperator, 4> &ops) {
    static constexpr std::array<std::pair<int, int>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    bool adj[4][4] = {};
    for (auto [i, j] : kPairs) adj[i][j] = adj[j][i] = commutes(ops[i], ops[j]);
    std::array<int, 4> perm{0, 1, 2, 3};
    unsigned best = 0x3F;
    do {
        unsigned mask = 0;
        for (std::size_t e = 0; e < kPairs.size(); ++e) {
            if (adj[perm[kPairs[e].first]][perm[kPairs[e].second]]) mask |= 1u << e;
        }
        best = std::min(best, mask);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

const std::vector<std::pair<unsigned, PatternVerdict>> &pattern_table() {
    // Exhaustive over the 1365 4-subsets of the 15 nontrivial 2-qubit Paulis;
    // every class that occurs there is pure. Masks 3, 13 and 30 are the
    // star-plus-isolated-vertex, the 4-path and the 4-cycle.
    static const std::vector<std::pair<unsigned, PatternVerdict>> table = {
        {0, PatternVerdict::Noncontextual},  {1, PatternVerdict::Noncontextual},
        {3, PatternVerdict::Contextual},     {7, PatternVerdict::Noncontextual},
        {12, PatternVerdict::Noncontextual}, {13, PatternVerdict::Contextual},
        {15, PatternVerdict::Noncontextual}, {30, PatternVerdict::Contextual},
    };
    return table;
}

PatternVerdict pattern_verdict(unsigned canonical_mask) {
    const auto &table = pattern_table();
    auto it = std::find_if(table.begin(), table.end(), [&](const auto &e) { return e.first == canonical_mask; });
    return it == table.end() ? PatternVerdict::Unseen : it->second;
}

KLPatternResult kl_pattern_test(const PauliSet &s) {
    for (const auto &p : s) {
        if (!p.is_hermitian()) throw PreconditionError(p.str() + " is not Hermitian");
    }
    KLPatternResult out;
    const std::size_t m = s.size();
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            for (std::size_t c = b + 1; c < m; ++c) {
                for (std::size_t d = c + 1; d < m; ++d) {
                    PauliSet sub({s[a], s[b], s[c], s[d]});
                    if (!is_state_independent_avn(sub, true)) continue;
                    std::array<PauliOperator, 4> ops{s[a], s[b], s[c], s[d]};
                    out.passes = true;
                    out.subset = ops;
                    out.pattern = commutability_pattern(ops);
                    out.cached = pattern_verdict(*out.pattern);
                    return out;
                }
            }
        }
    }
    return out;
}

std::string to_string(PatternVerdict v) {
    switch (v) {
        case PatternVerdict::Contextual:
            return "contextual";
        case PatternVerdict::Noncontextual:
            return "noncontextual";
        case PatternVerdict::Unseen:
            return "unseen";
    }
    return "unseen";
}

}  // namespace sheafctx
