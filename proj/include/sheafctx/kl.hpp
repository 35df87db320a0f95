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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sheafctx/pauli.hpp"

namespace sheafctx {

/// Tree rooted at an operator whose children pairwise commute and multiply to
/// their parent, with leaves in a generating set. Stored as a DAG: identical
/// subtrees may be shared, and the tree is its unfolding.
struct DeterminingTree {
    struct Node {
        PauliOperator op;
        std::vector<std::size_t> children;
    };
    /// nodes[0] is the root.
    std::vector<Node> nodes;
    /// Leaves of odd multiplicity in the unfolded tree.
    PauliSet determining_set;

    const PauliOperator &root() const { return nodes.front().op; }
    /// Nested form "XX(XI, IX)", elided past `max_nodes` nodes.
    std::string str(std::size_t max_nodes = 256) const;
};

/// Checks the tree shape: children commute pairwise and multiply to the
/// parent, leaves lie in s, and determining_set matches the leaf parities.
bool is_valid_tree(const DeterminingTree &tree, const PauliSet &s);

/// The tree obtained by replaying the first closure derivation of x, or
/// nullopt when x is not in the partial closure of s.
std::optional<DeterminingTree> find_determining_tree(const PauliOperator &x, const PauliSet &s);

struct KLWitness {
    PauliOperator x;
    DeterminingTree positive;  // rooted at x
    DeterminingTree negative;  // rooted at -x, same determining set
};

inline constexpr std::size_t kMaxWitnessStates = std::size_t{1} << 18;

/// Searches achievable (element, determining set) pairs of the closure,
/// breadth first, for x != ±I reachable as both x and -x with one determining
/// set. Throws PreconditionError for a non-Hermitian member, SizeError for
/// more than 64 generators or kMaxWitnessStates states.
std::optional<KLWitness> kl_witness(const PauliSet &s);

/// Canonical 6-bit edge mask of the commutability graph of four operators:
/// bit order (01, 02, 03, 12, 13, 23), minimized over vertex relabelings.
unsigned commutability_pattern(const std::array<PauliOperator, 4> &ops);

enum class PatternVerdict { Contextual, Noncontextual, Unseen };

/// Cached closure-AvN verdict per canonical pattern, derived from every
/// 4-subset of the nontrivial 2-qubit Paulis.
PatternVerdict pattern_verdict(unsigned canonical_mask);
const std::vector<std::pair<unsigned, PatternVerdict>> &pattern_table();

struct KLPatternResult {
    bool passes = false;
    /// Lexicographically least 4-subset (by canonical index) whose closure is
    /// state-independently AvN.
    std::optional<std::array<PauliOperator, 4>> subset;
    std::optional<unsigned> pattern;
    /// pattern_verdict(pattern) for that subset.
    std::optional<PatternVerdict> cached;
};

/// Whether some 4-subset of s is state-independently AvN in its closure,
/// decided by the direct closure test.
KLPatternResult kl_pattern_test(const PauliSet &s);

std::string to_string(PatternVerdict v);

}  // namespace sheafctx
