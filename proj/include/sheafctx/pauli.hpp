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
#include <string>
#include <string_view>
#include <vector>

#include "sheafctx/linear_theory.hpp"
#include "sheafctx/scenario.hpp"

namespace sheafctx {

/// Element i^phase * P_0 (x) ... (x) P_{n-1} of the Pauli n-group. Bit k of
/// x/z describes qubit k, which is character k of the string form. A set x and
/// z bit together mean the Pauli Y itself, so the operator is Hermitian
/// exactly when the phase is even.
class PauliOperator {
   public:
    static constexpr std::size_t kMaxQubits = 64;

    PauliOperator() = default;
    PauliOperator(std::size_t n, std::uint64_t x, std::uint64_t z, unsigned phase = 0);

    static PauliOperator identity(std::size_t n);
    /// Optional "+", "-" or U+2212 sign, then n letters from IXYZ. Throws
    /// ParseError.
    static PauliOperator parse(std::string_view text);

    std::size_t n() const { return n_; }
    unsigned phase() const { return phase_; }
    std::uint64_t x() const { return x_; }
    std::uint64_t z() const { return z_; }
    char letter(std::size_t qubit) const;
    std::string letters() const;

    bool is_hermitian() const { return phase_ % 2 == 0; }
    /// ±I (or ±iI).
    bool is_identity_up_to_phase() const { return x_ == 0 && z_ == 0; }
    bool is_identity() const { return is_identity_up_to_phase() && phase_ == 0; }
    PauliOperator negated() const { return PauliOperator(n_, x_, z_, phase_ + 2); }

    /// "XX", "-YY", "iZ", "-iZ".
    std::string str() const;

    /// Canonical order: qubit count, phase, then the letter string.
    friend std::strong_ordering operator<=>(const PauliOperator &a, const PauliOperator &b);
    friend bool operator==(const PauliOperator &a, const PauliOperator &b) = default;

   private:
    std::size_t n_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
    unsigned phase_ = 0;
};

/// Throws DomainError when the qubit counts differ.
PauliOperator multiply(const PauliOperator &p, const PauliOperator &q);
/// Symplectic form test. Throws DomainError when the qubit counts differ.
bool commutes(const PauliOperator &p, const PauliOperator &q);

/// Uniform-n set of Pauli operators in canonical order without duplicates.
class PauliSet {
   public:
    PauliSet() = default;
    /// Throws DomainError for mixed qubit counts.
    explicit PauliSet(std::vector<PauliOperator> members);
    static PauliSet parse(const std::vector<std::string> &texts);

    std::size_t n() const { return members_.empty() ? 0 : members_.front().n(); }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const std::vector<PauliOperator> &members() const { return members_; }
    const PauliOperator &operator[](std::size_t i) const { return members_[i]; }
    bool contains(const PauliOperator &p) const;
    /// Position of p in members(), or size() when absent.
    std::size_t index_of(const PauliOperator &p) const;
    std::vector<std::string> strings() const;

    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    friend bool operator==(const PauliSet &, const PauliSet &) = default;

   private:
    std::vector<PauliOperator> members_;
};

/// Commutability graph over a set; vertex i is set[i].
class CommutationGraph {
   public:
    explicit CommutationGraph(PauliSet vertices);
    const PauliSet &vertices() const { return vertices_; }
    bool adjacent(std::size_t i, std::size_t j) const { return adjacency_[i][j]; }
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

   private:
    PauliSet vertices_;
    std::vector<std::vector<bool>> adjacency_;
};

/// Maximal commuting subsets of S minus ±I, as contexts of operator strings.
/// Bron-Kerbosch with pivoting; contexts in canonical order.
std::vector<Context> measurement_cover(const PauliSet &s);

/// Scenario <S \ {±I}, measurement_cover(S), Z2>.
MeasurementScenario pauli_scenario(const PauliSet &s);

/// Operators named by a Pauli scenario's labels.
PauliOperator label_operator(const MeasurementLabel &label);

inline constexpr std::size_t kMaxClosureSize = 4096;

/// How a closure element first arose: a member of S, the identity axiom, or
/// the product of two earlier commuting elements.
struct Derivation {
    enum class Kind { Generator, Axiom, Product };
    Kind kind = Kind::Generator;
    std::size_t left = 0;   // closure indices, for Product
    std::size_t right = 0;
};

struct PartialClosure {
    PauliSet members;
    /// Aligned with members.
    std::vector<Derivation> derivations;
    /// Discovery order, as indices into members. Product derivations only
    /// reference elements discovered earlier.
    std::vector<std::size_t> discovery;
};

/// Smallest set containing S and I that is closed under products of
/// commuting pairs. Throws SizeError beyond kMaxClosureSize elements.
PartialClosure derive_closure(const PauliSet &s);
PauliSet partial_closure(const PauliSet &s);

/// Equations <C, r, a> with prod_{x in C} x^r(x) = (-1)^a I, per context of
/// the measurement cover. Throws PreconditionError for a non-Hermitian member.
LinearTheory state_independent_theory(const PauliSet &s);

bool is_state_independent_avn(const PauliSet &s, bool in_closure);

}  // namespace sheafctx
