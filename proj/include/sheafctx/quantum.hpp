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

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "sheafctx/empirical.hpp"
#include "sheafctx/pauli.hpp"
#include "sheafctx/scenario.hpp"

namespace sheafctx {

using Amplitude = std::complex<double>;

/// Pure state on n qubits. Basis index bit (n - 1 - k) is qubit k, so qubit 0
/// is the leftmost tensor factor and the leftmost Pauli letter.
class StateVector {
   public:
    static constexpr std::size_t kMaxQubits = 10;
    static constexpr double kNormTolerance = 1e-12;

    /// Throws DomainError unless |amplitudes| = 2^n and the norm is 1 within
    /// kNormTolerance; SizeError above kMaxQubits.
    StateVector(std::size_t n, std::vector<Amplitude> amplitudes);
    /// Scales a nonzero vector to unit norm.
    static StateVector normalized(std::size_t n, std::vector<Amplitude> amplitudes);

    std::size_t n() const { return n_; }
    const std::vector<Amplitude> &amplitudes() const { return amplitudes_; }

   private:
    std::size_t n_;
    std::vector<Amplitude> amplitudes_;
};

/// cos(angle) X + sin(angle) Y on qubit `party`.
struct EquatorialMeasurement {
    std::size_t party = 0;
    double angle = 0;
};

/// P|psi>.
std::vector<Amplitude> apply_pauli(const PauliOperator &p, const std::vector<Amplitude> &psi);

/// Largest denominator and residual accepted when converting probabilities to
/// exact rationals.
inline constexpr long kExactDenominator = 1L << 16;
inline constexpr double kExactResidual = 1e-9;

/// Born-rule distribution over one context, in assignment order of `domain`.
struct BornDistribution {
    LabelSet domain;
    std::vector<double> probabilities;
    /// max |p - q| between each probability and its rational approximation q.
    double residual = 0;
    /// Present when the residual is within kExactResidual.
    std::optional<ContextDistribution> exact;
};

/// Rounds each probability to the nearest fraction with denominator at most
/// kExactDenominator and renormalizes.
BornDistribution exactify(LabelSet domain, std::vector<double> probabilities);

/// Outcome o of x means eigenvalue (-1)^o. Labels are the operator strings.
/// Throws PreconditionError for non-commuting or non-Hermitian members.
BornDistribution born_distribution(const StateVector &psi, const std::vector<PauliOperator> &context);

/// Joint distribution of local equatorial measurements, outcome order as
/// given. Throws PreconditionError for a repeated party.
std::vector<double> born_probabilities_equatorial(const StateVector &psi,
                                                  const std::vector<EquatorialMeasurement> &ms);
BornDistribution born_distribution_equatorial(const StateVector &psi, const LabelSet &labels,
                                              const std::vector<EquatorialMeasurement> &ms);

/// What a scenario label means physically.
using MeasurementBinding = std::variant<PauliOperator, EquatorialMeasurement>;
using Bindings = std::map<MeasurementLabel, MeasurementBinding>;

/// Every label read as a Pauli string.
Bindings pauli_bindings(const MeasurementScenario &scenario);

struct Realization {
    MeasurementScenario scenario;
    std::vector<BornDistribution> rows;  // aligned with scenario.cover()
    double residual = 0;
    /// Present when every row exactified and the result is no-signaling.
    std::optional<EmpiricalModel> exact;

    /// Throws PreconditionError when float-tagged.
    const EmpiricalModel &model() const;
    /// Supports {s : p(s) > tolerance}, from the float probabilities.
    PossibilisticModel support_model(double tolerance = 1e-12) const;
};

/// Throws PreconditionError for a label without binding or a context that is
/// not realizable (non-commuting Paulis, repeated party, mixed kinds).
Realization realize_model(const StateVector &psi, const MeasurementScenario &scenario, const Bindings &bindings);
Realization realize_model(const StateVector &psi, const MeasurementScenario &scenario);

/// "bell_phi_plus", "ghz(n)", "plus(n)", "zero(n)". Throws DomainError otherwise.
StateVector canonical_state(const std::string &name);

/// Haar-random pure state.
StateVector random_state(std::size_t n, std::mt19937_64 &rng);
/// Normalized vector with entries a + bi, a, b in {-2..2}; its Born
/// probabilities on Pauli contexts are rationals with small denominators.
StateVector random_gaussian_integer_state(std::size_t n, std::mt19937_64 &rng);
/// (I + sign * p) r normalized, r a random Gaussian-integer vector; nullopt
/// when the projection vanishes.
std::optional<StateVector> eigenstate_probe(const PauliOperator &p, int sign, std::mt19937_64 &rng);

}  // namespace sheafctx
