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
#include <random>
#include <string>
#include <vector>

#include "sheafctx/io.hpp"
#include "sheafctx/pauli.hpp"
#include "sheafctx/quantum.hpp"

namespace sheafctx {

struct ScanOptions {
    static constexpr std::size_t kMaxQubits = 3;
    static constexpr std::size_t kMaxSetSize = 8;
    static constexpr std::size_t kMaxSamples = 100000;

    std::size_t max_qubits = 2;
    std::size_t max_set_size = 4;
    /// Random sets to draw; ignored when exhaustive.
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    /// Every max_set_size-subset of the nontrivial max_qubits-qubit Paulis.
    bool exhaustive = false;
    /// Random Gaussian-integer states tried per set, besides the eigenstate
    /// probes (one per member and sign).
    std::size_t random_states = 16;
};

/// Outcome of the search on one set.
struct SetVerdict {
    PauliSet set;
    /// Largest contextual fraction among the exactly realized models tried.
    Rational best_cf;
    /// Amplitudes of the state reaching best_cf, when best_cf > 0.
    std::optional<StateVector> witness_state;
    std::size_t states_tried = 0;
    std::size_t states_exact = 0;
    bool closure_avn = false;

    bool contextual() const { return best_cf > 0; }
    /// Contextual for a found state yet not AvN in closure.
    bool counterexample() const { return contextual() && !closure_avn; }
};

struct ScanReport {
    ScanOptions options;
    std::size_t examined = 0;
    std::size_t contextual = 0;
    std::size_t closure_avn = 0;
    /// Findings: sets contextual for some found state but not closure-AvN.
    std::vector<SetVerdict> counterexamples;
};

/// Throws SizeError when options exceed the caps.
void check_scan_options(const ScanOptions &options);

/// Searches one set for a contextual realization and decides closure-AvN.
SetVerdict scan_set(const PauliSet &s, std::size_t random_states, std::mt19937_64 &rng);

/// Deterministic under options.seed.
ScanReport conjecture_scan(const ScanOptions &options);

Json to_json(const SetVerdict &v);
Json to_json(const ScanReport &report);

}  // namespace sheafctx
