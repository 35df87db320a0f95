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

#include "sheafctx/conjecture_scan.hpp"

#include <algorithm>
#include <numeric>

#include "sheafctx/errors.hpp"
#include "sheafctx/global_analysis.hpp"

namespace sheafctx {

namespace {

// Nontrivial positive Paulis on n qubits in canonical order.
std::vector<PauliOperator> nontrivial_paulis(std::size_t n) {
    std::vector<PauliOperator> out;
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < limit; ++x) {
        for (std::uint64_t z = 0; z < limit; ++z) {
            if (x || z) out.emplace_back(n, x, z);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > (std::uint64_t{1} << 40)) return r;
    }
    return r;
}

}  // namespace

void check_scan_options(const ScanOptions &o) {
    if (o.max_qubits == 0 || o.max_qubits > ScanOptions::kMaxQubits) {
        throw SizeError("max_qubits must lie in 1.." + std::to_string(ScanOptions::kMaxQubits));
    }
    if (o.max_set_size == 0 || o.max_set_size > ScanOptions::kMaxSetSize) {
        throw SizeError("max_set_size must lie in 1.." + std::to_string(ScanOptions::kMaxSetSize));
    }
    if (o.samples > ScanOptions::kMaxSamples) {
        throw SizeError("at most " + std::to_string(ScanOptions::kMaxSamples) + " samples");
    }
    if (o.random_states > 1024) throw SizeError("at most 1024 random states per set");
    if (o.exhaustive) {
        std::size_t pool = (std::size_t{1} << (2 * o.max_qubits)) - 1;
        if (binomial(pool, o.max_set_size) > ScanOptions::kMaxSamples) {
            throw SizeError("exhaustive scan would examine more than " + std::to_string(ScanOptions::kMaxSamples) +
                            " sets");
        }
    }
}

SetVerdict scan_set(const PauliSet &s, std::size_t random_states, std::mt19937_64 &rng) {
    SetVerdict v;
    v.set = s;
    v.best_cf = 0;
    v.closure_avn = is_state_independent_avn(s, true);
    MeasurementScenario sc = pauli_scenario(s);
    if (sc.cover().empty()) return v;

    auto consider = [&](const StateVector &psi) {
        ++v.states_tried;
        Realization r = realize_model(psi, sc);
        if (!r.exact) return;
        ++v.states_exact;
        Rational cf = noncontextual_fraction(*r.exact).cf;
        if (cf > v.best_cf) {
            v.best_cf = cf;
            v.witness_state = psi;
        }
    };
    for (const auto &p : s) {
        if (p.is_identity_up_to_phase()) continue;
        for (int sign : {1, -1}) {
            if (auto psi = eigenstate_probe(p, sign, rng)) consider(*psi);
        }
    }
    for (std::size_t i = 0; i < random_states; ++i) consider(random_gaussian_integer_state(s.n(), rng));
    return v;
}

ScanReport conjecture_scan(const ScanOptions &options) {
    check_scan_options(options);
    ScanReport report;
    report.options = options;
    std::mt19937_64 rng(options.seed);

    auto record = [&](const PauliSet &s) {
        SetVerdict v = scan_set(s, options.random_states, rng);
        ++report.examined;
        if (v.contextual()) ++report.contextual;
        if (v.closure_avn) ++report.closure_avn;
        if (v.counterexample()) report.counterexamples.push_back(std::move(v));
    };

    if (options.exhaustive) {
        auto pool = nontrivial_paulis(options.max_qubits);
        const std::size_t k = std::min(options.max_set_size, pool.size());
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::vector<PauliOperator> members;
            for (std::size_t i : idx) members.push_back(pool[i]);
            record(PauliSet(std::move(members)));
            // Next k-combination in lexicographic order.
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
        return report;
    }

    for (std::size_t sample = 0; sample < options.samples; ++sample) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, options.max_qubits)(rng);
        auto pool = nontrivial_paulis(n);
        std::size_t hi = std::min(options.max_set_size, pool.size());
        std::size_t size = std::uniform_int_distribution<std::size_t>(std::min<std::size_t>(2, hi), hi)(rng);
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(size);
        record(PauliSet(std::move(pool)));
    }
    return report;
}

Json to_json(const SetVerdict &v) {
    Json j = Json::object();
    j["set"] = to_json(v.set);
    j["best_cf"] = to_string(v.best_cf);
    j["contextual"] = v.contextual();
    j["closure_avn"] = v.closure_avn;
    j["states_tried"] = v.states_tried;
    j["states_exact"] = v.states_exact;
    j["witness_state"] = v.witness_state ? to_json(*v.witness_state) : Json(nullptr);
    return j;
}

Json to_json(const ScanReport &report) {
    Json j = Json::object();
    Json opts = Json::object();
    opts["max_qubits"] = report.options.max_qubits;
    opts["max_set_size"] = report.options.max_set_size;
    opts["samples"] = report.options.samples;
    opts["seed"] = report.options.seed;
    opts["exhaustive"] = report.options.exhaustive;
    opts["random_states"] = report.options.random_states;
    j["options"] = std::move(opts);
    j["examined"] = report.examined;
    j["contextual"] = report.contextual;
    j["closure_avn"] = report.closure_avn;
    j["counterexample_candidates"] = Json::array();
    for (const auto &v : report.counterexamples) j["counterexample_candidates"].push_back(to_json(v));
    return j;
}

}  // namespace sheafctx
