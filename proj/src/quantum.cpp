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

#include "sheafctx/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "sheafctx/errors.hpp"

namespace sheafctx {

namespace {

double norm_squared(const std::vector<Amplitude> &v) {
    double total = 0;
    for (const auto &a : v) total += std::norm(a);
    return total;
}

std::vector<Amplitude> apply_equatorial(const EquatorialMeasurement &m, std::size_t n,
                                        const std::vector<Amplitude> &psi) {
    const std::size_t bit = std::size_t{1} << (n - 1 - m.party);
    const Amplitude up = std::polar(1.0, m.angle);     // <1|M|0>
    const Amplitude down = std::polar(1.0, -m.angle);  // <0|M|1>
    std::vector<Amplitude> out(psi.size());
    for (std::size_t b = 0; b < psi.size(); ++b) out[b ^ bit] = psi[b] * ((b & bit) ? down : up);
    return out;
}

// Probabilities of every outcome tuple of commuting +-1 observables, in the
// order given, computed by splitting psi with the projectors (I +- A)/2.
template <typename Apply>
std::vector<double> split_probabilities(const std::vector<Amplitude> &psi, std::size_t k, Apply apply) {
    std::vector<double> out(std::size_t{1} << k);
    auto branch = [&](auto &&self, std::size_t level, std::size_t index, const std::vector<Amplitude> &phi) -> void {
        if (level == k) {
            out[index] = norm_squared(phi);
            return;
        }
        auto a_phi = apply(level, phi);
        std::vector<Amplitude> plus(phi.size());
        std::vector<Amplitude> minus(phi.size());
        for (std::size_t b = 0; b < phi.size(); ++b) {
            plus[b] = (phi[b] + a_phi[b]) * 0.5;
            minus[b] = (phi[b] - a_phi[b]) * 0.5;
        }
        self(self, level + 1, index << 1, plus);
        self(self, level + 1, index << 1 | 1, minus);
    };
    branch(branch, 0, 0, psi);
    return out;
}

// Re-indexes probabilities from the given label order to sorted label order.
BornDistribution sorted_distribution(const std::vector<MeasurementLabel> &labels, const std::vector<double> &probs) {
    LabelSet domain = make_label_set(labels);
    if (domain.size() != labels.size()) throw DomainError("repeated label in a context");
    const std::size_t k = labels.size();
    auto pos = positions_in(labels, domain);
    std::vector<double> sorted(probs.size());
    for (std::size_t idx = 0; idx < probs.size(); ++idx) {
        std::size_t target = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (idx >> (k - 1 - i) & 1) target |= std::size_t{1} << (k - 1 - pos[i]);
        }
        sorted[target] = probs[idx];
    }
    return exactify(std::move(domain), std::move(sorted));
}

BornDistribution born_pauli(const StateVector &psi, const std::vector<MeasurementLabel> &labels,
                            const std::vector<PauliOperator> &ops) {
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (ops[i].n() != psi.n()) throw PreconditionError(ops[i].str() + " does not act on the state's qubits");
        if (!ops[i].is_hermitian()) throw PreconditionError(ops[i].str() + " is not Hermitian");
        for (std::size_t j = 0; j < i; ++j) {
            if (!commutes(ops[i], ops[j])) {
                throw PreconditionError(ops[j].str() + " and " + ops[i].str() + " do not commute");
            }
        }
    }
    auto probs = split_probabilities(psi.amplitudes(), ops.size(), [&](std::size_t level, const auto &phi) {
        return apply_pauli(ops[level], phi);
    });
    return sorted_distribution(labels, probs);
}

}  // namespace

StateVector::StateVector(std::size_t n, std::vector<Amplitude> amplitudes) : n_(n), amplitudes_(std::move(amplitudes)) {
    if (n_ > kMaxQubits) throw SizeError("state vectors are limited to 10 qubits");
    if (amplitudes_.size() != (std::size_t{1} << n_)) {
        throw DomainError("a " + std::to_string(n_) + "-qubit state needs " + std::to_string(std::size_t{1} << n_) +
                          " amplitudes");
    }
    if (std::abs(norm_squared(amplitudes_) - 1) > kNormTolerance) throw DomainError("state is not normalized");
}

StateVector StateVector::normalized(std::size_t n, std::vector<Amplitude> amplitudes) {
    double norm = std::sqrt(norm_squared(amplitudes));
    if (norm == 0) throw DomainError("cannot normalize the zero vector");
    for (auto &a : amplitudes) a /= norm;
    return StateVector(n, std::move(amplitudes));
}

std::vector<Amplitude> apply_pauli(const PauliOperator &p, const std::vector<Amplitude> &psi) {
    const std::size_t n = p.n();
    if (psi.size() != (std::size_t{1} << n)) throw DomainError("operator and state differ in qubit count");
    std::size_t bx = 0;
    std::size_t bz = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (p.x() >> k & 1) bx |= std::size_t{1} << (n - 1 - k);
        if (p.z() >> k & 1) bz |= std::size_t{1} << (n - 1 - k);
    }
    static const Amplitude kI[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Amplitude factor = kI[(p.phase() + std::popcount(p.x() & p.z())) % 4];
    std::vector<Amplitude> out(psi.size());
    for (std::size_t b = 0; b < psi.size(); ++b) {
        Amplitude v = factor * psi[b];
        out[b ^ bx] = (std::popcount(b & bz) % 2) ? -v : v;
    }
    return out;
}

BornDistribution exactify(LabelSet domain, std::vector<double> probabilities) {
    BornDistribution out;
    out.domain = std::move(domain);
    std::vector<Rational> q;
    Rational total = 0;
    for (double p : probabilities) {
        Rational r = limit_denominator(exact_from_double(std::max(p, 0.0)), BigInt(kExactDenominator));
        out.residual = std::max(out.residual, std::abs(p - to_double(r)));
        total += r;
        q.push_back(std::move(r));
    }
    out.probabilities = std::move(probabilities);
    if (out.residual <= kExactResidual && total != 0) {
        for (auto &r : q) r /= total;
        out.exact = ContextDistribution(out.domain, 2, std::move(q));
    }
    return out;
}

BornDistribution born_distribution(const StateVector &psi, const std::vector<PauliOperator> &context) {
    std::vector<MeasurementLabel> labels;
    for (const auto &p : context) labels.emplace_back(p.str());
    return born_pauli(psi, labels, context);
}

std::vector<double> born_probabilities_equatorial(const StateVector &psi,
                                                  const std::vector<EquatorialMeasurement> &ms) {
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (ms[i].party >= psi.n()) throw PreconditionError("party " + std::to_string(ms[i].party) + " has no qubit");
        for (std::size_t j = 0; j < i; ++j) {
            if (ms[i].party == ms[j].party) {
                throw PreconditionError("party " + std::to_string(ms[i].party) + " measured twice in one context");
            }
        }
    }
    return split_probabilities(psi.amplitudes(), ms.size(), [&](std::size_t level, const auto &phi) {
        return apply_equatorial(ms[level], psi.n(), phi);
    });
}

BornDistribution born_distribution_equatorial(const StateVector &psi, const LabelSet &labels,
                                              const std::vector<EquatorialMeasurement> &ms) {
    if (labels.size() != ms.size()) throw DomainError("one label per equatorial measurement");
    return sorted_distribution(labels, born_probabilities_equatorial(psi, ms));
}

Bindings pauli_bindings(const MeasurementScenario &scenario) {
    Bindings out;
    for (const auto &label : scenario.measurements()) out.emplace(label, label_operator(label));
    return out;
}

const EmpiricalModel &Realization::model() const {
    if (!exact) {
        throw PreconditionError("realized model is float-tagged (residual " + std::to_string(residual) +
                                "); exact analysis refused");
    }
    return *exact;
}

PossibilisticModel Realization::support_model(double tolerance) const {
    std::vector<std::vector<std::size_t>> supports;
    for (const auto &row : rows) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < row.probabilities.size(); ++i) {
            if (row.probabilities[i] > tolerance) s.push_back(i);
        }
        supports.push_back(std::move(s));
    }
    return PossibilisticModel(scenario, std::move(supports));
}

Realization realize_model(const StateVector &psi, const MeasurementScenario &scenario, const Bindings &bindings) {
    Realization out{scenario, {}, 0, std::nullopt};
    bool all_exact = true;
    for (const auto &ctx : scenario.cover()) {
        std::vector<PauliOperator> paulis;
        std::vector<EquatorialMeasurement> equatorial;
        for (const auto &label : ctx.members()) {
            auto it = bindings.find(label);
            if (it == bindings.end()) throw PreconditionError("no physical binding for " + label.str());
            if (const auto *p = std::get_if<PauliOperator>(&it->second)) {
                paulis.push_back(*p);
            } else {
                equatorial.push_back(std::get<EquatorialMeasurement>(it->second));
            }
        }
        if (!paulis.empty() && !equatorial.empty()) {
            throw PreconditionError("context {" + ctx.str() + "} mixes Pauli and equatorial measurements");
        }
        BornDistribution row = paulis.empty() ? born_distribution_equatorial(psi, ctx.members(), equatorial)
                                              : born_pauli(psi, ctx.members(), paulis);
        out.residual = std::max(out.residual, row.residual);
        all_exact = all_exact && row.exact.has_value();
        out.rows.push_back(std::move(row));
    }
    if (all_exact) {
        std::vector<ContextDistribution> rows;
        for (const auto &row : out.rows) rows.push_back(*row.exact);
        EmpiricalModel model(scenario, std::move(rows));
        if (check_no_signaling(model).empty()) out.exact = std::move(model);
    }
    return out;
}

Realization realize_model(const StateVector &psi, const MeasurementScenario &scenario) {
    return realize_model(psi, scenario, pauli_bindings(scenario));
}

StateVector canonical_state(const std::string &name) {
    const double r = 1 / std::sqrt(2.0);
    if (name == "bell_phi_plus") return StateVector(2, {r, 0, 0, r});
    auto sized = [&](const std::string &prefix) -> std::optional<std::size_t> {
        if (!name.starts_with(prefix + "(") || !name.ends_with(")")) return std::nullopt;
        std::string digits = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
        if (digits.empty() || digits.size() > 2 ||
            !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            return std::nullopt;
        }
        std::size_t n = std::stoul(digits);
        if (n == 0 || n > StateVector::kMaxQubits) return std::nullopt;
        return n;
    };
    if (auto n = sized("ghz")) {
        std::vector<Amplitude> a(std::size_t{1} << *n);
        a.front() = r;
        a.back() = r;
        return StateVector(*n, std::move(a));
    }
    if (auto n = sized("plus")) {
        std::size_t dim = std::size_t{1} << *n;
        return StateVector(*n, std::vector<Amplitude>(dim, 1 / std::sqrt(static_cast<double>(dim))));
    }
    if (auto n = sized("zero")) {
        std::vector<Amplitude> a(std::size_t{1} << *n);
        a.front() = 1;
        return StateVector(*n, std::move(a));
    }
    throw DomainError("unknown canonical state '" + name + "'");
}

StateVector random_state(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    std::vector<Amplitude> a(std::size_t{1} << n);
    for (auto &x : a) x = {gauss(rng), gauss(rng)};
    return StateVector::normalized(n, std::move(a));
}

namespace {

std::vector<Amplitude> gaussian_integer_vector(std::size_t n, std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> pick(-2, 2);
    std::vector<Amplitude> a(std::size_t{1} << n);
    do {
        for (auto &x : a) x = {static_cast<double>(pick(rng)), static_cast<double>(pick(rng))};
    } while (norm_squared(a) == 0);
    return a;
}

}  // namespace

StateVector random_gaussian_integer_state(std::size_t n, std::mt19937_64 &rng) {
    return StateVector::normalized(n, gaussian_integer_vector(n, rng));
}

std::optional<StateVector> eigenstate_probe(const PauliOperator &p, int sign, std::mt19937_64 &rng) {
    auto r = gaussian_integer_vector(p.n(), rng);
    auto pr = apply_pauli(p, r);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += sign < 0 ? -pr[i] : pr[i];
    if (norm_squared(r) < 1e-9) return std::nullopt;
    return StateVector::normalized(p.n(), std::move(r));
}

}  // namespace sheafctx
