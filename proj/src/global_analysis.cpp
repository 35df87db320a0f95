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

#include "sheafctx/global_analysis.hpp"

#include <algorithm>
#include <numeric>

#include "sheafctx/errors.hpp"

namespace sheafctx {

namespace {

void require_valid(const MeasurementScenario &scenario) {
    auto violations = validate_scenario(scenario);
    if (!violations.empty()) {
        throw PreconditionError("invalid scenario: " + violations.front().message);
    }
}

void require_no_signaling(const EmpiricalModel &e) {
    auto violations = check_no_signaling(e);
    if (!violations.empty()) {
        const auto &v = violations.front();
        throw PreconditionError("model is signaling between {" + v.first.str() + "} and {" + v.second.str() +
                                "} at " + outcome_string(v.at));
    }
}

// Incidence rows plus one all-ones row expressing sum(X) = 1.
class NormalizedIncidence final : public lp::ColumnSource {
   public:
    explicit NormalizedIncidence(const IncidenceMatrix &m) : m_(m) {}
    std::size_t rows() const override { return m_.rows() + 1; }
    std::size_t cols() const override { return m_.cols(); }
    void column(std::size_t g, std::vector<lp::Entry> &out) const override {
        m_.column(g, out);
        out.push_back({m_.rows(), 1});
    }

   private:
    const IncidenceMatrix &m_;
};

std::vector<Rational> model_vector(const EmpiricalModel &e) {
    std::vector<Rational> v;
    for (const auto &row : e.rows()) v.insert(v.end(), row.weights().begin(), row.weights().end());
    return v;
}

std::size_t project(std::size_t index, std::size_t domain_size, Outcome base, const std::vector<std::size_t> &keep) {
    std::vector<Outcome> digits(domain_size);
    for (std::size_t i = domain_size; i-- > 0;) {
        digits[i] = static_cast<Outcome>(index % base);
        index /= base;
    }
    std::size_t out = 0;
    for (std::size_t p : keep) out = out * base + digits[p];
    return out;
}

}  // namespace

IncidenceMatrix::IncidenceMatrix(const MeasurementScenario &scenario) : scenario_(scenario) {
    require_valid(scenario_);
    const auto &xs = scenario_.measurements();
    const Outcome base = scenario_.outcome_count();
    col_count_ = assignment_count(xs.size(), base);
    if (col_count_ > kMaxGlobalAssignments) {
        throw SizeError(std::to_string(col_count_) + " global assignments exceed the cap of " +
                        std::to_string(kMaxGlobalAssignments));
    }
    for (const auto &c : scenario_.cover()) {
        offsets_.push_back(row_count_);
        row_count_ += assignment_count(c.size(), base);
        std::vector<std::size_t> weights(xs.size(), 0);
        auto pos = positions_in(c.members(), xs);
        std::size_t w = 1;
        for (std::size_t i = pos.size(); i-- > 0;) {
            weights[pos[i]] = w;
            w *= base;
        }
        digit_weights_.push_back(std::move(weights));
    }
}

std::size_t IncidenceMatrix::restrict_index(std::size_t g, std::size_t context) const {
    const auto &w = digit_weights_[context];
    const Outcome base = scenario_.outcome_count();
    std::size_t local = 0;
    for (std::size_t p = w.size(); p-- > 0;) {
        local += (g % base) * w[p];
        g /= base;
    }
    return local;
}

void IncidenceMatrix::column(std::size_t g, std::vector<lp::Entry> &out) const {
    out.clear();
    for (std::size_t c = 0; c < digit_weights_.size(); ++c) {
        out.push_back({offsets_[c] + restrict_index(g, c), 1});
    }
}

std::pair<std::size_t, std::size_t> IncidenceMatrix::row_key(std::size_t row) const {
    if (row >= row_count_) throw DomainError("incidence row out of range");
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), row);
    std::size_t c = static_cast<std::size_t>(it - offsets_.begin()) - 1;
    return {c, row - offsets_[c]};
}

bool IncidenceMatrix::entry(std::size_t row, std::size_t g) const {
    auto [c, local] = row_key(row);
    return restrict_index(g, c) == local;
}

Assignment IncidenceMatrix::column_assignment(std::size_t g) const {
    return assignment_at(scenario_.measurements(), scenario_.outcome_count(), g);
}

IncidenceMatrix build_incidence(const MeasurementScenario &scenario) { return IncidenceMatrix(scenario); }

GlobalDistribution::GlobalDistribution(LabelSet measurements, Outcome outcome_count,
                                       std::map<std::size_t, Rational> weights)
    : measurements_(make_label_set(std::move(measurements))), outcome_count_(outcome_count) {
    std::size_t count = assignment_count(measurements_.size(), outcome_count_);
    Rational total = 0;
    for (auto &[g, w] : weights) {
        if (g >= count) throw DomainError("global assignment index out of range");
        if (w < 0) throw DomainError("negative weight in global distribution");
        if (w == 0) continue;
        total += w;
        weights_.emplace(g, w);
    }
    if (total != 1) throw DomainError("global distribution sums to " + to_string(total) + ", not 1");
}

Rational GlobalDistribution::weight(std::size_t global_index) const {
    auto it = weights_.find(global_index);
    return it == weights_.end() ? Rational(0) : it->second;
}

ContextDistribution GlobalDistribution::marginal(const LabelSet &target) const {
    LabelSet sub = make_label_set(target);
    auto keep = positions_in(sub, measurements_);
    std::vector<Rational> w(assignment_count(sub.size(), outcome_count_));
    for (const auto &[g, weight] : weights_) {
        w[project(g, measurements_.size(), outcome_count_, keep)] += weight;
    }
    return ContextDistribution(std::move(sub), outcome_count_, std::move(w));
}

EmpiricalModel induced_model(const GlobalDistribution &d, const MeasurementScenario &scenario) {
    std::vector<ContextDistribution> rows;
    for (const auto &c : scenario.cover()) rows.push_back(d.marginal(c.members()));
    return EmpiricalModel(scenario, std::move(rows));
}

std::optional<GlobalDistribution> find_global_distribution(const EmpiricalModel &e) {
    require_no_signaling(e);
    IncidenceMatrix incidence(e.scenario());
    NormalizedIncidence normalized(incidence);
    lp::Problem problem;
    problem.matrix = &normalized;
    problem.rhs = model_vector(e);
    problem.rhs.push_back(1);
    problem.sense.assign(problem.rhs.size(), lp::Sense::Equal);
    auto solution = lp::find_feasible(problem);
    if (solution.status != lp::Status::Optimal) return std::nullopt;
    std::map<std::size_t, Rational> weights(solution.primal.begin(), solution.primal.end());
    return GlobalDistribution(e.scenario().measurements(), e.scenario().outcome_count(), std::move(weights));
}

NoncontextualFraction noncontextual_fraction(const EmpiricalModel &e) {
    require_no_signaling(e);
    IncidenceMatrix incidence(e.scenario());
    lp::Problem problem;
    problem.matrix = &incidence;
    problem.rhs = model_vector(e);
    problem.sense.assign(problem.rhs.size(), lp::Sense::LessEqual);
    problem.objective.assign(incidence.cols(), Rational(1));
    auto solution = lp::solve(problem);
    if (solution.status != lp::Status::Optimal) {
        throw Error("noncontextual-fraction LP did not reach an optimum");
    }
    NoncontextualFraction out;
    out.ncf = solution.objective;
    out.cf = 1 - out.ncf;
    out.witness = std::move(solution.primal);
    out.dual = std::move(solution.dual);
    return out;
}

std::optional<std::vector<Rational>> signed_global_solution(const EmpiricalModel &e) {
    IncidenceMatrix incidence(e.scenario());
    NormalizedIncidence normalized(incidence);
    auto rhs = model_vector(e);
    rhs.push_back(1);
    return lp::solve_unrestricted(normalized, rhs);
}

std::vector<std::size_t> global_section_indices(const PossibilisticModel &p) {
    const auto &sc = p.scenario();
    const auto &xs = sc.measurements();
    const Outcome base = sc.outcome_count();
    const auto &cover = sc.cover();
    assignment_count(xs.size(), base);  // size guard

    std::vector<std::size_t> order(cover.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return p.support_indices(a).size() < p.support_indices(b).size();
    });
    std::vector<std::vector<std::size_t>> pos;
    for (const auto &c : cover) pos.push_back(positions_in(c.members(), xs));

    // Decoded support tuples per context.
    std::vector<std::vector<std::vector<Outcome>>> tuples(cover.size());
    for (std::size_t c = 0; c < cover.size(); ++c) {
        for (std::size_t idx : p.support_indices(c)) {
            tuples[c].push_back(assignment_at(cover[c].members(), base, idx).values());
        }
    }

    constexpr Outcome kUnset = static_cast<Outcome>(-1);
    std::vector<Outcome> current(xs.size(), kUnset);
    std::vector<std::size_t> out;

    auto emit = [&]() {
        // Labels outside every context range freely.
        std::vector<std::size_t> free;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (current[i] == kUnset) free.push_back(i);
        }
        std::size_t combos = assignment_count(free.size(), base);
        for (std::size_t k = 0; k < combos; ++k) {
            std::vector<Outcome> g = current;
            std::size_t rest = k;
            for (std::size_t f = free.size(); f-- > 0;) {
                g[free[f]] = static_cast<Outcome>(rest % base);
                rest /= base;
            }
            out.push_back(assignment_index(g, base));
        }
    };

    auto search = [&](auto &&self, std::size_t depth) -> void {
        if (depth == order.size()) {
            emit();
            return;
        }
        std::size_t c = order[depth];
        std::vector<std::size_t> touched;
        for (const auto &tuple : tuples[c]) {
            bool ok = true;
            touched.clear();
            for (std::size_t i = 0; i < tuple.size(); ++i) {
                Outcome &slot = current[pos[c][i]];
                if (slot == kUnset) {
                    slot = tuple[i];
                    touched.push_back(pos[c][i]);
                } else if (slot != tuple[i]) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                auto saved = touched;
                self(self, depth + 1);
                touched = std::move(saved);
            }
            for (std::size_t t : touched) current[t] = kUnset;
        }
    };
    search(search, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Assignment> global_sections(const PossibilisticModel &p) {
    std::vector<Assignment> out;
    for (std::size_t g : global_section_indices(p)) {
        out.push_back(assignment_at(p.scenario().measurements(), p.scenario().outcome_count(), g));
    }
    return out;
}

bool is_strongly_contextual(const PossibilisticModel &p) { return global_section_indices(p).empty(); }

namespace {

bool extendable(const PossibilisticModel &p, const std::vector<std::size_t> &sections, std::size_t context,
                std::size_t local) {
    const auto &sc = p.scenario();
    auto keep = positions_in(sc.cover()[context].members(), sc.measurements());
    for (std::size_t g : sections) {
        if (project(g, sc.measurements().size(), sc.outcome_count(), keep) == local) return true;
    }
    return false;
}

}  // namespace

bool logically_contextual_at(const PossibilisticModel &p, const Context &context, const Assignment &s) {
    std::size_t c = p.scenario().context_index(context);
    if (c == p.scenario().cover().size()) {
        throw PreconditionError("{" + context.str() + "} is not a context of the cover");
    }
    if (!p.contains(c, s)) {
        throw PreconditionError("assignment " + outcome_string(s) + " is not in the support at {" + context.str() +
                                "}");
    }
    return !extendable(p, global_section_indices(p), c, assignment_index(s, p.scenario().outcome_count()));
}

bool is_logically_contextual(const PossibilisticModel &p) {
    auto sections = global_section_indices(p);
    for (std::size_t c = 0; c < p.scenario().cover().size(); ++c) {
        for (std::size_t local : p.support_indices(c)) {
            if (!extendable(p, sections, c, local)) return true;
        }
    }
    return false;
}

EmpiricalModel HiddenVariableModel::realized_model() const {
    std::vector<ContextDistribution> rows;
    for (std::size_t c = 0; c < scenario.cover().size(); ++c) {
        const auto &domain = scenario.cover()[c].members();
        std::vector<Rational> w(assignment_count(domain.size(), scenario.outcome_count()));
        for (std::size_t l = 0; l < lambdas.size(); ++l) {
            const auto &cond = conditionals[l][c].weights();
            for (std::size_t k = 0; k < w.size(); ++k) {
                if (cond[k] != 0) w[k] += prior[l] * cond[k];
            }
        }
        rows.emplace_back(domain, scenario.outcome_count(), std::move(w));
    }
    return EmpiricalModel(scenario, std::move(rows));
}

HiddenVariableModel to_hidden_variable(const GlobalDistribution &d, const MeasurementScenario &scenario) {
    if (d.measurements() != scenario.measurements() || d.outcome_count() != scenario.outcome_count()) {
        throw DomainError("global distribution and scenario disagree on measurements or outcomes");
    }
    HiddenVariableModel h{scenario, {}, {}, {}};
    for (const auto &[g, w] : d.weights()) {
        Assignment lambda = assignment_at(d.measurements(), d.outcome_count(), g);
        h.lambdas.push_back(outcome_string(lambda));
        h.prior.push_back(w);
        std::vector<ContextDistribution> conds;
        for (const auto &c : scenario.cover()) {
            conds.push_back(ContextDistribution::point_mass(restrict(lambda, c.members()), d.outcome_count()));
        }
        h.conditionals.push_back(std::move(conds));
    }
    return h;
}

std::optional<FactorisationFailure> find_factorisation_failure(const HiddenVariableModel &h) {
    const auto &cover = h.scenario.cover();
    const Outcome base = h.scenario.outcome_count();
    for (std::size_t l = 0; l < h.lambdas.size(); ++l) {
        for (std::size_t c = 0; c < cover.size(); ++c) {
            const auto &dist = h.conditionals[l][c];
            std::vector<ContextDistribution> singles;
            for (const auto &m : cover[c].members()) singles.push_back(marginalize(dist, {m}));
            for (std::size_t k = 0; k < dist.weights().size(); ++k) {
                Assignment s = assignment_at(cover[c].members(), base, k);
                Rational product = 1;
                for (std::size_t i = 0; i < singles.size(); ++i) product *= singles[i].weight_at(s.values()[i]);
                if (product != dist.weight_at(k)) return FactorisationFailure{l, c, std::move(s)};
            }
        }
    }
    return std::nullopt;
}

GlobalDistribution from_hidden_variable(const HiddenVariableModel &h) {
    const auto &sc = h.scenario;
    const auto &cover = sc.cover();
    const Outcome base = sc.outcome_count();
    if (h.prior.size() != h.lambdas.size() || h.conditionals.size() != h.lambdas.size()) {
        throw PreconditionError("hidden-variable model has mismatched lambda tables");
    }
    Rational total = 0;
    for (const auto &w : h.prior) {
        if (w < 0) throw PreconditionError("negative prior weight");
        total += w;
    }
    if (total != 1) throw PreconditionError("prior sums to " + to_string(total) + ", not 1");
    for (std::size_t l = 0; l < h.lambdas.size(); ++l) {
        if (h.conditionals[l].size() != cover.size()) {
            throw PreconditionError("lambda " + h.lambdas[l] + " lacks a conditional per context");
        }
        EmpiricalModel family(sc, h.conditionals[l]);
        auto violations = check_no_signaling(family);
        if (!violations.empty()) {
            throw PreconditionError("conditionals of lambda " + h.lambdas[l] + " are not compatible at {" +
                                    violations.front().first.str() + "} / {" + violations.front().second.str() +
                                    "}");
        }
    }
    if (auto failure = find_factorisation_failure(h)) {
        throw PreconditionError("hidden-variable model is not factorisable: lambda " + h.lambdas[failure->lambda] +
                                ", context {" + cover[failure->context].str() + "}, assignment " +
                                outcome_string(failure->at));
    }

    const auto &xs = sc.measurements();
    // h_m^λ taken from the first context containing m; compatibility makes
    // the choice irrelevant.
    std::vector<std::vector<std::vector<Rational>>> singles(h.lambdas.size());
    for (std::size_t l = 0; l < h.lambdas.size(); ++l) {
        for (const auto &m : xs) {
            auto it = std::find_if(cover.begin(), cover.end(), [&](const Context &c) { return c.contains(m); });
            if (it == cover.end()) throw PreconditionError(m.str() + " lies in no context");
            auto c = static_cast<std::size_t>(it - cover.begin());
            singles[l].push_back(marginalize(h.conditionals[l][c], {m}).weights());
        }
    }

    std::map<std::size_t, Rational> weights;
    std::size_t count = assignment_count(xs.size(), base);
    if (count > kMaxGlobalAssignments) throw SizeError("too many global assignments");
    std::vector<Outcome> digits(xs.size());
    for (std::size_t g = 0; g < count; ++g) {
        std::size_t rest = g;
        for (std::size_t i = xs.size(); i-- > 0;) {
            digits[i] = static_cast<Outcome>(rest % base);
            rest /= base;
        }
        Rational value = 0;
        for (std::size_t l = 0; l < h.lambdas.size(); ++l) {
            if (h.prior[l] == 0) continue;
            Rational term = h.prior[l];
            for (std::size_t i = 0; i < xs.size() && term != 0; ++i) term *= singles[l][i][digits[i]];
            value += term;
        }
        if (value != 0) weights.emplace(g, std::move(value));
    }
    return GlobalDistribution(xs, base, std::move(weights));
}

}  // namespace sheafctx
