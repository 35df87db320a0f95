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

#include "sheafctx/empirical.hpp"

#include <algorithm>

#include "sheafctx/errors.hpp"

namespace sheafctx {

namespace {

// Projects assignment index `index` on `domain` to the index of its
// restriction at positions `keep`.
std::size_t project_index(std::size_t index, std::size_t domain_size, Outcome base,
                          const std::vector<std::size_t> &keep, std::vector<Outcome> &scratch) {
    scratch.resize(domain_size);
    for (std::size_t i = domain_size; i-- > 0;) {
        scratch[i] = static_cast<Outcome>(index % base);
        index /= base;
    }
    std::size_t out = 0;
    for (std::size_t p : keep) out = out * base + scratch[p];
    return out;
}

}  // namespace

ContextDistribution::ContextDistribution(LabelSet domain, Outcome outcome_count, std::vector<Rational> weights)
    : domain_(make_label_set(std::move(domain))), outcome_count_(outcome_count), weights_(std::move(weights)) {
    if (weights_.size() != assignment_count(domain_.size(), outcome_count_)) {
        throw DomainError("distribution on {" + join_labels(domain_) + "} needs " +
                          std::to_string(assignment_count(domain_.size(), outcome_count_)) + " weights, got " +
                          std::to_string(weights_.size()));
    }
    Rational total = 0;
    for (const auto &w : weights_) {
        if (w < 0) throw DomainError("negative weight in distribution on {" + join_labels(domain_) + "}");
        total += w;
    }
    if (total != 1) {
        throw DomainError("weights on {" + join_labels(domain_) + "} sum to " + to_string(total) + ", not 1");
    }
}

ContextDistribution ContextDistribution::point_mass(const Assignment &s, Outcome outcome_count) {
    std::vector<Rational> w(assignment_count(s.size(), outcome_count));
    w[assignment_index(s, outcome_count)] = 1;
    return ContextDistribution(s.domain(), outcome_count, std::move(w));
}

ContextDistribution ContextDistribution::uniform(LabelSet domain, Outcome outcome_count) {
    std::size_t count = assignment_count(domain.size(), outcome_count);
    return ContextDistribution(std::move(domain), outcome_count,
                               std::vector<Rational>(count, Rational(1, static_cast<long>(count))));
}

const Rational &ContextDistribution::weight(const Assignment &s) const {
    if (s.domain() != domain_) {
        throw DomainError("assignment on {" + join_labels(s.domain()) + "} queried in distribution on {" +
                          join_labels(domain_) + "}");
    }
    return weights_[assignment_index(s, outcome_count_)];
}

std::vector<std::size_t> ContextDistribution::support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (weights_[i] != 0) out.push_back(i);
    }
    return out;
}

ContextDistribution marginalize(const ContextDistribution &d, std::vector<MeasurementLabel> target) {
    LabelSet sub = make_label_set(std::move(target));
    if (!is_subset(sub, d.domain())) {
        throw DomainError("cannot marginalize {" + join_labels(d.domain()) + "} to {" + join_labels(sub) + "}");
    }
    auto keep = positions_in(sub, d.domain());
    std::vector<Rational> w(assignment_count(sub.size(), d.outcome_count()));
    std::vector<Outcome> scratch;
    for (std::size_t i = 0; i < d.weights().size(); ++i) {
        if (d.weights()[i] == 0) continue;
        w[project_index(i, d.domain().size(), d.outcome_count(), keep, scratch)] += d.weights()[i];
    }
    return ContextDistribution(std::move(sub), d.outcome_count(), std::move(w));
}

EmpiricalModel::EmpiricalModel(MeasurementScenario scenario, std::vector<ContextDistribution> rows)
    : scenario_(std::move(scenario)) {
    const auto &cover = scenario_.cover();
    std::vector<bool> seen(cover.size(), false);
    rows_.reserve(cover.size());
    std::vector<std::size_t> slot(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto &row = rows[r];
        Context ctx = [&] {
            try {
                return Context(row.domain());
            } catch (const DomainError &) {
                throw DomainError("empirical model rows must be over nonempty contexts");
            }
        }();
        std::size_t idx = scenario_.context_index(ctx);
        if (idx == cover.size()) {
            throw DomainError("row {" + ctx.str() + "} is not a context of the cover");
        }
        if (seen[idx]) throw DomainError("duplicate row for context {" + ctx.str() + "}");
        if (row.outcome_count() != scenario_.outcome_count()) {
            throw DomainError("row {" + ctx.str() + "} uses a different outcome set");
        }
        seen[idx] = true;
        slot[r] = idx;
    }
    for (std::size_t i = 0; i < cover.size(); ++i) {
        if (!seen[i]) throw DomainError("missing row for context {" + cover[i].str() + "}");
    }
    std::vector<std::size_t> order(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) order[slot[r]] = r;
    for (std::size_t i = 0; i < cover.size(); ++i) rows_.push_back(std::move(rows[order[i]]));
}

const ContextDistribution &EmpiricalModel::row(const Context &context) const {
    std::size_t idx = scenario_.context_index(context);
    if (idx == scenario_.cover().size()) {
        throw DomainError("{" + context.str() + "} is not a context of the cover");
    }
    return rows_[idx];
}

std::vector<SignalingViolation> check_no_signaling(const EmpiricalModel &e) {
    std::vector<SignalingViolation> out;
    const auto &cover = e.scenario().cover();
    for (std::size_t i = 0; i < cover.size(); ++i) {
        for (std::size_t j = i + 1; j < cover.size(); ++j) {
            LabelSet overlap = set_intersection(cover[i].members(), cover[j].members());
            if (overlap.empty()) continue;
            auto mi = marginalize(e.row(i), overlap);
            auto mj = marginalize(e.row(j), overlap);
            for (std::size_t k = 0; k < mi.weights().size(); ++k) {
                if (mi.weight_at(k) != mj.weight_at(k)) {
                    out.push_back({cover[i], cover[j], assignment_at(overlap, e.scenario().outcome_count(), k),
                                   mi.weight_at(k), mj.weight_at(k)});
                }
            }
        }
    }
    return out;
}

EmpiricalModel convex_mix(const EmpiricalModel &e1, const EmpiricalModel &e2, const Rational &lambda) {
    if (!(e1.scenario() == e2.scenario())) {
        throw DomainError("convex_mix needs models on the same scenario");
    }
    if (lambda < 0 || lambda > 1) {
        throw DomainError("mixing weight " + to_string(lambda) + " outside [0, 1]");
    }
    const Rational rest = 1 - lambda;
    std::vector<ContextDistribution> rows;
    rows.reserve(e1.rows().size());
    for (std::size_t i = 0; i < e1.rows().size(); ++i) {
        const auto &a = e1.row(i).weights();
        const auto &b = e2.row(i).weights();
        std::vector<Rational> w(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) w[k] = lambda * a[k] + rest * b[k];
        rows.emplace_back(e1.row(i).domain(), e1.row(i).outcome_count(), std::move(w));
    }
    return EmpiricalModel(e1.scenario(), std::move(rows));
}

PossibilisticModel::PossibilisticModel(MeasurementScenario scenario, std::vector<std::vector<std::size_t>> supports)
    : scenario_(std::move(scenario)), supports_(std::move(supports)) {
    const auto &cover = scenario_.cover();
    if (supports_.size() != cover.size()) {
        throw DomainError("possibilistic model needs one support per cover context");
    }
    for (std::size_t i = 0; i < cover.size(); ++i) {
        auto &s = supports_[i];
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.empty()) throw DomainError("empty support at context {" + cover[i].str() + "}");
        if (s.back() >= assignment_count(cover[i].size(), scenario_.outcome_count())) {
            throw DomainError("support index out of range at context {" + cover[i].str() + "}");
        }
    }
}

std::vector<Assignment> PossibilisticModel::support(std::size_t context) const {
    std::vector<Assignment> out;
    const auto &domain = scenario_.cover()[context].members();
    for (std::size_t idx : supports_[context]) {
        out.push_back(assignment_at(domain, scenario_.outcome_count(), idx));
    }
    return out;
}

bool PossibilisticModel::contains(std::size_t context, const Assignment &s) const {
    if (s.domain() != scenario_.cover()[context].members()) return false;
    return std::binary_search(supports_[context].begin(), supports_[context].end(),
                              assignment_index(s, scenario_.outcome_count()));
}

std::vector<Assignment> PossibilisticModel::derived_support(std::vector<MeasurementLabel> target) const {
    LabelSet domain = make_label_set(std::move(target));
    const Outcome base = scenario_.outcome_count();
    const auto &cover = scenario_.cover();

    // For each context, the set of restrictions of its support to U ∩ C.
    struct Local {
        std::vector<std::size_t> in_target;  // positions of U ∩ C inside U
        std::vector<bool> allowed;           // indexed by assignment of U ∩ C
    };
    std::vector<Local> locals;
    std::vector<Outcome> scratch;
    for (std::size_t c = 0; c < cover.size(); ++c) {
        LabelSet overlap = set_intersection(domain, cover[c].members());
        if (overlap.empty()) continue;
        Local local;
        local.in_target = positions_in(overlap, domain);
        local.allowed.assign(assignment_count(overlap.size(), base), false);
        auto keep = positions_in(overlap, cover[c].members());
        for (std::size_t idx : supports_[c]) {
            local.allowed[project_index(idx, cover[c].size(), base, keep, scratch)] = true;
        }
        locals.push_back(std::move(local));
    }

    std::vector<Assignment> out;
    std::size_t count = assignment_count(domain.size(), base);
    for (std::size_t idx = 0; idx < count; ++idx) {
        bool ok = true;
        for (const auto &local : locals) {
            if (!local.allowed[project_index(idx, domain.size(), base, local.in_target, scratch)]) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(assignment_at(domain, base, idx));
    }
    return out;
}

PossibilisticModel possibilistic_collapse(const EmpiricalModel &e) {
    std::vector<std::vector<std::size_t>> supports;
    supports.reserve(e.rows().size());
    for (const auto &row : e.rows()) supports.push_back(row.support());
    return PossibilisticModel(e.scenario(), std::move(supports));
}

}  // namespace sheafctx
