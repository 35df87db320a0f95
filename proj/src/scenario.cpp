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

#include "sheafctx/scenario.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "sheafctx/errors.hpp"

namespace sheafctx {

MeasurementLabel::MeasurementLabel(std::string name) : name_(std::move(name)) {
    if (name_.empty()) {
        throw DomainError("measurement labels must be nonempty");
    }
}

LabelSet make_label_set(std::vector<MeasurementLabel> labels) {
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
}

bool is_subset(std::span<const MeasurementLabel> inner, std::span<const MeasurementLabel> outer) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

LabelSet set_intersection(std::span<const MeasurementLabel> a, std::span<const MeasurementLabel> b) {
    LabelSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::string join_labels(std::span<const MeasurementLabel> labels, const std::string &sep) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += sep;
        out += labels[i].str();
    }
    return out;
}

Context::Context(std::vector<MeasurementLabel> members) : members_(make_label_set(std::move(members))) {
    if (members_.empty()) {
        throw DomainError("contexts must be nonempty");
    }
}

bool Context::contains(const MeasurementLabel &label) const {
    return std::binary_search(members_.begin(), members_.end(), label);
}

MeasurementScenario::MeasurementScenario(std::vector<MeasurementLabel> measurements,
                                         std::vector<Context> cover, Outcome outcome_count,
                                         OutcomeRing ring)
    : measurements_(make_label_set(std::move(measurements))),
      cover_(std::move(cover)),
      outcome_count_(outcome_count),
      ring_(ring) {
    std::sort(cover_.begin(), cover_.end());
    cover_.erase(std::unique(cover_.begin(), cover_.end()), cover_.end());
    if (outcome_count_ == 0) {
        throw DomainError("a scenario needs at least one outcome");
    }
    if (ring_ == OutcomeRing::Z2 && outcome_count_ != 2) {
        throw DomainError("the Z2 ring flag requires exactly two outcomes");
    }
}

MeasurementScenario MeasurementScenario::from_cover(std::vector<Context> cover, Outcome outcome_count,
                                                    OutcomeRing ring) {
    std::vector<MeasurementLabel> all;
    for (const auto &c : cover) {
        all.insert(all.end(), c.members().begin(), c.members().end());
    }
    return MeasurementScenario(std::move(all), std::move(cover), outcome_count, ring);
}

std::size_t MeasurementScenario::context_index(const Context &context) const {
    auto it = std::lower_bound(cover_.begin(), cover_.end(), context);
    if (it == cover_.end() || *it != context) return cover_.size();
    return static_cast<std::size_t>(it - cover_.begin());
}

std::vector<ScenarioViolation> validate_scenario(const MeasurementScenario &scenario) {
    using Kind = ScenarioViolation::Kind;
    std::vector<ScenarioViolation> out;
    const auto &cover = scenario.cover();

    std::set<MeasurementLabel> covered;
    for (const auto &c : cover) {
        for (const auto &label : c.members()) {
            covered.insert(label);
            if (!std::binary_search(scenario.measurements().begin(), scenario.measurements().end(),
                                    label)) {
                out.push_back({Kind::UnknownLabel,
                               {label.str(), c.str()},
                               "context {" + c.str() + "} uses unknown measurement " + label.str()});
            }
        }
    }
    for (const auto &label : scenario.measurements()) {
        if (!covered.count(label)) {
            out.push_back({Kind::Uncovered, {label.str()},
                           "measurement " + label.str() + " is in no context"});
        }
    }
    for (const auto &small : cover) {
        for (const auto &large : cover) {
            if (small.size() < large.size() && is_subset(small.members(), large.members())) {
                out.push_back({Kind::NotAntichain,
                               {small.str(), large.str()},
                               "context {" + small.str() + "} is a proper subset of {" + large.str() + "}"});
            }
        }
    }
    return out;
}

Assignment::Assignment(std::vector<MeasurementLabel> domain, std::vector<Outcome> values) {
    if (domain.size() != values.size()) {
        throw DomainError("assignment domain and values differ in length");
    }
    std::vector<std::size_t> order(domain.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return domain[a] < domain[b]; });
    domain_.reserve(domain.size());
    values_.reserve(values.size());
    for (std::size_t i : order) {
        if (!domain_.empty() && domain_.back() == domain[i]) {
            throw DomainError("assignment assigns " + domain[i].str() + " twice");
        }
        domain_.push_back(std::move(domain[i]));
        values_.push_back(values[i]);
    }
}

Outcome Assignment::at(const MeasurementLabel &label) const {
    auto it = std::lower_bound(domain_.begin(), domain_.end(), label);
    if (it == domain_.end() || *it != label) {
        throw DomainError("assignment does not define " + label.str());
    }
    return values_[static_cast<std::size_t>(it - domain_.begin())];
}

std::vector<std::size_t> positions_in(std::span<const MeasurementLabel> sub,
                                      std::span<const MeasurementLabel> super) {
    std::vector<std::size_t> out;
    out.reserve(sub.size());
    for (const auto &label : sub) {
        auto it = std::lower_bound(super.begin(), super.end(), label);
        if (it == super.end() || *it != label) {
            throw DomainError(label.str() + " is outside the domain {" + join_labels(super) + "}");
        }
        out.push_back(static_cast<std::size_t>(it - super.begin()));
    }
    return out;
}

Assignment restrict(const Assignment &s, std::vector<MeasurementLabel> target) {
    LabelSet domain = make_label_set(std::move(target));
    if (!is_subset(domain, s.domain())) {
        throw DomainError("cannot restrict an assignment on {" + join_labels(s.domain()) + "} to {" +
                          join_labels(domain) + "}");
    }
    std::vector<Outcome> values;
    values.reserve(domain.size());
    for (std::size_t p : positions_in(domain, s.domain())) values.push_back(s.values()[p]);
    return Assignment(std::move(domain), std::move(values));
}

std::size_t assignment_count(std::size_t domain_size, Outcome outcome_count) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < domain_size; ++i) {
        if (outcome_count != 0 && count > (std::numeric_limits<std::size_t>::max() >> 1) / outcome_count) {
            throw SizeError("too many assignments to enumerate");
        }
        count *= outcome_count;
    }
    return count;
}

std::size_t assignment_index(std::span<const Outcome> values, Outcome outcome_count) {
    std::size_t index = 0;
    for (Outcome v : values) {
        if (v >= outcome_count) {
            throw DomainError("outcome " + std::to_string(v) + " outside 0.." +
                              std::to_string(outcome_count - 1));
        }
        index = index * outcome_count + v;
    }
    return index;
}

std::size_t assignment_index(const Assignment &s, Outcome outcome_count) {
    return assignment_index(s.values(), outcome_count);
}

Assignment assignment_at(const LabelSet &domain, Outcome outcome_count, std::size_t index) {
    std::vector<Outcome> values(domain.size());
    for (std::size_t i = domain.size(); i-- > 0;) {
        values[i] = static_cast<Outcome>(index % outcome_count);
        index /= outcome_count;
    }
    return Assignment(domain, std::move(values));
}

std::vector<Assignment> enumerate_assignments(std::vector<MeasurementLabel> domain, Outcome outcome_count) {
    LabelSet labels = make_label_set(std::move(domain));
    std::size_t count = assignment_count(labels.size(), outcome_count);
    std::vector<Assignment> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(assignment_at(labels, outcome_count, i));
    return out;
}

std::string outcome_string(const Assignment &s) {
    bool wide = std::any_of(s.values().begin(), s.values().end(), [](Outcome v) { return v > 9; });
    std::string out;
    for (std::size_t i = 0; i < s.values().size(); ++i) {
        if (wide && i) out += ',';
        out += std::to_string(s.values()[i]);
    }
    return out;
}

Assignment parse_outcome_string(const LabelSet &domain, const std::string &text, Outcome outcome_count) {
    std::vector<Outcome> values;
    if (text.find(',') != std::string::npos) {
        std::size_t start = 0;
        while (true) {
            auto comma = text.find(',', start);
            std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
                throw ParseError("malformed outcome string '" + text + "'");
            }
            values.push_back(static_cast<Outcome>(std::stoul(part)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    } else {
        for (char ch : text) {
            if (ch < '0' || ch > '9') throw ParseError("malformed outcome string '" + text + "'");
            values.push_back(static_cast<Outcome>(ch - '0'));
        }
    }
    if (values.size() != domain.size()) {
        throw ParseError("outcome string '" + text + "' does not match {" + join_labels(domain) + "}");
    }
    for (Outcome v : values) {
        if (v >= outcome_count) throw ParseError("outcome out of range in '" + text + "'");
    }
    return Assignment(domain, std::move(values));
}

}  // namespace sheafctx
