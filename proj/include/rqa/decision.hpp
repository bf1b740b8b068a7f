#pragma once

// Decision support: score operators by cognitive load and automation
// complexity, combine with expert attribute priorities and produce a
// budgeted automate-vs-manual QA plan.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rqa/errors.hpp"
#include "rqa/operators.hpp"
#include "rqa/taxonomy.hpp"

namespace rqa::decision {

using operators::ContextScope;
using operators::LinguisticLevel;
using operators::OperatorDescriptor;

struct CognitiveLoadScore {
    int value = 1;  // 1..6
    bool domain_knowledge = false;
    ContextScope scope = ContextScope::Local;
};

struct AutomationComplexity {
    int value = 1;  // Statistical=1 .. Semantic=4
};

enum class AccuracyProvenance { Measured, Assumed };

struct AccuracyEstimate {
    double precision = 0.75;
    double recall = 0.75;
    AccuracyProvenance provenance = AccuracyProvenance::Assumed;

    double f1() const {
        if (precision + recall == 0.0) return 0.0;
        return 2.0 * precision * recall / (precision + recall);
    }
};

// Local=1, Regional=2, Global=3; +3 when domain knowledge is required.
inline CognitiveLoadScore score_cognitive_load(const OperatorDescriptor& desc) {
    int scope_points = 1;
    switch (desc.context_scope) {
        case ContextScope::Local: scope_points = 1; break;
        case ContextScope::Regional: scope_points = 2; break;
        case ContextScope::Global: scope_points = 3; break;
    }
    return {scope_points + (desc.needs_domain_knowledge ? 3 : 0), desc.needs_domain_knowledge,
            desc.context_scope};
}

inline AutomationComplexity score_automation_complexity(const OperatorDescriptor& desc) {
    switch (desc.linguistic_level) {
        case LinguisticLevel::Statistical: return {1};
        case LinguisticLevel::Lexical: return {2};
        case LinguisticLevel::Syntactic: return {3};
        case LinguisticLevel::Semantic: return {4};
    }
    return {4};
}

enum class PlanDecision { Automate, Manual, Skip };

inline std::string to_string(PlanDecision d) {
    switch (d) {
        case PlanDecision::Automate: return "Automate";
        case PlanDecision::Manual: return "Manual";
        case PlanDecision::Skip: return "Skip";
    }
    return "?";
}

struct PlanItem {
    std::string op_id;
    PlanDecision decision = PlanDecision::Manual;
    double priority_score = 0.0;
    double cost = 0.0;
    int cognitive_load = 1;
    std::string rationale;
};

struct QAPlan {
    std::vector<PlanItem> items;  // sorted by priority_score desc, op_id asc
    double budget = 0.0;
    double budget_used = 0.0;
};

struct PlanOptions {
    double damping = 0.5;
    int manual_load_threshold = 4;  // above this, manual review is infeasible
    double assumed_f1_precision = 0.75;
};

// Greedy knapsack by priority per unit cost. Operators left outside the
// budget fall back to manual review unless their cognitive load exceeds the
// feasibility threshold.
inline QAPlan build_plan(const std::vector<OperatorDescriptor>& catalog,
                         const taxonomy::Ranking& ranking, const taxonomy::QualityModel& model,
                         double budget,
                         const std::map<std::string, AccuracyEstimate>& accuracy = {},
                         const PlanOptions& options = {}) {
    auto weights = taxonomy::effective_weights(ranking, model, options.damping);

    struct Scored {
        const OperatorDescriptor* desc;
        double priority;
        double cost;
        double weight;
        AccuracyEstimate acc;
        int load;
    };
    std::vector<Scored> scored;
    for (const auto& desc : catalog) {
        if (desc.attribute_id.empty()) continue;  // unmapped external operators
        auto w = weights.find(desc.attribute_id);
        if (w == weights.end()) throw UnknownAttribute(desc.attribute_id);
        AccuracyEstimate acc{options.assumed_f1_precision, options.assumed_f1_precision,
                             AccuracyProvenance::Assumed};
        if (auto it = accuracy.find(desc.op_id); it != accuracy.end()) acc = it->second;
        double cost = static_cast<double>(score_automation_complexity(desc).value);
        scored.push_back({&desc, w->second * acc.f1(), cost, w->second, acc,
                          score_cognitive_load(desc).value});
    }

    // greedy order: score density desc, op_id asc
    std::vector<std::size_t> order(scored.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        double da = scored[a].priority / scored[a].cost;
        double db = scored[b].priority / scored[b].cost;
        if (da != db) return da > db;
        return scored[a].desc->op_id < scored[b].desc->op_id;
    });

    QAPlan plan;
    plan.budget = budget;
    std::map<std::string, PlanDecision> decisions;
    for (auto idx : order) {
        if (plan.budget_used + scored[idx].cost <= budget) {
            decisions[scored[idx].desc->op_id] = PlanDecision::Automate;
            plan.budget_used += scored[idx].cost;
        }
    }

    for (const auto& s : scored) {
        PlanItem item;
        item.op_id = s.desc->op_id;
        item.priority_score = s.priority;
        item.cost = s.cost;
        item.cognitive_load = s.load;
        auto it = decisions.find(s.desc->op_id);
        if (it != decisions.end()) {
            item.decision = PlanDecision::Automate;
        } else if (s.load <= options.manual_load_threshold) {
            item.decision = PlanDecision::Manual;
        } else {
            item.decision = PlanDecision::Skip;
        }
        char w[32], f[32];
        std::snprintf(w, sizeof w, "%.2f", s.weight);
        std::snprintf(f, sizeof f, "%.2f", s.acc.f1());
        item.rationale = "attribute " + s.desc->attribute_id + " (effective weight " + w +
                         "), F1 " + f +
                         (s.acc.provenance == AccuracyProvenance::Measured ? " measured"
                                                                           : " assumed") +
                         ", automation cost " + std::to_string(static_cast<int>(s.cost)) +
                         ", cognitive load " + std::to_string(s.load);
        if (item.decision == PlanDecision::Skip)
            item.rationale += "; exceeds manual load threshold";
        plan.items.push_back(std::move(item));
    }

    std::sort(plan.items.begin(), plan.items.end(), [](const PlanItem& a, const PlanItem& b) {
        if (a.priority_score != b.priority_score) return a.priority_score > b.priority_score;
        return a.op_id < b.op_id;
    });
    return plan;
}

inline nlohmann::json to_json(const QAPlan& plan) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& i : plan.items) {
        items.push_back({{"op_id", i.op_id},
                         {"decision", to_string(i.decision)},
                         {"priority_score", i.priority_score},
                         {"cost", i.cost},
                         {"cognitive_load", i.cognitive_load},
                         {"rationale", i.rationale}});
    }
    return {{"items", items}, {"budget", plan.budget}, {"budget_used", plan.budget_used}};
}

}  // namespace rqa::decision
