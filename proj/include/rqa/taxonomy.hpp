#pragma once

// Conceptual level of the taxonomy: quality attributes, their signed
// influence graph, cumulative-voting aggregation and ranking-vs-graph
// conflict diagnostics.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rqa/errors.hpp"

namespace rqa::taxonomy {

struct QualityAttribute {
    std::string id;  // lowercase slug
    std::string name;
    std::string definition;
};

enum class EdgeSign { Positive, Negative };

struct InfluenceEdge {
    std::string source;
    std::string target;
    EdgeSign sign = EdgeSign::Positive;

    bool operator==(const InfluenceEdge&) const = default;
};

struct Goal {
    std::string id;
    std::string description;
    std::vector<std::string> attribute_ids;
};

struct QualityModel {
    std::vector<QualityAttribute> attributes;
    std::vector<InfluenceEdge> edges;
    std::vector<Goal> goals;

    bool has_attribute(const std::string& id) const {
        return std::any_of(attributes.begin(), attributes.end(),
                           [&](const auto& a) { return a.id == id; });
    }
};

struct Ballot {
    std::string voter_id;
    std::map<std::string, int> points;  // attribute id -> non-negative points
};

struct RankEntry {
    std::string attribute_id;
    long total = 0;
    int position = 1;  // 1-based, contiguous

    bool operator==(const RankEntry&) const = default;
};

using Ranking = std::vector<RankEntry>;

struct Conflict {
    std::string source;
    std::string target;
    EdgeSign sign = EdgeSign::Positive;
    int source_position = 0;
    int target_position = 0;

    bool operator==(const Conflict&) const = default;
};

namespace detail {

inline std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

// Model file format: sections of `key = value` lines introduced by
// [attribute], [edge] or [goal] headers. `#` starts a comment line.
inline QualityModel load_quality_model(const std::string& text) {
    QualityModel model;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::map<std::string, std::string> fields;

    auto flush = [&]() {
        if (section.empty()) return;
        if (section == "attribute") {
            QualityAttribute a{fields["id"], fields["name"], fields["definition"]};
            if (a.id.empty()) throw SchemaError("attribute entry missing id");
            if (model.has_attribute(a.id)) throw DuplicateAttribute(a.id);
            if (a.name.empty()) a.name = a.id;
            model.attributes.push_back(std::move(a));
        } else if (section == "edge") {
            InfluenceEdge e;
            e.source = fields["source"];
            e.target = fields["target"];
            std::string sign = fields["sign"];
            if (sign == "+") e.sign = EdgeSign::Positive;
            else if (sign == "-") e.sign = EdgeSign::Negative;
            else throw SchemaError("edge sign must be '+' or '-', got '" + sign + "'");
            if (e.source == e.target) throw SelfLoop(e.source);
            model.edges.push_back(std::move(e));
        } else if (section == "goal") {
            Goal g;
            g.id = fields["id"];
            g.description = fields["description"];
            std::istringstream attrs(fields["attributes"]);
            std::string a;
            while (std::getline(attrs, a, ',')) {
                a = detail::strip(a);
                if (!a.empty()) g.attribute_ids.push_back(a);
            }
            model.goals.push_back(std::move(g));
        } else {
            throw SchemaError("unknown section [" + section + "]");
        }
        fields.clear();
    };

    while (std::getline(in, line)) {
        std::string t = detail::strip(line);
        if (t.empty() || t.front() == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            flush();
            section = t.substr(1, t.size() - 2);
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) throw SchemaError("expected 'key = value': '" + t + "'");
        fields[detail::strip(t.substr(0, eq))] = detail::strip(t.substr(eq + 1));
    }
    flush();

    for (const auto& e : model.edges) {
        if (!model.has_attribute(e.source)) throw UnknownAttribute(e.source);
        if (!model.has_attribute(e.target)) throw UnknownAttribute(e.target);
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& e : model.edges)
        if (!seen.insert({e.source, e.target}).second)
            throw SchemaError("duplicate edge " + e.source + " -> " + e.target);
    for (const auto& g : model.goals)
        for (const auto& a : g.attribute_ids)
            if (!model.has_attribute(a)) throw UnknownAttribute(a + " (goal " + g.id + ")");
    return model;
}

// Attributes and edges attested in prose; everything else in the published
// relationship figure is user-supplied configuration.
inline const char* seed_quality_model_text() {
    return R"(# Seed quality model: prose-attested attributes and influence edges.

[attribute]
id = atomic
name = Atomic
definition = The requirement states exactly one need.

[attribute]
id = design_independent
name = Design independent
definition = The requirement does not prescribe a specific design or implementation.

[attribute]
id = traceable
name = Traceable
definition = The origin and dependents of the requirement can be followed.

[attribute]
id = precise
name = Precise
definition = The requirement uses exact values and terms.

[attribute]
id = unambiguous
name = Unambiguous
definition = The requirement is interpretable in a unique way.

[attribute]
id = understandable
name = Understandable
definition = The requirement is easily comprehended by its readers.

[attribute]
id = verifiable
name = Verifiable
definition = Fulfilment of the requirement can be checked on the product.

[attribute]
id = complete
name = Complete
definition = The requirement needs no further amplification.

[attribute]
id = consistent
name = Consistent
definition = The requirement does not contradict other requirements.

[attribute]
id = correct
name = Correct
definition = The requirement describes an actual need.

[attribute]
id = non_redundant
name = Non-redundant
definition = The requirement is not a repetition of another requirement.

[attribute]
id = organized
name = Organized
definition = The specification is structured for easy navigation.

[edge]
source = atomic
target = design_independent
sign = +

[edge]
source = atomic
target = traceable
sign = +

[edge]
source = atomic
target = precise
sign = +

[edge]
source = unambiguous
target = understandable
sign = -

[edge]
source = design_independent
target = verifiable
sign = +
)";
}

inline QualityModel seed_quality_model() { return load_quality_model(seed_quality_model_text()); }

// Per-attribute point sums across ballots, sorted descending with ties
// broken by attribute id. Attributes voted zero points still appear.
inline Ranking aggregate_votes(const std::vector<Ballot>& ballots, int total = 100) {
    if (ballots.empty()) throw NoBallots("at least one ballot is required");
    std::map<std::string, long> sums;
    for (const auto& b : ballots) {
        long s = 0;
        for (const auto& [attr, pts] : b.points) {
            if (pts < 0) throw BadBallotSum(b.voter_id + ": negative points for " + attr);
            s += pts;
            sums[attr];  // ensure zero-point attributes are ranked
        }
        if (s != total)
            throw BadBallotSum(b.voter_id + ": ballot sums to " + std::to_string(s) +
                               ", expected " + std::to_string(total));
        for (const auto& [attr, pts] : b.points) sums[attr] += pts;
    }
    std::vector<RankEntry> ranking;
    ranking.reserve(sums.size());
    for (const auto& [attr, s] : sums) ranking.push_back({attr, s, 0});
    std::sort(ranking.begin(), ranking.end(), [](const RankEntry& a, const RankEntry& b) {
        if (a.total != b.total) return a.total > b.total;
        return a.attribute_id < b.attribute_id;
    });
    for (std::size_t i = 0; i < ranking.size(); ++i) ranking[i].position = static_cast<int>(i + 1);
    return ranking;
}

// One-hop influence propagation:
//   eff(a) = points(a) + damping * sum of points over positive out-edges
//                      - damping * sum of points over negative out-edges
// floored at zero. Transitive propagation is deliberately not applied.
inline std::map<std::string, double> effective_weights(const Ranking& ranking,
                                                       const QualityModel& model,
                                                       double damping = 0.5) {
    std::map<std::string, double> points;
    for (const auto& e : ranking) points[e.attribute_id] = static_cast<double>(e.total);
    for (const auto& a : model.attributes) points.try_emplace(a.id, 0.0);

    std::map<std::string, double> eff = points;
    for (const auto& e : model.edges) {
        auto it = points.find(e.target);
        double target_pts = it == points.end() ? 0.0 : it->second;
        double delta = damping * target_pts;
        eff[e.source] += e.sign == EdgeSign::Positive ? delta : -delta;
    }
    for (auto& [id, v] : eff) v = std::max(0.0, v);
    return eff;
}

// A positive edge whose target the experts rank in the top-k while ranking
// its source in the bottom-k marks a likely overlooked enabler.
inline std::vector<Conflict> detect_ranking_conflicts(const Ranking& ranking,
                                                      const QualityModel& model, int k = 5) {
    std::map<std::string, int> position;
    for (const auto& e : ranking) position[e.attribute_id] = e.position;
    const int n = static_cast<int>(ranking.size());

    std::vector<Conflict> out;
    for (const auto& e : model.edges) {
        if (e.sign != EdgeSign::Positive) continue;
        auto src = position.find(e.source);
        auto tgt = position.find(e.target);
        if (src == position.end() || tgt == position.end()) continue;
        bool target_top = tgt->second <= k;
        bool source_bottom = src->second > n - k;
        if (target_top && source_bottom)
            out.push_back({e.source, e.target, e.sign, src->second, tgt->second});
    }
    std::sort(out.begin(), out.end(), [](const Conflict& a, const Conflict& b) {
        return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    return out;
}

// Ballot CSV: `voter_id,attribute_id,points`, one row per allocation.
inline std::vector<Ballot> parse_ballots_csv(const std::string& text) {
    std::map<std::string, Ballot> by_voter;
    std::vector<std::string> order;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = detail::strip(line);
        if (t.empty() || t.front() == '#') continue;
        std::istringstream row(t);
        std::string voter, attr, pts;
        if (!std::getline(row, voter, ',') || !std::getline(row, attr, ',') ||
            !std::getline(row, pts))
            throw SchemaError("ballot row needs voter_id,attribute_id,points: '" + t + "'");
        voter = detail::strip(voter);
        attr = detail::strip(attr);
        int p = 0;
        try {
            p = std::stoi(detail::strip(pts));
        } catch (const std::exception&) {
            throw SchemaError("ballot points must be an integer: '" + t + "'");
        }
        if (!by_voter.count(voter)) order.push_back(voter);
        auto& b = by_voter[voter];
        b.voter_id = voter;
        b.points[attr] += p;
    }
    std::vector<Ballot> ballots;
    for (const auto& v : order) ballots.push_back(by_voter[v]);
    return ballots;
}

}  // namespace rqa::taxonomy
