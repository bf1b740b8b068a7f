#pragma once

// Accuracy measurement by defect injection: seed known violations into a
// clean document, run the operators, and score precision/recall against the
// injection log. Also computes inter-operator correlation of finding counts.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rqa/corpus.hpp"
#include "rqa/errors.hpp"
#include "rqa/operators.hpp"

namespace rqa::evalharness {

using corpus::RequirementsSpec;
using operators::Finding;
using operators::OperatorSettings;

enum class DefectKind {
    InsertAmbiguousAdverb,
    DuplicateRequirement,
    BreakNumbering,
    MergeRequirements,
    InsertBareNumeral,
    InsertDate,
    SwapSynonym,
};

inline std::string to_string(DefectKind k) {
    switch (k) {
        case DefectKind::InsertAmbiguousAdverb: return "InsertAmbiguousAdverb";
        case DefectKind::DuplicateRequirement: return "DuplicateRequirement";
        case DefectKind::BreakNumbering: return "BreakNumbering";
        case DefectKind::MergeRequirements: return "MergeRequirements";
        case DefectKind::InsertBareNumeral: return "InsertBareNumeral";
        case DefectKind::InsertDate: return "InsertDate";
        case DefectKind::SwapSynonym: return "SwapSynonym";
    }
    return "?";
}

inline DefectKind defect_kind_from(const std::string& s) {
    for (auto k : {DefectKind::InsertAmbiguousAdverb, DefectKind::DuplicateRequirement,
                   DefectKind::BreakNumbering, DefectKind::MergeRequirements,
                   DefectKind::InsertBareNumeral, DefectKind::InsertDate, DefectKind::SwapSynonym})
        if (to_string(k) == s) return k;
    throw SchemaError("unknown defect kind '" + s + "'");
}

// Operator whose findings the injected defect must trigger.
inline std::string targeted_operator(DefectKind k) {
    switch (k) {
        case DefectKind::InsertAmbiguousAdverb: return "op_ambiguous_adverbs";
        case DefectKind::DuplicateRequirement: return "op_redundancy";
        case DefectKind::BreakNumbering: return "op_numbering";
        case DefectKind::MergeRequirements: return "op_atomicity";
        case DefectKind::InsertBareNumeral: return "op_bare_numerals";
        case DefectKind::InsertDate: return "op_time_refs";
        case DefectKind::SwapSynonym: return "op_term_consistency";
    }
    return "?";
}

struct DefectSpec {
    DefectKind kind = DefectKind::InsertAmbiguousAdverb;
    int count = 1;
    std::uint64_t seed = 0;
};

struct TruthEntry {
    DefectKind kind;
    std::string doc_id;
    std::vector<std::string> req_ids;
    std::string expected_op;
};

using GroundTruth = std::vector<TruthEntry>;

namespace detail {

// sample `count` distinct indices from [0, n) without replacement
inline std::vector<std::size_t> sample_indices(std::size_t n, int count, std::mt19937_64& rng) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    for (std::size_t i = 0; i + 1 < all.size(); ++i) {
        std::uniform_int_distribution<std::size_t> d(i, all.size() - 1);
        std::swap(all[i], all[d(rng)]);
    }
    all.resize(static_cast<std::size_t>(count));
    return all;
}

inline void insert_before_trailing_period(std::string& text, const std::string& addition) {
    if (!text.empty() && text.back() == '.')
        text.insert(text.size() - 1, addition);
    else
        text += addition;
}

inline int modal_count(const std::string& text) {
    auto tokens = lingo::tokenize(text);
    auto tags = lingo::pos_tag(tokens);
    return static_cast<int>(std::count(tags.begin(), tags.end(), lingo::PosTag::MODAL));
}

}  // namespace detail

struct InjectionResult {
    RequirementsSpec spec;
    GroundTruth truth;
};

// Deterministic for (spec, defects, seeds). The input must be clean with
// respect to every targeted operator, so the injection log is the complete
// ground truth for those operators on the mutated document.
inline InjectionResult inject_defects(const RequirementsSpec& clean,
                                      const std::vector<DefectSpec>& defects,
                                      const OperatorSettings& settings = {}) {
    std::set<std::string> targeted;
    for (const auto& d : defects)
        if (d.count > 0) targeted.insert(targeted_operator(d.kind));
    for (const auto& op : targeted)
        if (!operators::run_operator(op, clean, settings).empty())
            throw NotClean(op + " already reports findings on " + clean.doc_id);

    RequirementsSpec spec = clean;
    GroundTruth truth;

    for (const auto& d : defects) {
        if (d.count <= 0) continue;
        std::mt19937_64 rng(d.seed);
        auto& reqs = spec.requirements;

        switch (d.kind) {
            case DefectKind::InsertAmbiguousAdverb: {
                if (static_cast<int>(reqs.size()) < d.count)
                    throw InsufficientSites(to_string(d.kind));
                std::vector<std::string> words;
                for (const auto& w : settings.ambiguous_adverbs)
                    if (w.find(' ') == std::string::npos) words.push_back(w);
                for (auto i : detail::sample_indices(reqs.size(), d.count, rng)) {
                    const std::string& word = words[rng() % words.size()];
                    auto tokens = lingo::tokenize(reqs[i].text);
                    auto tags = lingo::pos_tag(tokens);
                    bool inserted = false;
                    for (std::size_t t = 0; t < tokens.size(); ++t) {
                        if (tags[t] == lingo::PosTag::MODAL) {
                            reqs[i].text.insert(tokens[t].span.end, " " + word);
                            inserted = true;
                            break;
                        }
                    }
                    if (!inserted)
                        detail::insert_before_trailing_period(reqs[i].text, " " + word);
                    truth.push_back({d.kind, spec.doc_id, {reqs[i].req_id},
                                     targeted_operator(d.kind)});
                }
                break;
            }
            case DefectKind::InsertBareNumeral: {
                if (static_cast<int>(reqs.size()) < d.count)
                    throw InsufficientSites(to_string(d.kind));
                for (auto i : detail::sample_indices(reqs.size(), d.count, rng)) {
                    int n = 2 + static_cast<int>(rng() % 8);  // 2..9
                    detail::insert_before_trailing_period(
                        reqs[i].text, " using " + std::to_string(n) + " fasteners");
                    truth.push_back({d.kind, spec.doc_id, {reqs[i].req_id},
                                     targeted_operator(d.kind)});
                }
                break;
            }
            case DefectKind::InsertDate: {
                if (static_cast<int>(reqs.size()) < d.count)
                    throw InsufficientSites(to_string(d.kind));
                for (auto i : detail::sample_indices(reqs.size(), d.count, rng)) {
                    int month = 1 + static_cast<int>(rng() % 12);
                    int day = 10 + static_cast<int>(rng() % 18);  // 10..27
                    char date[16];
                    std::snprintf(date, sizeof date, "2024-%02d-%02d", month, day);
                    detail::insert_before_trailing_period(reqs[i].text,
                                                          std::string(" by ") + date);
                    truth.push_back({d.kind, spec.doc_id, {reqs[i].req_id},
                                     targeted_operator(d.kind)});
                }
                break;
            }
            case DefectKind::BreakNumbering: {
                std::vector<corpus::CaptionKind> kinds;
                for (auto k : {corpus::CaptionKind::Figure, corpus::CaptionKind::Table,
                               corpus::CaptionKind::Illustration})
                    if (std::any_of(spec.captions.begin(), spec.captions.end(),
                                    [&](const auto& c) { return c.kind == k; }))
                        kinds.push_back(k);
                if (static_cast<int>(kinds.size()) < d.count)
                    throw InsufficientSites(to_string(d.kind));
                for (auto ki : detail::sample_indices(kinds.size(), d.count, rng)) {
                    auto kind = kinds[ki];
                    // bump the last caption of the kind, opening a single gap
                    for (auto it = spec.captions.rbegin(); it != spec.captions.rend(); ++it) {
                        if (it->kind != kind) continue;
                        it->number += 1;
                        truth.push_back({d.kind, spec.doc_id,
                                         {lingo::to_lower(corpus::caption_kind_name(kind)) + "-" +
                                          std::to_string(it->number)},
                                         targeted_operator(d.kind)});
                        break;
                    }
                }
                break;
            }
            case DefectKind::DuplicateRequirement: {
                if (static_cast<int>(reqs.size()) < d.count)
                    throw InsufficientSites(to_string(d.kind));
                for (auto i : detail::sample_indices(reqs.size(), d.count, rng)) {
                    corpus::Requirement copy = reqs[i];
                    copy.req_id = reqs[i].req_id + "-DUP";
                    // up to two seeded synonym substitutions keep the copy
                    // near-identical rather than byte-identical
                    int substitutions = 0;
                    for (const auto& group : settings.synonym_groups) {
                        if (substitutions >= 2 || group.size() < 2) continue;
                        for (const auto& term : group) {
                            auto pos = lingo::to_lower(copy.text).find(term);
                            if (pos == std::string::npos) continue;
                            std::string replacement = group[rng() % group.size()];
                            copy.text.replace(pos, term.size(), replacement);
                            ++substitutions;
                            break;
                        }
                    }
                    truth.push_back({d.kind, spec.doc_id, {reqs[i].req_id, copy.req_id},
                                     targeted_operator(d.kind)});
                    reqs.push_back(std::move(copy));
                }
                break;
            }
            case DefectKind::MergeRequirements: {
                std::vector<std::size_t> eligible;
                for (std::size_t i = 0; i < reqs.size(); ++i)
                    if (detail::modal_count(reqs[i].text) == 1) eligible.push_back(i);
                if (static_cast<int>(eligible.size()) < 2 * d.count)
                    throw InsufficientSites(to_string(d.kind));
                auto picks =
                    detail::sample_indices(eligible.size(), 2 * d.count, rng);
                std::vector<std::size_t> removed;
                for (int m = 0; m < d.count; ++m) {
                    std::size_t a = eligible[picks[2 * static_cast<std::size_t>(m)]];
                    std::size_t b = eligible[picks[2 * static_cast<std::size_t>(m) + 1]];
                    if (a > b) std::swap(a, b);
                    std::string joined = reqs[a].text;
                    if (!joined.empty() && joined.back() == '.') joined.pop_back();
                    joined += " and " + reqs[b].text;
                    reqs[a].text = std::move(joined);
                    truth.push_back({d.kind, spec.doc_id, {reqs[a].req_id},
                                     targeted_operator(d.kind)});
                    removed.push_back(b);
                }
                std::sort(removed.rbegin(), removed.rend());
                for (auto b : removed) reqs.erase(reqs.begin() + static_cast<long>(b));
                break;
            }
            case DefectKind::SwapSynonym: {
                // eligible: the requirement uses a group term that also occurs
                // in another requirement, so the swap creates an inconsistency
                struct Site {
                    std::size_t req;
                    std::size_t group;
                    std::string term;
                };
                std::vector<Site> sites;
                for (std::size_t g = 0; g < settings.synonym_groups.size(); ++g) {
                    const auto& group = settings.synonym_groups[g];
                    if (group.size() < 2) continue;
                    std::set<std::string> dict(group.begin(), group.end());
                    std::map<std::size_t, std::string> uses;
                    for (std::size_t i = 0; i < reqs.size(); ++i) {
                        auto matches = lingo::dict_match(lingo::tokenize(reqs[i].text), dict);
                        if (!matches.empty()) uses[i] = matches.front().phrase;
                    }
                    if (uses.size() < 2) continue;
                    for (const auto& [i, term] : uses) sites.push_back({i, g, term});
                }
                if (static_cast<int>(sites.size()) < d.count)
                    throw InsufficientSites(to_string(d.kind));
                for (auto si : detail::sample_indices(sites.size(), d.count, rng)) {
                    const auto& site = sites[si];
                    const auto& group = settings.synonym_groups[site.group];
                    std::string replacement = site.term;
                    while (replacement == site.term)
                        replacement = group[rng() % group.size()];
                    auto& text = reqs[site.req].text;
                    auto pos = lingo::to_lower(text).find(site.term);
                    if (pos != std::string::npos)
                        text.replace(pos, site.term.size(), replacement);
                    truth.push_back({d.kind, spec.doc_id, {reqs[site.req].req_id},
                                     targeted_operator(d.kind)});
                }
                break;
            }
        }
    }

    // re-render and re-parse so spans and prose offsets stay consistent
    for (auto& r : spec.requirements)
        std::replace(r.text.begin(), r.text.end(), '\n', ' ');
    InjectionResult result;
    result.spec = corpus::parse_reqspec(corpus::render_reqspec(spec), spec.doc_id);
    result.truth = std::move(truth);
    return result;
}

struct OpAccuracy {
    int true_positives = 0;
    int false_positives = 0;
    int false_negatives = 0;
    double precision = 1.0;
    double recall = 1.0;
    double f1 = 1.0;
};

struct AccuracyReport {
    std::map<std::string, OpAccuracy> per_op;
};

// A finding matches a truth entry when op_id and doc agree and their req_ids
// intersect; matching is one-to-one, greedy in finding order.
inline AccuracyReport score(const std::vector<Finding>& findings, const GroundTruth& truth) {
    AccuracyReport report;
    std::vector<bool> matched(truth.size(), false);
    for (const auto& f : findings) {
        auto& acc = report.per_op[f.op_id];
        bool hit = false;
        for (std::size_t t = 0; t < truth.size(); ++t) {
            if (matched[t] || truth[t].expected_op != f.op_id || truth[t].doc_id != f.doc_id)
                continue;
            bool intersect = false;
            for (const auto& id : f.req_ids)
                if (std::find(truth[t].req_ids.begin(), truth[t].req_ids.end(), id) !=
                    truth[t].req_ids.end())
                    intersect = true;
            if (!intersect) continue;
            matched[t] = true;
            hit = true;
            break;
        }
        if (hit) acc.true_positives++;
        else acc.false_positives++;
    }
    for (std::size_t t = 0; t < truth.size(); ++t)
        if (!matched[t]) report.per_op[truth[t].expected_op].false_negatives++;

    for (auto& [op, acc] : report.per_op) {
        int pd = acc.true_positives + acc.false_positives;
        int rd = acc.true_positives + acc.false_negatives;
        acc.precision = pd == 0 ? 1.0 : static_cast<double>(acc.true_positives) / pd;
        acc.recall = rd == 0 ? 1.0 : static_cast<double>(acc.true_positives) / rd;
        acc.f1 = acc.precision + acc.recall == 0.0
                     ? 0.0
                     : 2.0 * acc.precision * acc.recall / (acc.precision + acc.recall);
    }
    return report;
}

inline nlohmann::json to_json(const AccuracyReport& report) {
    nlohmann::json ops = nlohmann::json::object();
    for (const auto& [op, acc] : report.per_op) {
        ops[op] = {{"true_positives", acc.true_positives},
                   {"false_positives", acc.false_positives},
                   {"false_negatives", acc.false_negatives},
                   {"precision", acc.precision},
                   {"recall", acc.recall},
                   {"f1", acc.f1}};
    }
    return {{"ops", ops}};
}

// Pearson correlation of per-requirement finding counts. Operators with zero
// variance across the corpus are reported as absent.
struct CorrelationMatrix {
    std::vector<std::string> ops;  // only ops with variance > 0
    std::map<std::string, std::map<std::string, double>> values;
};

inline CorrelationMatrix correlate_operators(
    const std::vector<const RequirementsSpec*>& corpus, const std::vector<Finding>& findings,
    const std::vector<std::string>& ops) {
    std::vector<std::pair<std::string, std::string>> universe;  // (doc, req)
    std::map<std::pair<std::string, std::string>, std::size_t> index;
    for (const auto* spec : corpus)
        for (const auto& r : spec->requirements) {
            index[{spec->doc_id, r.req_id}] = universe.size();
            universe.push_back({spec->doc_id, r.req_id});
        }
    if (universe.size() < 2)
        throw CorpusTooSmall("correlation needs at least 2 requirements, got " +
                             std::to_string(universe.size()));

    std::map<std::string, std::vector<double>> counts;
    for (const auto& op : ops) counts[op] = std::vector<double>(universe.size(), 0.0);
    for (const auto& f : findings) {
        auto c = counts.find(f.op_id);
        if (c == counts.end()) continue;
        for (const auto& id : f.req_ids) {
            auto it = index.find({f.doc_id, id});
            if (it != index.end()) c->second[it->second] += 1.0;
        }
    }

    auto mean = [](const std::vector<double>& v) {
        double s = 0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };

    CorrelationMatrix matrix;
    std::map<std::string, double> means;
    for (const auto& [op, v] : counts) {
        double m = mean(v);
        double var = 0;
        for (double x : v) var += (x - m) * (x - m);
        if (var > 0) {
            matrix.ops.push_back(op);
            means[op] = m;
        }
    }
    for (const auto& a : matrix.ops) {
        for (const auto& b : matrix.ops) {
            const auto& va = counts[a];
            const auto& vb = counts[b];
            double cov = 0, sa = 0, sb = 0;
            for (std::size_t i = 0; i < va.size(); ++i) {
                double da = va[i] - means[a];
                double db = vb[i] - means[b];
                cov += da * db;
                sa += da * da;
                sb += db * db;
            }
            matrix.values[a][b] = cov / std::sqrt(sa * sb);
        }
    }
    return matrix;
}

inline nlohmann::json to_json(const CorrelationMatrix& m) {
    nlohmann::json values = nlohmann::json::object();
    for (const auto& [a, row] : m.values) {
        values[a] = nlohmann::json::object();
        for (const auto& [b, v] : row) values[a][b] = v;
    }
    return {{"ops", m.ops}, {"values", values}};
}

}  // namespace rqa::evalharness
