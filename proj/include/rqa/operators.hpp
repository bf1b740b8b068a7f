#pragma once

// Operational level: executable lint operators over a parsed requirements
// document. Each operator is linked to one quality attribute and tagged with
// the context scope it inspects and the linguistic level it needs.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rqa/corpus.hpp"
#include "rqa/errors.hpp"
#include "rqa/lingo.hpp"

namespace rqa::operators {

using corpus::RequirementsSpec;
using lingo::Span;

enum class ContextScope { Local, Regional, Global };
enum class LinguisticLevel { Statistical, Lexical, Syntactic, Semantic };
enum class Severity { Info, Warning, Violation };

inline std::string to_string(ContextScope s) {
    switch (s) {
        case ContextScope::Local: return "Local";
        case ContextScope::Regional: return "Regional";
        case ContextScope::Global: return "Global";
    }
    return "?";
}

inline std::string to_string(LinguisticLevel l) {
    switch (l) {
        case LinguisticLevel::Statistical: return "Statistical";
        case LinguisticLevel::Lexical: return "Lexical";
        case LinguisticLevel::Syntactic: return "Syntactic";
        case LinguisticLevel::Semantic: return "Semantic";
    }
    return "?";
}

inline std::string to_string(Severity s) {
    switch (s) {
        case Severity::Info: return "Info";
        case Severity::Warning: return "Warning";
        case Severity::Violation: return "Violation";
    }
    return "?";
}

struct OperatorDescriptor {
    std::string op_id;
    std::string name;
    std::string attribute_id;  // may be empty for externally configured ops
    ContextScope context_scope = ContextScope::Local;
    LinguisticLevel linguistic_level = LinguisticLevel::Lexical;
    bool needs_domain_knowledge = false;
    std::map<std::string, std::string> config;
};

struct Finding {
    std::string op_id;
    std::string doc_id;
    std::vector<std::string> req_ids;
    Span span;  // absolute offsets into the document source
    std::string message;
    std::string evidence;
    Severity severity = Severity::Warning;
};

inline nlohmann::json to_json(const Finding& f) {
    return {{"op_id", f.op_id},
            {"doc_id", f.doc_id},
            {"req_ids", f.req_ids},
            {"span", {f.span.start, f.span.end}},
            {"message", f.message},
            {"evidence", f.evidence},
            {"severity", to_string(f.severity)}};
}

// Runtime knobs shared by the operators. Defaults match the shipped seed
// data; everything is overridable from the CLI / config file.
struct OperatorSettings {
    std::set<std::string> ambiguous_adverbs = {
        "quickly", "easily", "significantly", "approximately", "roughly",
        "usually", "normally", "generally", "appropriately",
        "as appropriate", "if possible", "etc"};
    std::vector<std::vector<std::string>> synonym_groups = {{"user", "dispatcher", "operator"}};
    double redundancy_threshold = 0.6;
    int shingle_k = 3;
    std::uint64_t pair_budget = 1000000;  // above this, MinHash pre-filtering kicks in
    int minhash_hashes = 128;
    int minhash_bands = 32;  // 32 bands x 4 rows over 128 hashes
    std::uint64_t minhash_seed = 42;
    bool flag_durations = true;  // rule 1: also flag "within <n> <unit>" deadlines
};

namespace detail {

inline Span absolute(Span rel, std::size_t base) { return {base + rel.start, base + rel.end}; }

inline int requirement_index(const RequirementsSpec& spec, const std::string& req_id) {
    for (std::size_t i = 0; i < spec.requirements.size(); ++i)
        if (spec.requirements[i].req_id == req_id) return static_cast<int>(i);
    return static_cast<int>(spec.requirements.size());
}

}  // namespace detail

// Canonical order: position of the first referenced requirement, then span
// start, then op id. Applied after any parallel execution.
inline void canonical_sort(std::vector<Finding>& findings, const RequirementsSpec& spec) {
    std::sort(findings.begin(), findings.end(), [&](const Finding& a, const Finding& b) {
        int ia = a.req_ids.empty() ? -1 : detail::requirement_index(spec, a.req_ids.front());
        int ib = b.req_ids.empty() ? -1 : detail::requirement_index(spec, b.req_ids.front());
        if (ia != ib) return ia < ib;
        if (a.span.start != b.span.start) return a.span.start < b.span.start;
        if (a.op_id != b.op_id) return a.op_id < b.op_id;
        return a.message < b.message;
    });
}

// --- rule 1: no time references ---------------------------------------------

// Flags calendar dates, clock times and (optionally) relative deadlines in
// requirement text and prose. Documents titled "Schedule" are exempt.
inline std::vector<Finding> op_time_refs(const RequirementsSpec& spec,
                                         const OperatorSettings& settings = {}) {
    auto contains_schedule = [](const std::string& s) {
        return lingo::to_lower(s).find("schedule") != std::string::npos;
    };
    if (contains_schedule(spec.doc_id) ||
        (!spec.sections.empty() && contains_schedule(spec.sections.front().title)))
        return {};

    static const std::regex iso_date(R"((\d{4}-\d{2}-\d{2}))");
    static const std::regex dmy_date(
        R"((\d{1,2}(?:st|nd|rd|th)?\s+(?:of\s+)?(?:Jan(?:uary)?|Feb(?:ruary)?|Mar(?:ch)?|Apr(?:il)?|May|Jun(?:e)?|Jul(?:y)?|Aug(?:ust)?|Sep(?:tember)?|Oct(?:ober)?|Nov(?:ember)?|Dec(?:ember)?)\s+\d{4}))",
        std::regex::icase);
    static const std::regex slash_date(R"(\b(\d{1,2}/\d{1,2}/\d{2,4})\b)");
    static const std::regex clock(R"(\b(\d{1,2}:\d{2})\b)");
    static const std::regex duration(R"(\b(within\s+\d+\s+(?:day|week|month|year)s?)\b)",
                                     std::regex::icase);

    std::vector<Finding> findings;
    auto scan = [&](const std::string& text, std::size_t base, const std::string& ref_id) {
        auto add = [&](const std::regex& re, const char* what) {
            for (auto it = std::sregex_iterator(text.begin(), text.end(), re);
                 it != std::sregex_iterator(); ++it) {
                Finding f;
                f.op_id = "op_time_refs";
                f.doc_id = spec.doc_id;
                f.req_ids = {ref_id};
                f.span = detail::absolute(
                    {static_cast<std::size_t>(it->position(0)),
                     static_cast<std::size_t>(it->position(0) + it->length(0))},
                    base);
                f.message = std::string("time reference (") + what +
                            ") in technical text; refer to the Schedule document instead";
                f.evidence = it->str(0);
                f.severity = Severity::Violation;
                findings.push_back(std::move(f));
            }
        };
        add(iso_date, "date");
        add(dmy_date, "date");
        add(slash_date, "date");
        add(clock, "clock time");
        if (settings.flag_durations) add(duration, "relative deadline");
    };

    for (const auto& r : spec.requirements) scan(r.text, r.text_offset, r.req_id);
    for (const auto& p : spec.prose) {
        std::string ref = p.section_number.empty() ? "§0" : "§" + p.section_number;
        scan(p.text, p.span.start, ref);
    }
    return findings;
}

// --- rule 2: consecutive caption numbering -----------------------------------

// Per caption kind, numbers must run 1, 2, 3, ... in document order.
inline std::vector<Finding> op_numbering(const RequirementsSpec& spec,
                                         const OperatorSettings& = {}) {
    std::vector<Finding> findings;
    for (auto kind : {corpus::CaptionKind::Figure, corpus::CaptionKind::Table,
                      corpus::CaptionKind::Illustration}) {
        int expected = 1;
        for (const auto& c : spec.captions) {
            if (c.kind != kind) continue;
            if (c.number != expected) {
                std::string kind_name = corpus::caption_kind_name(kind);
                Finding f;
                f.op_id = "op_numbering";
                f.doc_id = spec.doc_id;
                f.req_ids = {lingo::to_lower(kind_name) + "-" + std::to_string(c.number)};
                f.span = c.span;
                f.message = kind_name + " numbering not consecutive: expected " +
                            std::to_string(expected) + ", found " + std::to_string(c.number);
                f.evidence = kind_name + " " + std::to_string(c.number);
                f.severity = Severity::Violation;
                findings.push_back(std::move(f));
            }
            expected = c.number + 1;
        }
    }
    return findings;
}

// --- rule 3: numerals 1-12 spelled out ---------------------------------------

namespace detail {

inline std::optional<int> small_integer(const lingo::Token& t) {
    if (t.kind != lingo::TokenKind::Number) return std::nullopt;
    if (t.text.find('.') != std::string::npos) return std::nullopt;
    if (t.text.size() > 2) return std::nullopt;
    int v = std::stoi(t.text);
    if (v < 1 || v > 12) return std::nullopt;
    return v;
}

inline bool flush(const lingo::Token& a, const lingo::Token& b) {
    return a.span.end == b.span.start;
}

}  // namespace detail

// Flags bare integers 1-12 unless written in the conforming "two (2)" form,
// part of an identifier or reference, or paired in a range with a value > 12.
inline std::vector<Finding> op_bare_numerals(const RequirementsSpec& spec,
                                             const OperatorSettings& = {}) {
    static const std::set<std::string> reference_words = {"figure", "table", "section",
                                                          "chapter", "illustration"};
    std::vector<Finding> findings;
    for (const auto& r : spec.requirements) {
        auto tokens = lingo::tokenize(r.text);
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            auto value = detail::small_integer(tokens[i]);
            if (!value) continue;

            // (a) conforming form: <number word> ( <digit> )
            if (i >= 2 && i + 1 < tokens.size() && tokens[i - 1].lower == "(" &&
                tokens[i + 1].lower == ")" &&
                tokens[i - 2].lower == lingo::lexicon::number_words()[*value - 1])
                continue;

            // (b) identifier or reference context
            auto identifier_side = [&](std::size_t punct, std::size_t other, bool punct_first) {
                const auto& p = tokens[punct];
                if (p.kind != lingo::TokenKind::Punct || (p.text != "-" && p.text != "."))
                    return false;
                bool flush_num = punct_first ? detail::flush(tokens[punct], tokens[i])
                                             : detail::flush(tokens[i], tokens[punct]);
                if (!flush_num) return false;
                if (other >= tokens.size()) return false;
                const auto& o = tokens[other];
                if (o.kind == lingo::TokenKind::Punct) return false;
                return punct_first ? detail::flush(o, tokens[punct])
                                   : detail::flush(tokens[punct], o);
            };
            bool identifier = false;
            if (i >= 2 && identifier_side(i - 1, i - 2, true)) identifier = true;
            if (!identifier && i + 2 < tokens.size() && identifier_side(i + 1, i + 2, false))
                identifier = true;
            if (!identifier && i >= 1 && tokens[i - 1].kind == lingo::TokenKind::Word &&
                reference_words.contains(tokens[i - 1].lower))
                identifier = true;
            if (identifier) continue;

            // (c) numeric range with a partner above 12
            auto range_partner_above_12 = [&](std::size_t a, std::size_t b) {
                if (b >= tokens.size()) return false;
                if (tokens[a].text != "-") return false;
                if (tokens[b].kind != lingo::TokenKind::Number) return false;
                try {
                    return std::stol(tokens[b].text) > 12;
                } catch (const std::exception&) {
                    return false;
                }
            };
            if (i + 2 < tokens.size() && range_partner_above_12(i + 1, i + 2)) continue;
            if (i >= 2 && range_partner_above_12(i - 1, i - 2)) continue;

            Finding f;
            f.op_id = "op_bare_numerals";
            f.doc_id = spec.doc_id;
            f.req_ids = {r.req_id};
            f.span = detail::absolute(tokens[i].span, r.text_offset);
            f.message = "numeral " + tokens[i].text + " should be written as \"" +
                        lingo::lexicon::number_words()[*value - 1] + " (" + tokens[i].text + ")\"";
            f.evidence = tokens[i].text;
            f.severity = Severity::Violation;
            findings.push_back(std::move(f));
        }
    }
    return findings;
}

// --- rule 4: consistent terminology ------------------------------------------

// One finding per synonym group whose members are used interchangeably
// across the document.
inline std::vector<Finding> op_term_consistency(const RequirementsSpec& spec,
                                                const OperatorSettings& settings = {}) {
    std::vector<Finding> findings;
    for (const auto& group : settings.synonym_groups) {
        if (group.size() < 2)
            throw ConfigError("synonym group needs at least 2 terms");
        std::set<std::string> dict(group.begin(), group.end());
        std::map<std::string, int> counts;
        std::vector<std::string> req_ids;
        Span first_span{0, 0};
        bool have_span = false;
        for (const auto& r : spec.requirements) {
            auto tokens = lingo::tokenize(r.text);
            for (const auto& m : lingo::dict_match(tokens, dict)) {
                counts[m.phrase]++;
                if (req_ids.empty() || req_ids.back() != r.req_id) req_ids.push_back(r.req_id);
                if (!have_span) {
                    first_span = detail::absolute(m.span, r.text_offset);
                    have_span = true;
                }
            }
        }
        if (counts.size() < 2) continue;
        std::string terms;
        for (const auto& [term, n] : counts) {
            if (!terms.empty()) terms += ", ";
            terms += term + ":" + std::to_string(n);
        }
        Finding f;
        f.op_id = "op_term_consistency";
        f.doc_id = spec.doc_id;
        f.req_ids = req_ids;
        f.span = first_span;
        f.message = "inconsistent terminology, synonym group used with " +
                    std::to_string(counts.size()) + " distinct terms: " + terms;
        f.evidence = terms;
        f.severity = Severity::Violation;
        findings.push_back(std::move(f));
    }
    return findings;
}

// --- rule 5: atomic requirements ----------------------------------------------

// A requirement is non-atomic when it holds two modal verbs, two modal
// sentences, or a conjunction that joins two verb phrases.
inline std::vector<Finding> op_atomicity(const RequirementsSpec& spec,
                                         const OperatorSettings& = {}) {
    std::vector<Finding> findings;
    for (const auto& r : spec.requirements) {
        auto tokens = lingo::tokenize(r.text);
        auto tags = lingo::pos_tag(tokens);

        int modal_count = 0;
        for (auto t : tags)
            if (t == lingo::PosTag::MODAL) ++modal_count;

        std::string reason;
        if (modal_count >= 2) {
            reason = "contains " + std::to_string(modal_count) + " modal verbs";
        } else {
            int modal_sentences = 0;
            for (const auto& s : lingo::split_sentences(r.text)) {
                bool has_modal = false;
                for (std::size_t i = 0; i < tokens.size(); ++i)
                    if (tags[i] == lingo::PosTag::MODAL && tokens[i].span.start >= s.start &&
                        tokens[i].span.end <= s.end)
                        has_modal = true;
                if (has_modal) ++modal_sentences;
            }
            if (modal_sentences >= 2) {
                reason = "contains " + std::to_string(modal_sentences) + " modal sentences";
            } else {
                // conjunction followed within 4 tokens by a verb, after a modal
                bool modal_seen = false;
                for (std::size_t i = 0; i < tokens.size() && reason.empty(); ++i) {
                    if (tags[i] == lingo::PosTag::MODAL) modal_seen = true;
                    if (!modal_seen || tags[i] != lingo::PosTag::CONJ) continue;
                    if (tokens[i].lower != "and" && tokens[i].lower != "or") continue;
                    for (std::size_t j = i + 1; j <= i + 4 && j < tokens.size(); ++j) {
                        if (tags[j] == lingo::PosTag::VERB) {
                            reason = "conjunction \"" + tokens[i].lower +
                                     "\" joins two verb phrases";
                            break;
                        }
                    }
                }
            }
        }
        if (reason.empty()) continue;
        Finding f;
        f.op_id = "op_atomicity";
        f.doc_id = spec.doc_id;
        f.req_ids = {r.req_id};
        f.span = {r.text_offset, r.text_offset + r.text.size()};
        f.message = "requirement is not atomic: " + reason +
                    "; split into separate requirements";
        f.evidence = reason;
        f.severity = Severity::Violation;
        findings.push_back(std::move(f));
    }
    return findings;
}

// --- ambiguous adverbs smell ---------------------------------------------------

inline std::vector<Finding> op_ambiguous_adverbs(const RequirementsSpec& spec,
                                                 const OperatorSettings& settings = {}) {
    std::vector<Finding> findings;
    for (const auto& r : spec.requirements) {
        auto tokens = lingo::tokenize(r.text);
        for (const auto& m : lingo::dict_match(tokens, settings.ambiguous_adverbs)) {
            Finding f;
            f.op_id = "op_ambiguous_adverbs";
            f.doc_id = spec.doc_id;
            f.req_ids = {r.req_id};
            f.span = detail::absolute(m.span, r.text_offset);
            f.message = "ambiguous term \"" + m.phrase + "\" leaves the requirement open to interpretation";
            f.evidence = m.phrase;
            f.severity = Severity::Warning;
            findings.push_back(std::move(f));
        }
    }
    return findings;
}

// --- redundancy smell -----------------------------------------------------------

namespace detail {

// LSH banding over MinHash signatures: candidate generation for large
// documents where the full pairwise scan would blow the pair budget.
inline std::set<std::pair<std::size_t, std::size_t>> lsh_candidates(
    const std::vector<std::optional<lingo::MinHashSignature>>& sigs, int bands) {
    std::set<std::pair<std::size_t, std::size_t>> candidates;
    if (sigs.empty()) return candidates;
    std::size_t sig_len = 0;
    for (const auto& s : sigs)
        if (s) sig_len = s->size();
    if (sig_len == 0) return candidates;
    std::size_t rows = std::max<std::size_t>(1, sig_len / static_cast<std::size_t>(bands));
    for (std::size_t band = 0; band * rows < sig_len; ++band) {
        std::map<std::uint64_t, std::vector<std::size_t>> buckets;
        for (std::size_t i = 0; i < sigs.size(); ++i) {
            if (!sigs[i]) continue;
            std::uint64_t h = 1469598103934665603ull;
            for (std::size_t r = band * rows; r < std::min(sig_len, (band + 1) * rows); ++r) {
                std::uint64_t v = (*sigs[i])[r];
                h = lingo::fnv1a(std::string_view(reinterpret_cast<const char*>(&v), sizeof v), h);
            }
            buckets[h].push_back(i);
        }
        for (const auto& [h, members] : buckets)
            for (std::size_t a = 0; a < members.size(); ++a)
                for (std::size_t b = a + 1; b < members.size(); ++b)
                    candidates.insert({members[a], members[b]});
    }
    return candidates;
}

}  // namespace detail

// Every unordered requirement pair with exact Jaccard >= threshold is
// reported once. Above the pair budget, MinHash + LSH pre-filters candidates
// at estimate >= threshold - 0.1 and exact Jaccard confirms.
inline std::vector<Finding> op_redundancy(const RequirementsSpec& spec,
                                          const OperatorSettings& settings = {}) {
    const double threshold = settings.redundancy_threshold;
    if (threshold <= 0.0 || threshold > 1.0)
        throw InvalidThreshold("redundancy threshold must be in (0, 1], got " +
                               std::to_string(threshold));
    const std::size_t n = spec.requirements.size();
    std::vector<lingo::ShingleSet> sets(n);
    for (std::size_t i = 0; i < n; ++i)
        sets[i] = lingo::shingles(lingo::tokenize(spec.requirements[i].text), settings.shingle_k);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const std::uint64_t total_pairs = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (total_pairs <= settings.pair_budget) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
    } else {
        std::vector<std::optional<lingo::MinHashSignature>> sigs(n);
        std::vector<std::size_t> empties;
        for (std::size_t i = 0; i < n; ++i) {
            if (sets[i].empty()) empties.push_back(i);
            else
                sigs[i] = lingo::minhash_signature(sets[i], settings.minhash_hashes,
                                                   settings.minhash_seed);
        }
        for (const auto& [a, b] : detail::lsh_candidates(sigs, settings.minhash_bands)) {
            if (lingo::minhash_estimate(*sigs[a], *sigs[b]) >= threshold - 0.1)
                pairs.push_back({a, b});
        }
        // requirements too short to shingle cannot be signed; compare exactly
        for (auto e : empties)
            for (std::size_t j = 0; j < n; ++j)
                if (j != e) pairs.push_back({std::min(e, j), std::max(e, j)});
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    }

    std::vector<Finding> findings;
    for (const auto& [i, j] : pairs) {
        double sim = lingo::jaccard(sets[i], sets[j]);
        if (sim < threshold) continue;
        const auto& a = spec.requirements[i];
        const auto& b = spec.requirements[j];
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", sim);
        Finding f;
        f.op_id = "op_redundancy";
        f.doc_id = spec.doc_id;
        f.req_ids = {a.req_id, b.req_id};
        f.span = {b.text_offset, b.text_offset + b.text.size()};
        f.message = "requirements " + a.req_id + " and " + b.req_id +
                    " are near-duplicates (similarity " + buf +
                    "); repeat by reference instead";
        f.evidence = buf;
        f.severity = Severity::Warning;
        findings.push_back(std::move(f));
    }
    return findings;
}

// --- registry ---------------------------------------------------------------------

using OperatorFn =
    std::function<std::vector<Finding>(const RequirementsSpec&, const OperatorSettings&)>;

struct RegisteredOperator {
    OperatorDescriptor descriptor;
    OperatorFn run;
};

inline const std::vector<RegisteredOperator>& builtin_operators() {
    static const std::vector<RegisteredOperator> ops = [] {
        std::vector<RegisteredOperator> v;
        v.push_back({{"op_ambiguous_adverbs", "Ambiguous adverbs smell", "unambiguous",
                      ContextScope::Local, LinguisticLevel::Lexical, false,
                      {{"dictionary", "seed (12 phrases)"}}},
                     [](const RequirementsSpec& s, const OperatorSettings& c) {
                         return op_ambiguous_adverbs(s, c);
                     }});
        v.push_back({{"op_atomicity", "Separate requirements per need", "atomic",
                      ContextScope::Local, LinguisticLevel::Syntactic, false, {}},
                     [](const RequirementsSpec& s, const OperatorSettings& c) {
                         return op_atomicity(s, c);
                     }});
        v.push_back({{"op_bare_numerals", "Numerals 1-12 spelled out", "unambiguous",
                      ContextScope::Local, LinguisticLevel::Syntactic, false, {}},
                     [](const RequirementsSpec& s, const OperatorSettings& c) {
                         return op_bare_numerals(s, c);
                     }});
        v.push_back({{"op_numbering", "Consecutive caption numbering", "organized",
                      ContextScope::Global, LinguisticLevel::Statistical, false, {}},
                     [](const RequirementsSpec& s, const OperatorSettings& c) {
                         return op_numbering(s, c);
                     }});
        v.push_back({{"op_redundancy", "Near-duplicate requirements", "non_redundant",
                      ContextScope::Global, LinguisticLevel::Statistical, false,
                      {{"threshold", "0.6"}, {"shingle_k", "3"}, {"pair_budget", "1000000"}}},
                     [](const RequirementsSpec& s, const OperatorSettings& c) {
                         return op_redundancy(s, c);
                     }});
        v.push_back({{"op_term_consistency", "Consistent terminology", "unambiguous",
                      ContextScope::Global, LinguisticLevel::Lexical, false,
                      {{"synonym_groups", "seed (user/dispatcher/operator)"}}},
                     [](const RequirementsSpec& s, const OperatorSettings& c) {
                         return op_term_consistency(s, c);
                     }});
        v.push_back({{"op_time_refs", "No time references", "non_redundant",
                      ContextScope::Global, LinguisticLevel::Lexical, false,
                      {{"flag_durations", "true"}}},
                     [](const RequirementsSpec& s, const OperatorSettings& c) {
                         return op_time_refs(s, c);
                     }});
        return v;
    }();
    return ops;
}

// Stable, id-sorted operator catalog. builtin_operators() is already sorted;
// externally configured descriptors merge in by id.
inline std::vector<OperatorDescriptor> registry_catalog(
    const std::vector<OperatorDescriptor>& extra = {}) {
    std::vector<OperatorDescriptor> out;
    for (const auto& op : builtin_operators()) out.push_back(op.descriptor);
    out.insert(out.end(), extra.begin(), extra.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.op_id < b.op_id; });
    return out;
}

inline const RegisteredOperator& find_operator(const std::string& op_id) {
    for (const auto& op : builtin_operators())
        if (op.descriptor.op_id == op_id) return op;
    throw UnknownOperator(op_id);
}

inline std::vector<Finding> run_operator(const std::string& op_id, const RequirementsSpec& spec,
                                         const OperatorSettings& settings = {}) {
    auto findings = find_operator(op_id).run(spec, settings);
    canonical_sort(findings, spec);
    return findings;
}

}  // namespace rqa::operators
