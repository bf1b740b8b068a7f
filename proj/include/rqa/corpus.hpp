#pragma once

// Requirements-document ingestion. Two front ends produce the same immutable
// model: a line-oriented plain-text format (.reqspec) and a JSON interchange
// format. Models preserve source positions so findings can point back at the
// original bytes.

#include <cctype>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "rqa/errors.hpp"
#include "rqa/lingo.hpp"

namespace rqa::corpus {

using lingo::Span;

struct Section {
    std::string number;  // dotted numeric label, e.g. "1.2"
    std::string title;
    int level = 1;  // count of dot-separated components

    bool operator==(const Section&) const = default;
};

struct Requirement {
    std::string req_id;
    std::vector<std::string> section_path;  // components of the owning section number
    std::string text;
    Span span;                     // full "[ID] body" extent in the source
    std::size_t text_offset = 0;   // where `text` starts in the source
};

enum class CaptionKind { Figure, Table, Illustration };

inline std::string caption_kind_name(CaptionKind k) {
    switch (k) {
        case CaptionKind::Figure: return "Figure";
        case CaptionKind::Table: return "Table";
        case CaptionKind::Illustration: return "Illustration";
    }
    return "?";
}

struct Caption {
    CaptionKind kind = CaptionKind::Figure;
    int number = 1;
    std::string title;
    Span span;
};

// Unmarked prose is kept so global operators (time references, numbering
// context) can scan the whole document, not only requirement statements.
struct ProseBlock {
    std::string section_number;
    std::string text;
    Span span;
};

struct RequirementsSpec {
    std::string doc_id;
    std::vector<Section> sections;
    std::vector<Requirement> requirements;
    std::vector<Caption> captions;
    std::vector<ProseBlock> prose;
    std::string source_path;
    std::string source;  // original bytes, spans index into this
};

namespace detail {

inline bool is_numeric_label(std::string_view s) {
    if (s.empty()) return false;
    bool digit_seen = false;
    bool prev_dot = true;
    for (char c : s) {
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digit_seen = true;
            prev_dot = false;
        } else if (c == '.') {
            if (prev_dot) return false;
            prev_dot = true;
        } else {
            return false;
        }
    }
    return digit_seen && !prev_dot;
}

inline int label_level(std::string_view s) {
    return 1 + static_cast<int>(std::count(s.begin(), s.end(), '.'));
}

inline std::vector<std::string> split_label(std::string_view s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto dot = s.find('.', start);
        if (dot == std::string_view::npos) {
            parts.emplace_back(s.substr(start));
            break;
        }
        parts.emplace_back(s.substr(start, dot - start));
        start = dot + 1;
    }
    return parts;
}

inline std::string_view rstrip(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::string_view strip(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    return rstrip(s);
}

struct Line {
    std::string_view content;  // without trailing newline / CR
    std::size_t start = 0;     // offset of first content byte
};

inline std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view content = nl == std::string_view::npos
                                       ? text.substr(pos)
                                       : text.substr(pos, nl - pos);
        if (!content.empty() && content.back() == '\r') content.remove_suffix(1);
        lines.push_back({content, pos});
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return lines;
}

inline std::optional<CaptionKind> caption_kind_from(std::string_view word) {
    if (word == "Figure") return CaptionKind::Figure;
    if (word == "Table") return CaptionKind::Table;
    if (word == "Illustration") return CaptionKind::Illustration;
    return std::nullopt;
}

}  // namespace detail

// Plain-text grammar, one construct per line:
//   # 1.2 Title              section header (numeric dotted label required)
//   [REQ-ID] body...         requirement; indented lines continue the body
//   Figure N: title          caption (also Table, Illustration)
//   anything else            prose, retained for global operators
inline RequirementsSpec parse_reqspec(const std::string& text, const std::string& doc_id) {
    RequirementsSpec spec;
    spec.doc_id = doc_id;
    spec.source = text;

    std::unordered_set<std::string> seen_ids;
    std::string current_section = "";
    bool root_created = false;

    auto lines = detail::split_lines(text);
    std::size_t li = 0;

    auto current_path = [&]() -> std::vector<std::string> {
        if (!current_section.empty()) return detail::split_label(current_section);
        if (!root_created) {
            spec.sections.insert(spec.sections.begin(), {"0", "(root)", 1});
            root_created = true;
        }
        return {"0"};
    };

    while (li < lines.size()) {
        auto [content, start] = lines[li];
        std::string_view trimmed = detail::strip(content);
        if (trimmed.empty()) {
            ++li;
            continue;
        }

        if (content.front() == '#') {
            std::string_view rest = detail::strip(content.substr(1));
            auto space = rest.find(' ');
            std::string_view label = space == std::string_view::npos ? rest : rest.substr(0, space);
            if (!detail::is_numeric_label(label))
                throw MalformedHeader("section header lacks a numeric label: '" +
                                      std::string(content) + "'");
            std::string_view title =
                space == std::string_view::npos ? "" : detail::strip(rest.substr(space + 1));
            spec.sections.push_back(
                {std::string(label), std::string(title), detail::label_level(label)});
            current_section = std::string(label);
            ++li;
            continue;
        }

        if (content.front() == '[') {
            auto close = content.find(']');
            if (close != std::string_view::npos && close > 1) {
                std::string id(content.substr(1, close - 1));
                if (!seen_ids.insert(id).second)
                    throw DuplicateRequirementId(id);
                std::size_t body_rel = close + 1;
                while (body_rel < content.size() &&
                       std::isspace(static_cast<unsigned char>(content[body_rel])))
                    ++body_rel;
                std::size_t text_start = start + body_rel;
                std::size_t text_end = start + detail::rstrip(content).size();
                // indented, non-empty lines continue the requirement body
                std::size_t next = li + 1;
                while (next < lines.size()) {
                    auto [ncontent, nstart] = lines[next];
                    if (ncontent.empty() || !std::isspace(static_cast<unsigned char>(ncontent.front())))
                        break;
                    if (detail::strip(ncontent).empty()) break;
                    text_end = nstart + detail::rstrip(ncontent).size();
                    ++next;
                }
                Requirement req;
                req.req_id = id;
                req.section_path = current_path();
                req.text = text.substr(text_start, text_end - text_start);
                req.span = {start, text_end};
                req.text_offset = text_start;
                spec.requirements.push_back(std::move(req));
                li = next;
                continue;
            }
        }

        // caption?
        {
            auto colon = trimmed.find(':');
            if (colon != std::string_view::npos) {
                std::string_view head = trimmed.substr(0, colon);
                auto space = head.find(' ');
                if (space != std::string_view::npos) {
                    auto kind = detail::caption_kind_from(head.substr(0, space));
                    std::string_view numsv = detail::strip(head.substr(space + 1));
                    if (kind && detail::is_numeric_label(numsv) &&
                        numsv.find('.') == std::string_view::npos) {
                        Caption cap;
                        cap.kind = *kind;
                        cap.number = std::stoi(std::string(numsv));
                        cap.title = std::string(detail::strip(trimmed.substr(colon + 1)));
                        cap.span = {start + content.find_first_not_of(" \t"),
                                    start + detail::rstrip(content).size()};
                        spec.captions.push_back(std::move(cap));
                        ++li;
                        continue;
                    }
                }
            }
        }

        // prose: contiguous run of unmarked, non-empty lines
        {
            std::size_t lead = 0;
            while (lead < content.size() &&
                   std::isspace(static_cast<unsigned char>(content[lead])))
                ++lead;
            std::size_t pstart = start + lead;
            std::size_t pend = start + detail::rstrip(content).size();
            std::size_t next = li + 1;
            while (next < lines.size()) {
                auto [ncontent, nstart] = lines[next];
                std::string_view ntrim = detail::strip(ncontent);
                if (ntrim.empty() || ncontent.front() == '#' || ncontent.front() == '[') break;
                // stop before captions so they are parsed on their own
                auto ncolon = ntrim.find(':');
                if (ncolon != std::string_view::npos) {
                    auto nspace = ntrim.substr(0, ncolon).find(' ');
                    if (nspace != std::string_view::npos &&
                        detail::caption_kind_from(ntrim.substr(0, nspace)))
                        break;
                }
                pend = nstart + detail::rstrip(ncontent).size();
                ++next;
            }
            ProseBlock block;
            block.section_number = current_section;
            block.text = text.substr(pstart, pend - pstart);
            block.span = {pstart, pend};
            spec.prose.push_back(std::move(block));
            li = next;
        }
    }
    return spec;
}

// --- JSON interchange -------------------------------------------------------

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& obj, const std::string& key,
                                           const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) throw SchemaError(path.empty() ? key : path + "." + key);
    return obj.at(key);
}

inline std::string require_string(const nlohmann::json& obj, const std::string& key,
                                  const std::string& path) {
    const auto& v = require_field(obj, key, path);
    if (!v.is_string()) throw SchemaError((path.empty() ? key : path + "." + key) + " must be a string");
    return v.get<std::string>();
}

}  // namespace detail

inline nlohmann::json to_json(const RequirementsSpec& spec) {
    nlohmann::json j;
    j["doc_id"] = spec.doc_id;
    j["requirements"] = nlohmann::json::array();
    for (const auto& r : spec.requirements) {
        std::string section;
        for (std::size_t i = 0; i < r.section_path.size(); ++i) {
            if (i) section += '.';
            section += r.section_path[i];
        }
        j["requirements"].push_back({{"id", r.req_id}, {"section", section}, {"text", r.text}});
    }
    if (!spec.sections.empty()) {
        j["sections"] = nlohmann::json::array();
        for (const auto& s : spec.sections)
            j["sections"].push_back({{"number", s.number}, {"title", s.title}});
    }
    if (!spec.captions.empty()) {
        j["captions"] = nlohmann::json::array();
        for (const auto& c : spec.captions)
            j["captions"].push_back(
                {{"kind", caption_kind_name(c.kind)}, {"number", c.number}, {"title", c.title}});
    }
    if (!spec.prose.empty()) {
        j["prose"] = nlohmann::json::array();
        for (const auto& p : spec.prose)
            j["prose"].push_back({{"section", p.section_number}, {"text", p.text}});
    }
    return j;
}

// Builds the same model as parse_reqspec; spans are synthesized by rendering
// a canonical plain-text source from the JSON fields.
inline RequirementsSpec parse_reqspec_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    std::string doc_id = detail::require_string(j, "doc_id", "");
    const auto& reqs = detail::require_field(j, "requirements", "");
    if (!reqs.is_array()) throw SchemaError("requirements must be an array");

    // render canonical text, then reuse the plain-text parser so spans and
    // invariants come out identical
    std::string rendered;
    std::vector<std::pair<std::string, std::string>> known_sections;  // number -> title
    if (j.contains("sections")) {
        if (!j["sections"].is_array()) throw SchemaError("sections must be an array");
        for (const auto& s : j["sections"]) {
            known_sections.emplace_back(detail::require_string(s, "number", "sections[]"),
                                        s.contains("title") ? s.at("title").get<std::string>() : "");
        }
    }
    std::string current;
    auto emit_section = [&](const std::string& number) {
        if (number == current || number == "0") return;
        std::string title;
        for (auto& [n, t] : known_sections)
            if (n == number) title = t;
        rendered += "# " + number + (title.empty() ? "" : " " + title) + "\n";
        current = number;
    };
    std::size_t idx = 0;
    for (const auto& r : reqs) {
        std::string path = "requirements[" + std::to_string(idx++) + "]";
        std::string id = detail::require_string(r, "id", path);
        std::string section = detail::require_string(r, "section", path);
        std::string body = detail::require_string(r, "text", path);
        emit_section(section);
        rendered += "[" + id + "] " + body + "\n";
    }
    if (j.contains("captions")) {
        if (!j["captions"].is_array()) throw SchemaError("captions must be an array");
        std::size_t ci = 0;
        for (const auto& c : j["captions"]) {
            std::string path = "captions[" + std::to_string(ci++) + "]";
            std::string kind = detail::require_string(c, "kind", path);
            const auto& num = detail::require_field(c, "number", path);
            if (!num.is_number_integer()) throw SchemaError(path + ".number must be an integer");
            std::string title = c.contains("title") ? c.at("title").get<std::string>() : "";
            rendered += kind + " " + std::to_string(num.get<int>()) + ": " + title + "\n";
        }
    }
    if (j.contains("prose")) {
        for (const auto& p : j["prose"])
            rendered += detail::require_string(p, "text", "prose[]") + "\n";
    }
    return parse_reqspec(rendered, doc_id);
}

// Canonical plain-text rendering; parse_reqspec(render_reqspec(s)) preserves
// the model up to spans.
inline std::string render_reqspec(const RequirementsSpec& spec) {
    std::string out;
    std::string current;
    for (const auto& r : spec.requirements) {
        std::string section;
        for (std::size_t i = 0; i < r.section_path.size(); ++i) {
            if (i) section += '.';
            section += r.section_path[i];
        }
        if (section != current && section != "0") {
            std::string title;
            for (const auto& s : spec.sections)
                if (s.number == section) title = s.title;
            out += "# " + section + (title.empty() ? "" : " " + title) + "\n";
            current = section;
        }
        out += "[" + r.req_id + "] " + r.text + "\n";
    }
    for (const auto& c : spec.captions)
        out += caption_kind_name(c.kind) + " " + std::to_string(c.number) + ": " + c.title + "\n";
    for (const auto& p : spec.prose)
        if (!p.text.empty()) out += p.text + "\n";
    return out;
}

// Model equality for round-trip checks; spans and source bytes are excluded.
inline bool equal_ignoring_spans(const RequirementsSpec& a, const RequirementsSpec& b) {
    if (a.doc_id != b.doc_id) return false;
    if (a.requirements.size() != b.requirements.size()) return false;
    for (std::size_t i = 0; i < a.requirements.size(); ++i) {
        const auto& x = a.requirements[i];
        const auto& y = b.requirements[i];
        if (x.req_id != y.req_id || x.section_path != y.section_path || x.text != y.text)
            return false;
    }
    if (a.captions.size() != b.captions.size()) return false;
    for (std::size_t i = 0; i < a.captions.size(); ++i) {
        const auto& x = a.captions[i];
        const auto& y = b.captions[i];
        if (x.kind != y.kind || x.number != y.number || x.title != y.title) return false;
    }
    return true;
}

}  // namespace rqa::corpus
