#include <doctest.h>

#include "rqa/operators.hpp"

using namespace rqa::operators;
using rqa::corpus::parse_reqspec;

namespace {

RequirementsSpec spec_of(const std::string& text) { return parse_reqspec(text, "doc"); }

}  // namespace

TEST_CASE("run_operator: empty spec yields nothing, unknown id throws") {
    auto spec = spec_of("");
    for (const auto& op : builtin_operators())
        CHECK(run_operator(op.descriptor.op_id, spec).empty());
    CHECK_THROWS_AS(run_operator("op_bogus", spec), rqa::UnknownOperator);
}

TEST_CASE("op_ambiguous_adverbs: seed dictionary hits") {
    auto spec = spec_of("[R-1] The UI shall respond quickly.");
    auto findings = run_operator("op_ambiguous_adverbs", spec);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].evidence == "quickly");
    CHECK(findings[0].req_ids == std::vector<std::string>{"R-1"});
    CHECK(findings[0].severity == Severity::Warning);
}

TEST_CASE("op_ambiguous_adverbs: two hits in one requirement") {
    auto spec = spec_of("[R-1] Alarms shall normally be silenced easily.");
    auto findings = run_operator("op_ambiguous_adverbs", spec);
    REQUIRE(findings.size() == 2);
    CHECK(findings[0].evidence == "normally");
    CHECK(findings[1].evidence == "easily");
}

TEST_CASE("op_ambiguous_adverbs: clean requirement") {
    CHECK(run_operator("op_ambiguous_adverbs", spec_of("[R-1] The sensor shall sample at 10 Hz."))
              .empty());
}

TEST_CASE("op_time_refs: ISO date flagged") {
    auto findings =
        run_operator("op_time_refs", spec_of("[R-1] Work shall be completed by 2024-06-30."));
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].evidence == "2024-06-30");
    CHECK(findings[0].severity == Severity::Violation);
}

TEST_CASE("op_time_refs: schedule reference and non-temporal numbers stay clean") {
    CHECK(run_operator("op_time_refs", spec_of("[R-1] Refer to the Schedule document.")).empty());
    CHECK(run_operator("op_time_refs", spec_of("[R-1] Torque shall be 30 Nm.")).empty());
}

TEST_CASE("op_time_refs: clock times, written dates and durations") {
    CHECK(run_operator("op_time_refs", spec_of("[R-1] Backups shall run at 02:30.")).size() == 1);
    CHECK(run_operator("op_time_refs", spec_of("[R-1] Delivery by 30 June 2024.")).size() == 1);
    CHECK(run_operator("op_time_refs", spec_of("[R-1] Done within 30 days.")).size() == 1);
    OperatorSettings no_durations;
    no_durations.flag_durations = false;
    CHECK(op_time_refs(spec_of("[R-1] Done within 30 days."), no_durations).empty());
}

TEST_CASE("op_time_refs: schedule-titled document is exempt") {
    auto spec = parse_reqspec("# 1 Delivery Schedule\n[R-1] Milestone on 2024-06-30.", "doc");
    CHECK(run_operator("op_time_refs", spec).empty());
}

TEST_CASE("op_time_refs: scans prose too") {
    auto spec = spec_of("# 1 Intro\nThe project ends 2024-12-31.\n[R-1] The pump shall run.");
    auto findings = run_operator("op_time_refs", spec);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].evidence == "2024-12-31");
}

TEST_CASE("op_numbering: conforming sequence") {
    CHECK(run_operator("op_numbering",
                       spec_of("Figure 1: a\nFigure 2: b\nFigure 3: c"))
              .empty());
}

TEST_CASE("op_numbering: gap") {
    auto findings = run_operator("op_numbering", spec_of("Figure 1: a\nFigure 3: b"));
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].message.find("expected 2, found 3") != std::string::npos);
}

TEST_CASE("op_numbering: wrong start") {
    auto findings = run_operator("op_numbering", spec_of("Table 2: a\nTable 3: b"));
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].message.find("expected 1, found 2") != std::string::npos);
}

TEST_CASE("op_numbering: kinds are numbered independently") {
    CHECK(run_operator("op_numbering", spec_of("Figure 1: a\nTable 1: b\nFigure 2: c")).empty());
}

TEST_CASE("op_bare_numerals: conforming two (2) form") {
    CHECK(run_operator("op_bare_numerals", spec_of("[R-1] Pumps shall be at least two (2)."))
              .empty());
}

TEST_CASE("op_bare_numerals: bare numeral flagged") {
    auto findings =
        run_operator("op_bare_numerals", spec_of("[R-1] Pumps shall be at least 2."));
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].evidence == "2");
}

TEST_CASE("op_bare_numerals: outside 1-12 unflagged") {
    CHECK(run_operator("op_bare_numerals", spec_of("[R-1] Install 13 pumps.")).empty());
}

TEST_CASE("op_bare_numerals: identifier and reference contexts exempt") {
    CHECK(run_operator("op_bare_numerals", spec_of("[R-1] See requirement R-1 and A.2.")).empty());
    CHECK(run_operator("op_bare_numerals", spec_of("[R-1] See Figure 3 and Section 4.")).empty());
    CHECK(run_operator("op_bare_numerals", spec_of("[R-1] Operate in range 5-30 bar.")).empty());
}

TEST_CASE("op_bare_numerals: decimals are not bare integers") {
    CHECK(run_operator("op_bare_numerals", spec_of("[R-1] Flow shall be 2.5 l/s.")).empty());
}

TEST_CASE("op_term_consistency: single term clean") {
    auto spec = spec_of("[R-1] The user logs in.\n[R-2] The user logs out.");
    CHECK(run_operator("op_term_consistency", spec).empty());
}

TEST_CASE("op_term_consistency: two terms, one finding") {
    auto spec = spec_of("[R-1] The user logs in.\n[R-2] The operator logs out.");
    auto findings = run_operator("op_term_consistency", spec);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].req_ids == std::vector<std::string>{"R-1", "R-2"});
    CHECK(findings[0].evidence.find("user:1") != std::string::npos);
    CHECK(findings[0].evidence.find("operator:1") != std::string::npos);
}

TEST_CASE("op_term_consistency: three terms still one finding per group") {
    auto spec = spec_of(
        "[R-1] The user logs in.\n[R-2] The operator logs out.\n[R-3] The dispatcher waits.");
    auto findings = run_operator("op_term_consistency", spec);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].evidence.find("dispatcher:1") != std::string::npos);
}

TEST_CASE("op_term_consistency: degenerate group rejected") {
    OperatorSettings settings;
    settings.synonym_groups = {{"user"}};
    CHECK_THROWS_AS(op_term_consistency(spec_of("[R-1] x."), settings), rqa::ConfigError);
}

TEST_CASE("op_atomicity: two modals flagged") {
    auto findings = run_operator(
        "op_atomicity", spec_of("[R-1] The system shall log events and shall notify the admin."));
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].severity == Severity::Violation);
}

TEST_CASE("op_atomicity: single modal clean") {
    CHECK(run_operator("op_atomicity", spec_of("[R-1] The system shall log events.")).empty());
}

TEST_CASE("op_atomicity: conjunction of nouns clean, of verb phrases flagged") {
    CHECK(run_operator("op_atomicity",
                       spec_of("[R-1] The system shall log errors and warnings."))
              .empty());
    CHECK(run_operator("op_atomicity",
                       spec_of("[R-1] The system shall log events and notify the admin."))
              .size() == 1);
}

TEST_CASE("op_redundancy: identical requirements") {
    auto spec = spec_of(
        "[R-1] The pump shall stop on low pressure.\n[R-2] The pump shall stop on low pressure.");
    auto findings = run_operator("op_redundancy", spec);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].req_ids == std::vector<std::string>{"R-1", "R-2"});
    CHECK(findings[0].evidence == "1.0000");
}

TEST_CASE("op_redundancy: disjoint vocabulary clean") {
    auto spec = spec_of("[R-1] Alpha beta gamma delta epsilon.\n[R-2] One two three four five.");
    CHECK(run_operator("op_redundancy", spec).empty());
}

TEST_CASE("op_redundancy: engineered 3/7 pair at threshold 0.4") {
    // 7-word sequences sharing their first five words: 5 shingles each at
    // k=3, 3 shared, union 7 -> J = 3/7
    auto spec = spec_of(
        "[R-1] alpha beta gamma delta epsilon zeta eta\n"
        "[R-2] alpha beta gamma delta epsilon omicron sigma");
    auto s1 = rqa::lingo::shingles(rqa::lingo::tokenize(spec.requirements[0].text), 3);
    auto s2 = rqa::lingo::shingles(rqa::lingo::tokenize(spec.requirements[1].text), 3);
    CHECK(rqa::lingo::jaccard(s1, s2) == doctest::Approx(3.0 / 7.0));

    OperatorSettings settings;
    settings.redundancy_threshold = 0.4;
    auto findings = op_redundancy(spec, settings);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].evidence == "0.4286");
}

TEST_CASE("op_redundancy: invalid threshold") {
    OperatorSettings settings;
    settings.redundancy_threshold = 0.0;
    CHECK_THROWS_AS(op_redundancy(spec_of("[R-1] x y z."), settings), rqa::InvalidThreshold);
}

TEST_CASE("op_redundancy: prefiltered path matches exact path") {
    std::string text;
    for (int i = 0; i < 40; ++i) {
        text += "[R-" + std::to_string(i) + "] The unit " + std::to_string(i) +
                " shall report status value " + std::to_string(i * 7 % 13) + " to the hub.\n";
    }
    // two engineered near-duplicates (one word of eighteen differs)
    text +=
        "[D-1] The cooling fan shall spin up at full speed when the measured inlet "
        "temperature exceeds the configured limit value.\n";
    text +=
        "[D-2] The cooling fan shall spin up at full speed when the measured inlet "
        "temperature exceeds the configured threshold value.\n";
    auto spec = spec_of(text);
    OperatorSettings exact_settings;
    auto exact = op_redundancy(spec, exact_settings);
    OperatorSettings filtered = exact_settings;
    filtered.pair_budget = 0;  // force the MinHash pre-filter
    auto approx = op_redundancy(spec, filtered);
    REQUIRE(exact.size() == 1);
    REQUIRE(approx.size() == exact.size());
    CHECK(approx[0].req_ids == exact[0].req_ids);
}

TEST_CASE("registry_catalog: shipped set") {
    auto catalog = registry_catalog();
    CHECK(catalog.size() == 7);
    CHECK(std::is_sorted(catalog.begin(), catalog.end(),
                         [](const auto& a, const auto& b) { return a.op_id < b.op_id; }));
    for (const auto& d : catalog) {
        if (d.op_id == "op_numbering") {
            CHECK(d.context_scope == ContextScope::Global);
            CHECK(d.linguistic_level == LinguisticLevel::Statistical);
        }
        if (d.op_id == "op_atomicity") {
            CHECK(d.context_scope == ContextScope::Local);
            CHECK(d.linguistic_level == LinguisticLevel::Syntactic);
        }
    }
}

TEST_CASE("operators: deterministic across runs") {
    auto spec = spec_of(
        "[R-1] The system shall respond quickly by 2024-01-01.\nFigure 2: late\n"
        "[R-2] The user shall wait.\n[R-3] The operator shall wait.");
    for (const auto& op : builtin_operators()) {
        auto a = run_operator(op.descriptor.op_id, spec);
        auto b = run_operator(op.descriptor.op_id, spec);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].message == b[i].message);
            CHECK(a[i].span.start == b[i].span.start);
        }
    }
}

// Local-scope operators are compositional: whole-spec findings equal the
// concatenation of per-requirement findings.
TEST_CASE("local operators: compositional over requirements") {
    std::vector<std::string> reqs = {
        "[A-1] The UI shall react quickly.",
        "[A-2] Pumps shall be at least 2.",
        "[A-3] The system shall log events and shall notify the admin.",
        "[A-4] The sensor shall sample at 10 Hz.",
    };
    std::string whole;
    for (const auto& r : reqs) whole += r + "\n";
    auto whole_spec = spec_of(whole);
    for (const char* op : {"op_ambiguous_adverbs", "op_bare_numerals", "op_atomicity"}) {
        auto combined = run_operator(op, whole_spec);
        std::vector<Finding> stitched;
        for (const auto& r : reqs) {
            auto part = run_operator(op, spec_of(r));
            stitched.insert(stitched.end(), part.begin(), part.end());
        }
        REQUIRE(combined.size() == stitched.size());
        for (std::size_t i = 0; i < combined.size(); ++i) {
            CHECK(combined[i].req_ids == stitched[i].req_ids);
            CHECK(combined[i].evidence == stitched[i].evidence);
        }
    }
}

TEST_CASE("local operators: inert requirement does not disturb neighbours") {
    auto base = spec_of("[A-1] The UI shall react quickly.");
    auto extended =
        spec_of("[A-1] The UI shall react quickly.\n[A-2] The valve shall close.");
    for (const char* op : {"op_ambiguous_adverbs", "op_bare_numerals", "op_atomicity"}) {
        auto a = run_operator(op, base);
        auto b = run_operator(op, extended);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].evidence == b[i].evidence);
    }
}
