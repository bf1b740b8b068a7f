// rqa - requirements quality assurance CLI.
//
// Subcommands: lint, rank, plan, eval, explain. Exit codes follow the usual
// linter convention: 0 clean, 1 violations found, 2 usage or input error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rqa/corpus.hpp"
#include "rqa/decision.hpp"
#include "rqa/errors.hpp"
#include "rqa/evalharness.hpp"
#include "rqa/operators.hpp"
#include "rqa/taxonomy.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rqa::SchemaError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

rqa::corpus::RequirementsSpec load_spec(const std::string& path) {
    std::string text = read_file(path);
    std::string doc_id = fs::path(path).stem().string();
    rqa::corpus::RequirementsSpec spec;
    if (fs::path(path).extension() == ".json")
        spec = rqa::corpus::parse_reqspec_json(text);
    else
        spec = rqa::corpus::parse_reqspec(text, doc_id);
    spec.source_path = path;
    return spec;
}

std::set<std::string> load_dictionary(const std::string& path) {
    std::set<std::string> dict;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        std::string phrase = line.substr(b, e - b + 1);
        if (phrase.empty() || phrase.front() == '#') continue;
        dict.insert(rqa::lingo::to_lower(phrase));
    }
    return dict;
}

struct CliConfig {
    std::string format = "text";
    std::string quality_model_path;
    std::string operators_config_path;
    std::string dictionary_path;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::vector<std::string> enabled_ops;
};

rqa::taxonomy::QualityModel load_model(const CliConfig& cfg) {
    if (cfg.quality_model_path.empty()) return rqa::taxonomy::seed_quality_model();
    return rqa::taxonomy::load_quality_model(read_file(cfg.quality_model_path));
}

rqa::operators::OperatorSettings load_settings(const CliConfig& cfg,
                                               std::vector<std::string>* enabled_out = nullptr) {
    rqa::operators::OperatorSettings settings;
    settings.minhash_seed = cfg.seed ? cfg.seed : settings.minhash_seed;
    if (!cfg.dictionary_path.empty())
        settings.ambiguous_adverbs = load_dictionary(cfg.dictionary_path);
    if (!cfg.operators_config_path.empty()) {
        json j;
        try {
            j = json::parse(read_file(cfg.operators_config_path));
        } catch (const json::parse_error& e) {
            throw rqa::ConfigError(std::string("operator config: ") + e.what());
        }
        if (j.contains("enabled") && enabled_out)
            *enabled_out = j["enabled"].get<std::vector<std::string>>();
        if (j.contains("op_redundancy")) {
            const auto& r = j["op_redundancy"];
            if (r.contains("threshold")) settings.redundancy_threshold = r["threshold"];
            if (r.contains("shingle_k")) settings.shingle_k = r["shingle_k"];
            if (r.contains("pair_budget")) settings.pair_budget = r["pair_budget"];
        }
        if (j.contains("op_ambiguous_adverbs")) {
            const auto& a = j["op_ambiguous_adverbs"];
            if (a.contains("dictionary"))
                settings.ambiguous_adverbs = load_dictionary(a["dictionary"]);
        }
        if (j.contains("op_term_consistency")) {
            const auto& t = j["op_term_consistency"];
            if (t.contains("synonym_groups"))
                settings.synonym_groups =
                    t["synonym_groups"].get<std::vector<std::vector<std::string>>>();
        }
        if (j.contains("op_time_refs")) {
            const auto& t = j["op_time_refs"];
            if (t.contains("flag_durations")) settings.flag_durations = t["flag_durations"];
        }
    }
    if (enabled_out && !cfg.enabled_ops.empty()) *enabled_out = cfg.enabled_ops;
    return settings;
}

std::vector<std::string> active_op_ids(const std::vector<std::string>& enabled) {
    std::vector<std::string> ids;
    for (const auto& op : rqa::operators::builtin_operators()) {
        if (enabled.empty() ||
            std::find(enabled.begin(), enabled.end(), op.descriptor.op_id) != enabled.end())
            ids.push_back(op.descriptor.op_id);
    }
    for (const auto& e : enabled)
        if (std::none_of(rqa::operators::builtin_operators().begin(),
                         rqa::operators::builtin_operators().end(),
                         [&](const auto& op) { return op.descriptor.op_id == e; }))
            throw rqa::UnknownOperator(e);
    return ids;
}

std::vector<rqa::operators::Finding> lint_one(const rqa::corpus::RequirementsSpec& spec,
                                              const std::vector<std::string>& op_ids,
                                              const rqa::operators::OperatorSettings& settings,
                                              int jobs) {
    std::vector<rqa::operators::Finding> findings;
    if (jobs > 1) {
        std::vector<std::future<std::vector<rqa::operators::Finding>>> futures;
        for (const auto& id : op_ids)
            futures.push_back(std::async(std::launch::async, [&, id] {
                return rqa::operators::run_operator(id, spec, settings);
            }));
        for (auto& f : futures) {
            auto part = f.get();
            findings.insert(findings.end(), part.begin(), part.end());
        }
    } else {
        for (const auto& id : op_ids) {
            auto part = rqa::operators::run_operator(id, spec, settings);
            findings.insert(findings.end(), part.begin(), part.end());
        }
    }
    rqa::operators::canonical_sort(findings, spec);
    return findings;
}

void print_findings(const std::vector<rqa::operators::Finding>& findings,
                    const std::string& format) {
    for (const auto& f : findings) {
        if (format == "json") {
            std::cout << rqa::operators::to_json(f).dump() << "\n";
        } else {
            std::cout << f.doc_id << ":" << f.span.start << "-" << f.span.end << " ["
                      << rqa::operators::to_string(f.severity) << "] " << f.op_id;
            if (!f.req_ids.empty()) {
                std::cout << " (";
                for (std::size_t i = 0; i < f.req_ids.size(); ++i)
                    std::cout << (i ? "," : "") << f.req_ids[i];
                std::cout << ")";
            }
            std::cout << ": " << f.message << "\n";
        }
    }
}

int cmd_lint(const CliConfig& cfg, const std::vector<std::string>& paths) {
    std::vector<std::string> enabled;
    auto settings = load_settings(cfg, &enabled);
    auto op_ids = active_op_ids(enabled);

    bool violations = false;
    for (const auto& path : paths) {
        auto spec = load_spec(path);
        auto findings = lint_one(spec, op_ids, settings, cfg.jobs);
        print_findings(findings, cfg.format);
        for (const auto& f : findings)
            if (f.severity == rqa::operators::Severity::Violation) violations = true;
    }
    return violations ? 1 : 0;
}

int cmd_rank(const CliConfig& cfg, const std::vector<std::string>& ballot_paths,
             bool check_conflicts, int total, int k) {
    auto model = load_model(cfg);
    std::vector<rqa::taxonomy::Ballot> ballots;
    for (const auto& p : ballot_paths) {
        auto some = rqa::taxonomy::parse_ballots_csv(read_file(p));
        ballots.insert(ballots.end(), some.begin(), some.end());
    }
    for (const auto& b : ballots)
        for (const auto& [attr, pts] : b.points)
            if (!model.has_attribute(attr)) throw rqa::UnknownAttribute(attr);
    auto ranking = rqa::taxonomy::aggregate_votes(ballots, total);
    std::vector<rqa::taxonomy::Conflict> conflicts;
    if (check_conflicts) conflicts = rqa::taxonomy::detect_ranking_conflicts(ranking, model, k);

    if (cfg.format == "json") {
        json j;
        j["ranking"] = json::array();
        for (const auto& e : ranking)
            j["ranking"].push_back(
                {{"attribute", e.attribute_id}, {"total", e.total}, {"position", e.position}});
        if (check_conflicts) {
            j["conflicts"] = json::array();
            for (const auto& c : conflicts)
                j["conflicts"].push_back({{"source", c.source},
                                          {"target", c.target},
                                          {"sign", c.sign == rqa::taxonomy::EdgeSign::Positive
                                                       ? "+"
                                                       : "-"},
                                          {"source_position", c.source_position},
                                          {"target_position", c.target_position}});
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "pos  points  attribute\n";
        for (const auto& e : ranking) {
            std::printf("%3d  %6ld  %s\n", e.position, e.total, e.attribute_id.c_str());
        }
        if (check_conflicts) {
            if (conflicts.empty()) {
                std::cout << "no ranking conflicts (k=" << k << ")\n";
            } else {
                for (const auto& c : conflicts)
                    std::cout << "conflict: " << c.source << " (position " << c.source_position
                              << ") positively influences " << c.target << " (position "
                              << c.target_position << ")\n";
            }
        }
    }
    return 0;
}

int cmd_plan(const CliConfig& cfg, const std::vector<std::string>& ballot_paths, double budget,
             const std::string& accuracy_path, double damping, int total) {
    auto model = load_model(cfg);
    std::vector<rqa::taxonomy::Ballot> ballots;
    for (const auto& p : ballot_paths) {
        auto some = rqa::taxonomy::parse_ballots_csv(read_file(p));
        ballots.insert(ballots.end(), some.begin(), some.end());
    }
    auto ranking = rqa::taxonomy::aggregate_votes(ballots, total);

    std::map<std::string, rqa::decision::AccuracyEstimate> accuracy;
    if (!accuracy_path.empty()) {
        json j = json::parse(read_file(accuracy_path));
        for (const auto& [op, acc] : j.at("ops").items()) {
            accuracy[op] = {acc.at("precision").get<double>(), acc.at("recall").get<double>(),
                            rqa::decision::AccuracyProvenance::Measured};
        }
    }

    rqa::decision::PlanOptions options;
    options.damping = damping;
    auto plan = rqa::decision::build_plan(rqa::operators::registry_catalog(), ranking, model,
                                          budget, accuracy, options);
    if (cfg.format == "json") {
        std::cout << rqa::decision::to_json(plan).dump(2) << "\n";
    } else {
        std::printf("%-22s %-9s %10s %5s %5s  rationale\n", "operator", "decision", "priority",
                    "cost", "load");
        for (const auto& i : plan.items)
            std::printf("%-22s %-9s %10.2f %5.0f %5d  %s\n", i.op_id.c_str(),
                        rqa::decision::to_string(i.decision).c_str(), i.priority_score, i.cost,
                        i.cognitive_load, i.rationale.c_str());
        std::printf("budget %.1f, used %.1f\n", plan.budget, plan.budget_used);
    }
    return 0;
}

int cmd_eval(const CliConfig& cfg, const std::string& corpus_dir, const std::string& defects_path,
             bool correlate) {
    std::vector<std::string> enabled;
    auto settings = load_settings(cfg, &enabled);

    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(corpus_dir)) {
        auto ext = entry.path().extension();
        if (ext == ".reqspec" || ext == ".json") paths.push_back(entry.path().string());
    }
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) throw rqa::SchemaError("no .reqspec/.json documents in " + corpus_dir);

    std::vector<rqa::corpus::RequirementsSpec> specs;
    for (const auto& p : paths) specs.push_back(load_spec(p));

    if (correlate) {
        auto op_ids = active_op_ids(enabled);
        std::vector<rqa::operators::Finding> findings;
        std::vector<const rqa::corpus::RequirementsSpec*> corpus;
        for (const auto& s : specs) {
            corpus.push_back(&s);
            for (const auto& id : op_ids) {
                auto part = rqa::operators::run_operator(id, s, settings);
                findings.insert(findings.end(), part.begin(), part.end());
            }
        }
        auto matrix = rqa::evalharness::correlate_operators(corpus, findings, op_ids);
        if (cfg.format == "json") {
            std::cout << rqa::evalharness::to_json(matrix).dump(2) << "\n";
        } else {
            for (const auto& a : matrix.ops) {
                for (const auto& b : matrix.ops)
                    std::printf("%-22s %-22s %+.4f\n", a.c_str(), b.c_str(),
                                matrix.values.at(a).at(b));
            }
        }
        return 0;
    }

    // defect config: {"defects": [{"kind": ..., "count": n, "seed": s}, ...]},
    // applied to every document (per-document seed = seed + document index)
    json j = json::parse(read_file(defects_path));
    std::vector<rqa::evalharness::DefectSpec> defects;
    for (const auto& d : j.at("defects")) {
        rqa::evalharness::DefectSpec ds;
        ds.kind = rqa::evalharness::defect_kind_from(d.at("kind").get<std::string>());
        ds.count = d.at("count").get<int>();
        ds.seed = d.value("seed", 0) + cfg.seed;
        defects.push_back(ds);
    }

    std::set<std::string> targeted;
    for (const auto& d : defects)
        if (d.count > 0) targeted.insert(rqa::evalharness::targeted_operator(d.kind));

    std::vector<rqa::operators::Finding> findings;
    rqa::evalharness::GroundTruth truth;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        auto doc_defects = defects;
        for (auto& d : doc_defects) d.seed += i;
        auto injected = rqa::evalharness::inject_defects(specs[i], doc_defects, settings);
        truth.insert(truth.end(), injected.truth.begin(), injected.truth.end());
        for (const auto& op : targeted) {
            auto part = rqa::operators::run_operator(op, injected.spec, settings);
            findings.insert(findings.end(), part.begin(), part.end());
        }
    }
    auto report = rqa::evalharness::score(findings, truth);
    if (cfg.format == "json") {
        std::cout << rqa::evalharness::to_json(report).dump(2) << "\n";
    } else {
        std::printf("%-22s %4s %4s %4s %9s %6s %6s\n", "operator", "TP", "FP", "FN", "precision",
                    "recall", "F1");
        for (const auto& [op, acc] : report.per_op)
            std::printf("%-22s %4d %4d %4d %9.4f %6.4f %6.4f\n", op.c_str(), acc.true_positives,
                        acc.false_positives, acc.false_negatives, acc.precision, acc.recall,
                        acc.f1);
    }
    return 0;
}

int cmd_explain(const CliConfig& cfg, const std::string& op_id) {
    const auto& op = rqa::operators::find_operator(op_id);
    const auto& d = op.descriptor;
    auto load = rqa::decision::score_cognitive_load(d);
    auto complexity = rqa::decision::score_automation_complexity(d);
    if (cfg.format == "json") {
        json cfg_json = json::object();
        for (const auto& [k, v] : d.config) cfg_json[k] = v;
        json j = {{"op_id", d.op_id},
                  {"name", d.name},
                  {"attribute", d.attribute_id},
                  {"context_scope", rqa::operators::to_string(d.context_scope)},
                  {"linguistic_level", rqa::operators::to_string(d.linguistic_level)},
                  {"needs_domain_knowledge", d.needs_domain_knowledge},
                  {"cognitive_load", load.value},
                  {"automation_complexity", complexity.value},
                  {"config", cfg_json}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << d.op_id << " — " << d.name << "\n"
                  << "  attribute:             " << d.attribute_id << "\n"
                  << "  context scope:         " << rqa::operators::to_string(d.context_scope)
                  << "\n"
                  << "  linguistic level:      " << rqa::operators::to_string(d.linguistic_level)
                  << "\n"
                  << "  domain knowledge:      " << (d.needs_domain_knowledge ? "yes" : "no")
                  << "\n"
                  << "  cognitive load:        " << load.value << "\n"
                  << "  automation complexity: " << complexity.value << "\n";
        for (const auto& [k, v] : d.config) std::cout << "  config " << k << ": " << v << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rqa - requirements quality assurance"};
    app.require_subcommand(1);

    CliConfig cfg;
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", cfg.seed, "Random seed for seeded operations");
    app.add_option("--quality-model", cfg.quality_model_path, "Quality model file");
    app.add_option("--operators", cfg.operators_config_path, "Operator config file (JSON)");
    app.add_option("--dict", cfg.dictionary_path, "Ambiguous-adverbs dictionary file");
    app.add_option("--jobs", cfg.jobs, "Operators run in parallel per document")
        ->check(CLI::PositiveNumber);
    app.add_option("--ops", cfg.enabled_ops, "Restrict to these operator ids");

    std::vector<std::string> spec_paths;
    auto* lint = app.add_subcommand("lint", "Lint requirements documents");
    lint->add_option("specs", spec_paths, "Requirement documents (.reqspec or .json)")
        ->required();

    std::vector<std::string> ballot_paths;
    bool check_conflicts = false;
    int vote_total = 100;
    int conflict_k = 5;
    auto* rank = app.add_subcommand("rank", "Aggregate cumulative-voting ballots");
    rank->add_option("--ballots", ballot_paths, "Ballot CSV files")->required();
    rank->add_flag("--check-conflicts", check_conflicts,
                   "Report positive edges from bottom-k into top-k attributes");
    rank->add_option("--total", vote_total, "Points each voter must distribute");
    rank->add_option("-k,--band", conflict_k, "Top/bottom band size for conflicts");

    double budget = 0.0;
    double damping = 0.5;
    std::string accuracy_path;
    auto* plan = app.add_subcommand("plan", "Produce an automate-vs-manual QA plan");
    plan->add_option("--ballots", ballot_paths, "Ballot CSV files")->required();
    plan->add_option("--budget", budget, "Automation budget")->required();
    plan->add_option("--accuracy", accuracy_path, "Measured accuracy report (from rqa eval)");
    plan->add_option("--damping", damping, "Influence damping factor");
    plan->add_option("--total", vote_total, "Points each voter must distribute");

    std::string corpus_dir;
    std::string defects_path;
    bool correlate = false;
    auto* eval = app.add_subcommand("eval", "Measure operator accuracy via defect injection");
    eval->add_option("--corpus", corpus_dir, "Directory of clean documents")->required();
    eval->add_option("--defects", defects_path, "Defect config (JSON)");
    eval->add_flag("--correlate", correlate, "Report inter-operator correlation instead");

    std::string explain_op;
    auto* explain = app.add_subcommand("explain", "Show an operator's catalog entry");
    explain->add_option("op_id", explain_op, "Operator id")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (lint->parsed()) return cmd_lint(cfg, spec_paths);
        if (rank->parsed())
            return cmd_rank(cfg, ballot_paths, check_conflicts, vote_total, conflict_k);
        if (plan->parsed())
            return cmd_plan(cfg, ballot_paths, budget, accuracy_path, damping, vote_total);
        if (eval->parsed()) {
            if (!correlate && defects_path.empty())
                throw rqa::ConfigError("eval requires --defects (or --correlate)");
            return cmd_eval(cfg, corpus_dir, defects_path, correlate);
        }
        if (explain->parsed()) return cmd_explain(cfg, explain_op);
    } catch (const rqa::Error& e) {
        std::cerr << "rqa: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "rqa: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
