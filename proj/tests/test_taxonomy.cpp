#include <doctest.h>

#include <algorithm>
#include <random>

#include "rqa/taxonomy.hpp"

using namespace rqa::taxonomy;

TEST_CASE("seed model: loads and carries the attested edges") {
    auto model = seed_quality_model();
    CHECK(model.attributes.size() == 12);
    auto has_edge = [&](const std::string& s, const std::string& t, EdgeSign sign) {
        return std::any_of(model.edges.begin(), model.edges.end(), [&](const InfluenceEdge& e) {
            return e.source == s && e.target == t && e.sign == sign;
        });
    };
    CHECK(has_edge("atomic", "design_independent", EdgeSign::Positive));
    CHECK(has_edge("atomic", "traceable", EdgeSign::Positive));
    CHECK(has_edge("atomic", "precise", EdgeSign::Positive));
    CHECK(has_edge("unambiguous", "understandable", EdgeSign::Negative));
    CHECK(has_edge("design_independent", "verifiable", EdgeSign::Positive));
    CHECK(model.edges.size() == 5);
}

TEST_CASE("load_quality_model: self loop rejected") {
    std::string text =
        "[attribute]\nid = x\n[edge]\nsource = x\ntarget = x\nsign = +\n";
    CHECK_THROWS_AS(load_quality_model(text), rqa::SelfLoop);
}

TEST_CASE("load_quality_model: unknown edge endpoint") {
    std::string text =
        "[attribute]\nid = x\n[edge]\nsource = x\ntarget = y\nsign = +\n";
    CHECK_THROWS_AS(load_quality_model(text), rqa::UnknownAttribute);
}

TEST_CASE("load_quality_model: duplicate attribute") {
    CHECK_THROWS_AS(load_quality_model("[attribute]\nid = x\n[attribute]\nid = x\n"),
                    rqa::DuplicateAttribute);
}

TEST_CASE("load_quality_model: empty model is valid") {
    auto model = load_quality_model("");
    CHECK(model.attributes.empty());
    CHECK(model.edges.empty());
}

TEST_CASE("aggregate_votes: single voter") {
    Ballot b{"v1", {{"verifiable", 60}, {"complete", 40}}};
    auto ranking = aggregate_votes({b});
    REQUIRE(ranking.size() == 2);
    CHECK(ranking[0].attribute_id == "verifiable");
    CHECK(ranking[0].position == 1);
    CHECK(ranking[1].attribute_id == "complete");
    CHECK(ranking[1].position == 2);
}

TEST_CASE("aggregate_votes: tie broken by id") {
    Ballot b1{"v1", {{"a", 50}, {"b", 50}}};
    Ballot b2{"v2", {{"a", 50}, {"b", 50}}};
    auto ranking = aggregate_votes({b1, b2});
    CHECK(ranking[0].attribute_id == "a");
    CHECK(ranking[1].attribute_id == "b");
}

TEST_CASE("aggregate_votes: bad sum and no ballots") {
    CHECK_THROWS_AS(aggregate_votes({}), rqa::NoBallots);
    Ballot b{"v1", {{"a", 90}}};
    CHECK_THROWS_AS(aggregate_votes({b}), rqa::BadBallotSum);
}

namespace {

// Independent oracle: sum maps, sort with the same tie rule.
Ranking oracle_aggregate(const std::vector<Ballot>& ballots) {
    std::map<std::string, long> sums;
    for (const auto& b : ballots)
        for (const auto& [a, p] : b.points) sums[a] += p;
    std::vector<std::pair<long, std::string>> rows;
    for (const auto& [a, s] : sums) rows.push_back({-s, a});
    std::sort(rows.begin(), rows.end());
    Ranking r;
    for (std::size_t i = 0; i < rows.size(); ++i)
        r.push_back({rows[i].second, -rows[i].first, static_cast<int>(i + 1)});
    return r;
}

std::vector<Ballot> random_ballots(std::mt19937_64& rng, int voters, int attrs, int total) {
    std::vector<Ballot> ballots;
    for (int v = 0; v < voters; ++v) {
        Ballot b;
        b.voter_id = "v" + std::to_string(v);
        int remaining = total;
        for (int a = 0; a < attrs; ++a) {
            std::string id = "attr" + std::to_string(a < 10 ? 0 : a / 10) + std::to_string(a % 10);
            int pts = a == attrs - 1 ? remaining
                                     : static_cast<int>(rng() % (remaining + 1));
            b.points[id] = pts;
            remaining -= pts;
        }
        ballots.push_back(std::move(b));
    }
    return ballots;
}

}  // namespace

TEST_CASE("aggregate_votes: matches brute-force oracle on random ballots") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 25; ++it) {
        auto ballots = random_ballots(rng, 3, 8, 100);
        CHECK(aggregate_votes(ballots) == oracle_aggregate(ballots));
    }
}

TEST_CASE("aggregate_votes: permutation invariant") {
    std::mt19937_64 rng(13);
    auto ballots = random_ballots(rng, 4, 6, 100);
    auto shuffled = ballots;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(aggregate_votes(ballots) == aggregate_votes(shuffled));
}

TEST_CASE("aggregate_votes: scaling ballots preserves order") {
    std::mt19937_64 rng(17);
    auto ballots = random_ballots(rng, 3, 6, 100);
    auto scaled = ballots;
    for (auto& b : scaled)
        for (auto& [a, p] : b.points) p *= 3;
    auto r1 = aggregate_votes(ballots, 100);
    auto r2 = aggregate_votes(scaled, 300);
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i)
        CHECK(r1[i].attribute_id == r2[i].attribute_id);
}

TEST_CASE("effective_weights: formula by hand") {
    QualityModel model = load_quality_model(
        "[attribute]\nid = a\n[attribute]\nid = b\n[edge]\nsource = a\ntarget = b\nsign = +\n");
    Ranking ranking = {{"b", 30, 1}, {"a", 10, 2}};
    auto eff = effective_weights(ranking, model, 0.5);
    CHECK(eff["a"] == doctest::Approx(25.0));  // 10 + 0.5*30
    CHECK(eff["b"] == doctest::Approx(30.0));
}

TEST_CASE("effective_weights: no edges or damping 0 is identity") {
    QualityModel empty;
    Ranking ranking = {{"a", 40, 1}, {"b", 10, 2}};
    auto eff = effective_weights(ranking, empty, 0.5);
    CHECK(eff["a"] == doctest::Approx(40.0));
    CHECK(eff["b"] == doctest::Approx(10.0));

    auto model = load_quality_model(
        "[attribute]\nid = a\n[attribute]\nid = b\n[edge]\nsource = a\ntarget = b\nsign = -\n");
    auto eff0 = effective_weights(ranking, model, 0.0);
    CHECK(eff0["a"] == doctest::Approx(40.0));
}

TEST_CASE("effective_weights: negative influence floored at zero") {
    auto model = load_quality_model(
        "[attribute]\nid = a\n[attribute]\nid = b\n[edge]\nsource = a\ntarget = b\nsign = -\n");
    Ranking ranking = {{"b", 100, 1}, {"a", 10, 2}};
    auto eff = effective_weights(ranking, model, 1.0);
    CHECK(eff["a"] == doctest::Approx(0.0));  // 10 - 100, floored
}

namespace {

QualityModel conflict_model() {
    return load_quality_model(
        "[attribute]\nid = a\n[attribute]\nid = b\n[attribute]\nid = c\n[attribute]\nid = d\n"
        "[edge]\nsource = d\ntarget = a\nsign = +\n"
        "[edge]\nsource = b\ntarget = c\nsign = +\n");
}

}  // namespace

TEST_CASE("detect_ranking_conflicts: qualifying positive edge") {
    auto model = conflict_model();
    Ranking ranking = {{"a", 40, 1}, {"b", 30, 2}, {"c", 20, 3}, {"d", 10, 4}};
    auto conflicts = detect_ranking_conflicts(ranking, model, 1);
    REQUIRE(conflicts.size() == 1);
    CHECK(conflicts[0].source == "d");
    CHECK(conflicts[0].target == "a");
    CHECK(conflicts[0].source_position == 4);
    CHECK(conflicts[0].target_position == 1);
}

TEST_CASE("detect_ranking_conflicts: none when sources rank well") {
    auto model = load_quality_model(
        "[attribute]\nid = a\n[attribute]\nid = b\n[attribute]\nid = c\n[attribute]\nid = d\n"
        "[edge]\nsource = a\ntarget = b\nsign = +\n");
    Ranking ranking = {{"a", 40, 1}, {"b", 30, 2}, {"c", 20, 3}, {"d", 10, 4}};
    CHECK(detect_ranking_conflicts(ranking, model, 1).empty());
}

TEST_CASE("detect_ranking_conflicts: k = n reports every positive edge") {
    auto model = conflict_model();
    Ranking ranking = {{"a", 40, 1}, {"b", 30, 2}, {"c", 20, 3}, {"d", 10, 4}};
    auto conflicts = detect_ranking_conflicts(ranking, model, 4);
    CHECK(conflicts.size() == 2);
}

TEST_CASE("detect_ranking_conflicts: monotone in k") {
    auto model = conflict_model();
    Ranking ranking = {{"a", 40, 1}, {"b", 30, 2}, {"c", 20, 3}, {"d", 10, 4}};
    std::size_t prev = 0;
    for (int k = 1; k <= 4; ++k) {
        auto conflicts = detect_ranking_conflicts(ranking, model, k);
        CHECK(conflicts.size() >= prev);
        prev = conflicts.size();
    }
}

TEST_CASE("parse_ballots_csv: grouping and validation") {
    auto ballots = parse_ballots_csv("v1,a,60\nv1,b,40\nv2,a,100\n");
    REQUIRE(ballots.size() == 2);
    CHECK(ballots[0].voter_id == "v1");
    CHECK(ballots[0].points.at("a") == 60);
    CHECK(ballots[1].points.at("a") == 100);
    CHECK_THROWS_AS(parse_ballots_csv("v1,a\n"), rqa::SchemaError);
}
