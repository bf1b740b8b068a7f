#include <doctest.h>

#include <random>

#include "rqa/lingo.hpp"

using namespace rqa::lingo;

TEST_CASE("tokenize: empty input") { CHECK(tokenize("").empty()); }

TEST_CASE("tokenize: words, numbers and punctuation") {
    auto tokens = tokenize("two (2)");
    REQUIRE(tokens.size() == 4);
    CHECK(tokens[0].text == "two");
    CHECK(tokens[0].kind == TokenKind::Word);
    CHECK(tokens[1].text == "(");
    CHECK(tokens[1].kind == TokenKind::Punct);
    CHECK(tokens[2].text == "2");
    CHECK(tokens[2].kind == TokenKind::Number);
    CHECK(tokens[3].text == ")");
}

TEST_CASE("tokenize: identifiers split at punctuation") {
    auto tokens = tokenize("R-1");
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0].text == "R");
    CHECK(tokens[0].kind == TokenKind::Word);
    CHECK(tokens[1].text == "-");
    CHECK(tokens[2].text == "1");
    CHECK(tokens[2].kind == TokenKind::Number);
}

TEST_CASE("tokenize: decimal numbers stay one token") {
    auto tokens = tokenize("3.5 Hz");
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[0].text == "3.5");
    CHECK(tokens[0].kind == TokenKind::Number);
}

TEST_CASE("tokenize: spans are ordered and non-overlapping") {
    auto tokens = tokenize("The system shall respond within 2 seconds (TBD).");
    for (std::size_t i = 1; i < tokens.size(); ++i)
        CHECK(tokens[i - 1].span.end <= tokens[i].span.start);
    for (const auto& t : tokens) CHECK(t.span.end > t.span.start);
}

TEST_CASE("split_sentences: boundary before uppercase") {
    CHECK(split_sentences("A. B.").size() == 2);
}

TEST_CASE("split_sentences: abbreviation stop list") {
    CHECK(split_sentences("e.g. pumps.").size() == 1);
    CHECK(split_sentences("See No. 4 for details.").size() == 1);
}

TEST_CASE("split_sentences: empty input") { CHECK(split_sentences("").empty()); }

TEST_CASE("split_sentences: boundary before digit") {
    CHECK(split_sentences("Stop here. 4 pumps remain.").size() == 2);
}

TEST_CASE("pos_tag: closed-class lexicon") {
    auto tags = pos_tag(tokenize("shall"));
    REQUIRE(tags.size() == 1);
    CHECK(tags[0] == PosTag::MODAL);
}

TEST_CASE("pos_tag: -ly suffix") {
    auto tags = pos_tag(tokenize("quickly"));
    REQUIRE(tags.size() == 1);
    CHECK(tags[0] == PosTag::ADV);
}

TEST_CASE("pos_tag: typical requirement sentence") {
    auto tags = pos_tag(tokenize("The system shall respond"));
    REQUIRE(tags.size() == 4);
    CHECK(tags[0] == PosTag::DET);
    CHECK(tags[1] == PosTag::NOUN);
    CHECK(tags[2] == PosTag::MODAL);
    CHECK(tags[3] == PosTag::VERB);
}

TEST_CASE("pos_tag: output length equals input length") {
    auto tokens = tokenize("Approximately 3 pumps shall normally run, e.g. at 10:30.");
    CHECK(pos_tag(tokens).size() == tokens.size());
}

TEST_CASE("dict_match: single word") {
    auto matches = dict_match(tokenize("respond quickly"), {"quickly"});
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].phrase == "quickly");
}

TEST_CASE("dict_match: empty dictionary") {
    CHECK(dict_match(tokenize("anything at all"), {}).empty());
}

TEST_CASE("dict_match: longest match wins") {
    auto matches =
        dict_match(tokenize("as soon as possible"), {"as soon as possible", "soon"});
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].phrase == "as soon as possible");
}

TEST_CASE("dict_match: matches sorted and non-overlapping") {
    auto matches = dict_match(tokenize("usually the pump runs, usually quickly"),
                              {"usually", "quickly"});
    REQUIRE(matches.size() == 3);
    for (std::size_t i = 1; i < matches.size(); ++i)
        CHECK(matches[i - 1].span.end <= matches[i].span.start);
}

TEST_CASE("shingles: enumeration by hand") {
    auto s = shingles(tokenize("a b c"), 2);
    CHECK(s.shingles.size() == 2);
}

TEST_CASE("shingles: too few tokens") {
    CHECK(shingles(tokenize("a"), 2).empty());
}

TEST_CASE("shingles: determinism and k validation") {
    auto a = shingles(tokenize("the pump shall run"), 3);
    auto b = shingles(tokenize("the pump shall run"), 3);
    CHECK(a.shingles == b.shingles);
    CHECK_THROWS_AS(shingles(tokenize("x"), 0), rqa::InvalidK);
}

TEST_CASE("jaccard: identity, disjoint, hand-computed overlap") {
    ShingleSet a{2, {1, 2, 3, 4, 5}};
    ShingleSet b{2, {1, 2, 3, 4, 5}};
    CHECK(jaccard(a, b) == doctest::Approx(1.0));
    ShingleSet c{2, {6, 7, 8, 9, 10}};
    CHECK(jaccard(a, c) == doctest::Approx(0.0));
    // |a|=5, |b|=5, |a n b|=3 -> 3/7
    ShingleSet d{2, {1, 2, 3, 11, 12}};
    CHECK(jaccard(a, d) == doctest::Approx(3.0 / 7.0));
}

TEST_CASE("jaccard: empty conventions and k mismatch") {
    ShingleSet e1{3, {}}, e2{3, {}}, f{3, {1}};
    CHECK(jaccard(e1, e2) == doctest::Approx(1.0));
    CHECK(jaccard(e1, f) == doctest::Approx(0.0));
    ShingleSet g{4, {1}};
    CHECK_THROWS_AS(jaccard(f, g), rqa::MixedShingleLength);
}

TEST_CASE("jaccard: symmetric and bounded on random sets") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 50; ++it) {
        ShingleSet a{3, {}}, b{3, {}};
        for (int i = 0; i < 20; ++i) {
            a.shingles.insert(rng() % 40);
            b.shingles.insert(rng() % 40);
        }
        double ab = jaccard(a, b);
        CHECK(ab == jaccard(b, a));
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
        CHECK(jaccard(a, a) == doctest::Approx(1.0));
    }
}

TEST_CASE("minhash: identity and empty set") {
    ShingleSet a{2, {10, 20, 30}};
    auto s1 = minhash_signature(a, 64, 7);
    auto s2 = minhash_signature(a, 64, 7);
    CHECK(s1 == s2);
    CHECK(minhash_estimate(s1, s2) == doctest::Approx(1.0));
    ShingleSet empty{2, {}};
    CHECK_THROWS_AS(minhash_signature(empty, 64, 7), rqa::EmptySet);
}

TEST_CASE("minhash: estimate near exact jaccard for the 3/7 pair") {
    ShingleSet a{2, {1, 2, 3, 4, 5}};
    ShingleSet d{2, {1, 2, 3, 11, 12}};
    double exact = jaccard(a, d);
    for (std::uint64_t seed : {42ull, 43ull}) {
        auto sa = minhash_signature(a, 128, seed);
        auto sd = minhash_signature(d, 128, seed);
        CHECK(std::abs(minhash_estimate(sa, sd) - exact) <= 0.15);
    }
}

// Property: over random pairs with exact J >= 0.2, the 256-hash estimate has
// mean absolute error <= 0.1.
TEST_CASE("minhash: convergence on random shingle sets") {
    std::mt19937_64 rng(99);
    double total_err = 0;
    int samples = 0;
    while (samples < 100) {
        ShingleSet base{3, {}};
        for (int i = 0; i < 30; ++i) base.shingles.insert(rng());
        ShingleSet other = base;
        // perturb: drop and add a few elements
        int churn = static_cast<int>(rng() % 12);
        for (int i = 0; i < churn && !other.shingles.empty(); ++i)
            other.shingles.erase(other.shingles.begin());
        for (int i = 0; i < churn; ++i) other.shingles.insert(rng());
        double exact = jaccard(base, other);
        if (exact < 0.2) continue;
        auto sa = minhash_signature(base, 256, 5);
        auto sb = minhash_signature(other, 256, 5);
        total_err += std::abs(minhash_estimate(sa, sb) - exact);
        ++samples;
    }
    CHECK(total_err / samples <= 0.1);
}
