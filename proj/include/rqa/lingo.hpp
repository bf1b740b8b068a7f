#pragma once

// Language primitives shared by the lint operators: tokenization, sentence
// splitting, a small rule-based POS tagger, dictionary phrase matching and
// k-shingle similarity (exact Jaccard plus MinHash signatures).

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rqa/errors.hpp"

namespace rqa::lingo {

struct Span {
    std::size_t start = 0;
    std::size_t end = 0;  // exclusive

    bool operator==(const Span&) const = default;
};

enum class TokenKind { Word, Number, Punct };

struct Token {
    std::string text;
    std::string lower;  // case-folded form, used for all matching
    TokenKind kind = TokenKind::Word;
    Span span;
};

enum class PosTag { NOUN, VERB, MODAL, ADJ, ADV, NUM, DET, PRON, PREP, CONJ, PUNCT, OTHER };

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

namespace detail {

inline bool is_word_char(unsigned char c) { return std::isalnum(c) != 0; }

inline bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(),
                                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace detail

// Maximal alphanumeric runs become Word tokens; pure digit runs (optionally
// with one interior decimal point) become Number tokens; every other
// non-space character is a single Punct token.
inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (detail::is_word_char(c)) {
            std::size_t j = i;
            while (j < n && detail::is_word_char(static_cast<unsigned char>(text[j]))) ++j;
            // allow one decimal point inside a digit run: "3.5"
            if (j < n && text[j] == '.' && j + 1 < n &&
                std::isdigit(static_cast<unsigned char>(text[j + 1])) &&
                detail::all_digits(text.substr(i, j - i))) {
                std::size_t k = j + 1;
                while (k < n && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
                j = k;
            }
            std::string piece(text.substr(i, j - i));
            TokenKind kind = TokenKind::Word;
            std::string_view sv = piece;
            auto dot = sv.find('.');
            bool numeric = dot == std::string_view::npos
                               ? detail::all_digits(sv)
                               : detail::all_digits(sv.substr(0, dot)) &&
                                     detail::all_digits(sv.substr(dot + 1));
            if (numeric) kind = TokenKind::Number;
            tokens.push_back({piece, to_lower(piece), kind, {i, j}});
            i = j;
        } else {
            tokens.push_back({std::string(1, text[i]), std::string(1, static_cast<char>(std::tolower(c))),
                              TokenKind::Punct, {i, i + 1}});
            ++i;
        }
    }
    return tokens;
}

inline const std::vector<std::string>& default_abbreviations() {
    static const std::vector<std::string> abbr = {"e.g.", "i.e.", "etc.", "No."};
    return abbr;
}

// Sentence boundaries sit at ./!/? followed by whitespace and an uppercase
// letter or digit. Abbreviations from the stop list never end a sentence.
inline std::vector<Span> split_sentences(
    std::string_view text,
    const std::vector<std::string>& abbreviations = default_abbreviations()) {
    std::vector<Span> sentences;
    std::size_t start = 0;
    const std::size_t n = text.size();

    auto ends_with_abbreviation = [&](std::size_t end) {
        for (const auto& a : abbreviations) {
            if (end + 1 < a.size()) continue;
            std::string_view tail = text.substr(end + 1 - a.size(), a.size());
            if (to_lower(tail) == to_lower(a)) {
                // must not be part of a longer word
                std::size_t before = end + 1 - a.size();
                if (before == 0 ||
                    !detail::is_word_char(static_cast<unsigned char>(text[before - 1])))
                    return true;
            }
        }
        return false;
    };

    for (std::size_t i = 0; i < n; ++i) {
        char c = text[i];
        if (c != '.' && c != '!' && c != '?') continue;
        if (ends_with_abbreviation(i)) continue;
        std::size_t j = i + 1;
        while (j < n && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        bool at_end = j >= n;
        bool next_starts_sentence =
            !at_end && j > i + 1 &&
            (std::isupper(static_cast<unsigned char>(text[j])) ||
             std::isdigit(static_cast<unsigned char>(text[j])));
        if (at_end || next_starts_sentence) {
            sentences.push_back({start, i + 1});
            start = j;
            i = j > 0 ? j - 1 : 0;
        }
    }
    // trailing material without closing punctuation is its own sentence
    std::size_t tail_start = start;
    while (tail_start < n && std::isspace(static_cast<unsigned char>(text[tail_start]))) ++tail_start;
    if (tail_start < n) sentences.push_back({tail_start, n});
    return sentences;
}

namespace lexicon {

inline const std::unordered_set<std::string>& modals() {
    static const std::unordered_set<std::string> s = {
        "shall", "must", "should", "will", "may", "can", "could", "would", "might"};
    return s;
}

inline const std::unordered_set<std::string>& determiners() {
    static const std::unordered_set<std::string> s = {
        "a", "an", "the", "this", "that", "these", "those", "each",
        "every", "all", "any", "some", "no", "both", "either", "neither"};
    return s;
}

inline const std::unordered_set<std::string>& prepositions() {
    static const std::unordered_set<std::string> s = {
        "of", "in", "on", "at", "to", "from", "by", "with", "for", "into",
        "onto", "over", "under", "within", "without", "between", "among",
        "through", "during", "before", "after", "above", "below", "per",
        "via", "upon", "about", "against", "as"};
    return s;
}

inline const std::unordered_set<std::string>& conjunctions() {
    static const std::unordered_set<std::string> s = {
        "and", "or", "but", "nor", "if", "while", "when", "unless",
        "because", "although", "whereas", "than"};
    return s;
}

inline const std::unordered_set<std::string>& pronouns() {
    static const std::unordered_set<std::string> s = {
        "it", "its", "they", "them", "their", "he", "she", "we", "us",
        "our", "you", "your", "i", "me", "my", "who", "which", "whom", "whose"};
    return s;
}

// Seed verb list covering common requirements vocabulary. Extendable via
// operator configuration; the tagger defaults unknown words to NOUN.
inline const std::unordered_set<std::string>& verbs() {
    static const std::unordered_set<std::string> s = {
        "be", "is", "are", "was", "were", "been", "being", "have", "has",
        "had", "do", "does", "did", "respond", "log", "notify", "provide",
        "support", "display", "store", "send", "receive", "record", "report",
        "process", "handle", "verify", "validate", "ensure", "allow",
        "enable", "perform", "execute", "generate", "update", "delete",
        "create", "read", "write", "transmit", "monitor", "measure",
        "sample", "operate", "maintain", "install", "comply", "refer",
        "use", "include", "contain", "specify", "define", "start", "stop",
        "silence", "alert", "trigger", "detect", "check", "accept",
        "reject", "return", "retry", "shut", "open", "close", "restart",
        "resume", "suspend", "archive", "encrypt", "authenticate", "issue",
        "emit", "persist", "synchronize", "calibrate", "activate",
        "deactivate", "mute", "escalate"};
    return s;
}

inline const std::vector<std::string>& number_words() {
    static const std::vector<std::string> s = {
        "one", "two", "three", "four", "five", "six",
        "seven", "eight", "nine", "ten", "eleven", "twelve"};
    return s;
}

}  // namespace lexicon

inline bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Closed-class lexicon decides first, then token kind, then suffix
// heuristics; everything else defaults to NOUN.
inline std::vector<PosTag> pos_tag(const std::vector<Token>& tokens) {
    std::vector<PosTag> tags;
    tags.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (t.kind == TokenKind::Punct) {
            tags.push_back(PosTag::PUNCT);
            continue;
        }
        const std::string& w = t.lower;
        if (lexicon::modals().contains(w)) tags.push_back(PosTag::MODAL);
        else if (lexicon::determiners().contains(w)) tags.push_back(PosTag::DET);
        else if (lexicon::prepositions().contains(w)) tags.push_back(PosTag::PREP);
        else if (lexicon::conjunctions().contains(w)) tags.push_back(PosTag::CONJ);
        else if (lexicon::pronouns().contains(w)) tags.push_back(PosTag::PRON);
        else if (lexicon::verbs().contains(w)) tags.push_back(PosTag::VERB);
        else if (t.kind == TokenKind::Number) tags.push_back(PosTag::NUM);
        else if (ends_with(w, "ly")) tags.push_back(PosTag::ADV);
        else if (ends_with(w, "ness") || ends_with(w, "tion")) tags.push_back(PosTag::NOUN);
        else if (ends_with(w, "able") || ends_with(w, "ive")) tags.push_back(PosTag::ADJ);
        else tags.push_back(PosTag::NOUN);
    }
    return tags;
}

struct DictMatch {
    std::string phrase;
    Span span;  // within the tokenized text
    std::size_t first_token = 0;
    std::size_t token_count = 0;
};

// Case-insensitive phrase matching over the token stream. Longest match wins
// at each position; matches never overlap and come back sorted by position.
inline std::vector<DictMatch> dict_match(const std::vector<Token>& tokens,
                                         const std::set<std::string>& dictionary) {
    // index phrases by token sequence
    std::vector<std::vector<std::string>> phrases;
    std::size_t max_len = 1;
    for (const auto& p : dictionary) {
        std::vector<std::string> words;
        for (const auto& t : tokenize(p))
            if (t.kind != TokenKind::Punct) words.push_back(t.lower);
        if (words.empty()) continue;
        max_len = std::max(max_len, words.size());
        phrases.push_back(std::move(words));
    }

    std::vector<DictMatch> out;
    std::size_t i = 0;
    while (i < tokens.size()) {
        std::size_t best_len = 0;
        const std::vector<std::string>* best = nullptr;
        for (const auto& words : phrases) {
            if (words.size() <= best_len || i + words.size() > tokens.size()) continue;
            bool ok = true;
            for (std::size_t j = 0; j < words.size(); ++j) {
                if (tokens[i + j].lower != words[j]) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                best_len = words.size();
                best = &words;
            }
        }
        if (best) {
            std::string phrase;
            for (std::size_t j = 0; j < best->size(); ++j) {
                if (j) phrase += ' ';
                phrase += (*best)[j];
            }
            out.push_back({phrase,
                           {tokens[i].span.start, tokens[i + best_len - 1].span.end},
                           i,
                           best_len});
            i += best_len;
        } else {
            ++i;
        }
    }
    return out;
}

// Stable 64-bit hash (FNV-1a) so shingle sets and MinHash signatures are
// reproducible across platforms and runs.
inline std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 14695981039346656037ull) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct ShingleSet {
    int k = 3;
    std::set<std::uint64_t> shingles;

    bool empty() const { return shingles.empty(); }
};

// Hashed k-grams over the lowercase Word/Number tokens; Punct is excluded.
inline ShingleSet shingles(const std::vector<Token>& tokens, int k) {
    if (k < 1) throw InvalidK("shingle length must be >= 1, got " + std::to_string(k));
    ShingleSet out;
    out.k = k;
    std::vector<const std::string*> words;
    for (const auto& t : tokens)
        if (t.kind != TokenKind::Punct) words.push_back(&t.lower);
    if (words.size() < static_cast<std::size_t>(k)) return out;
    for (std::size_t i = 0; i + k <= words.size(); ++i) {
        std::uint64_t h = 14695981039346656037ull;
        for (int j = 0; j < k; ++j) {
            h = fnv1a(*words[i + j], h);
            h = fnv1a("\x1f", h);  // gram separator
        }
        out.shingles.insert(h);
    }
    return out;
}

inline double jaccard(const ShingleSet& a, const ShingleSet& b) {
    if (a.k != b.k)
        throw MixedShingleLength("cannot compare shingle sets with k=" + std::to_string(a.k) +
                                 " and k=" + std::to_string(b.k));
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    std::size_t inter = 0;
    for (auto h : a.shingles) inter += b.shingles.count(h);
    std::size_t uni = a.shingles.size() + b.shingles.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

using MinHashSignature = std::vector<std::uint64_t>;

// Deterministic for (set, num_hashes, seed). Component i is the minimum of
// a_i * h + b_i over the set's shingle hashes.
inline MinHashSignature minhash_signature(const ShingleSet& s, int num_hashes, std::uint64_t seed) {
    if (num_hashes < 1) throw InvalidK("num_hashes must be >= 1");
    if (s.empty()) throw EmptySet("MinHash signature undefined for an empty shingle set");
    std::mt19937_64 rng(seed);
    MinHashSignature sig(static_cast<std::size_t>(num_hashes));
    for (int i = 0; i < num_hashes; ++i) {
        std::uint64_t a = rng() | 1ull;  // odd multiplier
        std::uint64_t b = rng();
        std::uint64_t best = ~0ull;
        for (auto h : s.shingles) best = std::min(best, a * h + b);
        sig[static_cast<std::size_t>(i)] = best;
    }
    return sig;
}

inline double minhash_estimate(const MinHashSignature& a, const MinHashSignature& b) {
    if (a.size() != b.size() || a.empty())
        throw MixedShingleLength("signatures must have equal, non-zero length");
    std::size_t match = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] == b[i]) ++match;
    return static_cast<double>(match) / static_cast<double>(a.size());
}

}  // namespace rqa::lingo
