#ifndef MODGEN_CHUNK_HPP
#define MODGEN_CHUNK_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modgen {

// Coarse POS tagset. Fine-grained tagger output (IPAdic etc.) is collapsed
// to these nine classes by whatever converter produces the corpus files.
enum class Pos {
    NounGeneral,
    NounProper,
    NounOther,
    Verb,
    Copula,
    Particle,
    Adjective,
    Symbol,
    Other,
};

const char* pos_name(Pos p);
std::optional<Pos> pos_from_name(std::string_view name);

// Reserved vocabulary items. Token surfaces may not collide with these.
inline constexpr const char* kPad = "<pad>";
inline constexpr const char* kBos = "<s>";
inline constexpr const char* kEos = "</s>";
inline constexpr const char* kUnk = "<unk>";
inline constexpr const char* kInsOpen = "<ins>";
inline constexpr const char* kInsClose = "</ins>";

// True for <pad>, <s>, </s>, <unk>, <ins>, </ins> and any "<unk:...>" dump form.
bool is_reserved_surface(std::string_view s);

struct Token {
    std::string surface;
    Pos pos = Pos::Other;
};

// Index of the root chunk's dependency target.
inline constexpr int kRoot = -1;

// A bunsetsu: content word plus trailing function words, depending on a
// strictly later chunk (head-final, projective) or on the root sentinel.
struct Chunk {
    std::vector<Token> tokens;
    int dest = kRoot;
};

struct ParsedSentence {
    std::string id;
    std::vector<Chunk> chunks;

    std::vector<std::string> surfaces() const;
    std::string surface() const;  // concatenation, no separators
    std::size_t token_count() const;
};

// Half-open token index range inside one chunk.
struct TokenSpan {
    int begin = 0;
    int end = 0;
    bool operator==(const TokenSpan&) const = default;
};

// Validates per-chunk and per-sentence invariants; returns a reason on failure.
std::optional<std::string> validate(const ParsedSentence& s);

// Chunk contains a VERB token, or a NOUN_* token immediately followed by a
// COPULA token (noun predicate).
bool is_verb_phrase(const Chunk& c);

// First maximal run of consecutive NOUN_GENERAL / NOUN_PROPER tokens.
std::optional<TokenSpan> contains_modifiable_noun(const Chunk& c);

// First maximal run of consecutive NOUN_* tokens of any kind. Broader test
// used by the insertion-position rule, which asks only for "a noun".
std::optional<TokenSpan> first_noun_run(const Chunk& c);

bool contains_any_noun(const Chunk& c);

}  // namespace modgen

#endif
