#include "modgen/chunk.hpp"

#include <array>
#include <cstring>

namespace modgen {

namespace {

struct PosEntry {
    Pos pos;
    const char* name;
};

constexpr std::array<PosEntry, 9> kPosTable = {{
    {Pos::NounGeneral, "NOUN_GENERAL"},
    {Pos::NounProper, "NOUN_PROPER"},
    {Pos::NounOther, "NOUN_OTHER"},
    {Pos::Verb, "VERB"},
    {Pos::Copula, "COPULA"},
    {Pos::Particle, "PARTICLE"},
    {Pos::Adjective, "ADJECTIVE"},
    {Pos::Symbol, "SYMBOL"},
    {Pos::Other, "OTHER"},
}};

bool is_noun(Pos p) {
    return p == Pos::NounGeneral || p == Pos::NounProper || p == Pos::NounOther;
}

bool contains_whitespace(std::string_view s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') return true;
        // U+3000 ideographic space: E3 80 80
        if (c == 0xE3 && i + 2 < s.size() &&
            static_cast<unsigned char>(s[i + 1]) == 0x80 &&
            static_cast<unsigned char>(s[i + 2]) == 0x80)
            return true;
    }
    return false;
}

// First maximal run of tokens satisfying pred.
template <typename Pred>
std::optional<TokenSpan> first_run(const Chunk& c, Pred pred) {
    const int n = static_cast<int>(c.tokens.size());
    for (int i = 0; i < n; ++i) {
        if (!pred(c.tokens[i].pos)) continue;
        int j = i + 1;
        while (j < n && pred(c.tokens[j].pos)) ++j;
        return TokenSpan{i, j};
    }
    return std::nullopt;
}

}  // namespace

const char* pos_name(Pos p) {
    for (const auto& e : kPosTable)
        if (e.pos == p) return e.name;
    return "OTHER";
}

std::optional<Pos> pos_from_name(std::string_view name) {
    for (const auto& e : kPosTable)
        if (name == e.name) return e.pos;
    return std::nullopt;
}

bool is_reserved_surface(std::string_view s) {
    if (s == kPad || s == kBos || s == kEos || s == kUnk || s == kInsOpen || s == kInsClose)
        return true;
    return s.size() > 6 && s.substr(0, 5) == "<unk:" && s.back() == '>';
}

std::vector<std::string> ParsedSentence::surfaces() const {
    std::vector<std::string> out;
    out.reserve(token_count());
    for (const auto& c : chunks)
        for (const auto& t : c.tokens) out.push_back(t.surface);
    return out;
}

std::string ParsedSentence::surface() const {
    std::string out;
    for (const auto& c : chunks)
        for (const auto& t : c.tokens) out += t.surface;
    return out;
}

std::size_t ParsedSentence::token_count() const {
    std::size_t n = 0;
    for (const auto& c : chunks) n += c.tokens.size();
    return n;
}

std::optional<std::string> validate(const ParsedSentence& s) {
    const int n = static_cast<int>(s.chunks.size());
    if (n == 0) return "sentence has zero chunks";
    int roots = 0;
    for (int i = 0; i < n; ++i) {
        const Chunk& c = s.chunks[i];
        if (c.tokens.empty()) return "chunk " + std::to_string(i) + " has no tokens";
        for (const Token& t : c.tokens) {
            if (t.surface.empty()) return "empty token surface in chunk " + std::to_string(i);
            if (contains_whitespace(t.surface))
                return "whitespace in token surface '" + t.surface + "'";
            if (is_reserved_surface(t.surface))
                return "reserved marker used as token surface '" + t.surface + "'";
        }
        if (c.dest == kRoot) {
            ++roots;
        } else if (c.dest == i) {
            return "self-dependency at chunk " + std::to_string(i);
        } else if (c.dest < i) {
            return "backward dependency at chunk " + std::to_string(i);
        } else if (c.dest >= n) {
            return "dest out of range at chunk " + std::to_string(i);
        }
    }
    if (roots != 1) return "sentence must have exactly one root chunk, found " + std::to_string(roots);
    // dest > self and a unique root make every dest walk terminate; nothing
    // further to check.
    return std::nullopt;
}

bool is_verb_phrase(const Chunk& c) {
    const int n = static_cast<int>(c.tokens.size());
    for (int i = 0; i < n; ++i) {
        if (c.tokens[i].pos == Pos::Verb) return true;
        if (is_noun(c.tokens[i].pos) && i + 1 < n && c.tokens[i + 1].pos == Pos::Copula)
            return true;
    }
    return false;
}

std::optional<TokenSpan> contains_modifiable_noun(const Chunk& c) {
    return first_run(c, [](Pos p) { return p == Pos::NounGeneral || p == Pos::NounProper; });
}

std::optional<TokenSpan> first_noun_run(const Chunk& c) {
    return first_run(c, is_noun);
}

bool contains_any_noun(const Chunk& c) {
    for (const Token& t : c.tokens)
        if (is_noun(t.pos)) return true;
    return false;
}

}  // namespace modgen
