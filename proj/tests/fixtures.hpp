#ifndef MODGEN_TESTS_FIXTURES_HPP
#define MODGEN_TESTS_FIXTURES_HPP

// Shared sentence builders and the two marked/extraction fixtures used
// across the suites.

#include <string>
#include <vector>

#include "modgen/chunk.hpp"

namespace fix {

using modgen::Chunk;
using modgen::ParsedSentence;
using modgen::Pos;
using modgen::Token;

inline Token tok(const char* s, Pos p) { return Token{s, p}; }

inline Chunk chunk(std::vector<Token> tokens, int dest) {
    Chunk c;
    c.tokens = std::move(tokens);
    c.dest = dest;
    return c;
}

inline ParsedSentence sentence(std::string id, std::vector<Chunk> chunks) {
    ParsedSentence s;
    s.id = std::move(id);
    s.chunks = std::move(chunks);
    return s;
}

// 彼に / 借りた / 車に / 乗りました  ("I got on a car I borrowed from him")
inline ParsedSentence car_sentence() {
    return sentence("car", {
        chunk({tok("彼", Pos::NounOther), tok("に", Pos::Particle)}, 1),
        chunk({tok("借り", Pos::Verb), tok("た", Pos::Other)}, 2),
        chunk({tok("車", Pos::NounGeneral), tok("に", Pos::Particle)}, 3),
        chunk({tok("乗り", Pos::Verb), tok("まし", Pos::Other), tok("た", Pos::Other)}, -1),
    });
}

// この / 先に / 進む / 方法を / 探しています
inline ParsedSentence ways_sentence() {
    return sentence("ways", {
        chunk({tok("この", Pos::Other)}, 1),
        chunk({tok("先", Pos::NounOther), tok("に", Pos::Particle)}, 2),
        chunk({tok("進む", Pos::Verb)}, 3),
        chunk({tok("方法", Pos::NounGeneral), tok("を", Pos::Particle)}, 4),
        chunk({tok("探し", Pos::Verb), tok("て", Pos::Particle), tok("い", Pos::Verb),
               tok("ます", Pos::Other)}, -1),
    });
}

// 方法を / 探しています  (the pseudo-simple side of ways_sentence)
inline ParsedSentence ways_simple_sentence() {
    return sentence("ways", {
        chunk({tok("方法", Pos::NounGeneral), tok("を", Pos::Particle)}, 1),
        chunk({tok("探し", Pos::Verb), tok("て", Pos::Particle), tok("い", Pos::Verb),
               tok("ます", Pos::Other)}, -1),
    });
}

inline std::vector<std::string> surfaces(const ParsedSentence& s) { return s.surfaces(); }

}  // namespace fix

#endif
