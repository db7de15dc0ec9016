#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "modgen/clause_extract.hpp"
#include "modgen/errors.hpp"
#include "modgen/insert_mark.hpp"
#include "planted.hpp"

using namespace modgen;
using fix::chunk;
using fix::sentence;
using fix::tok;

TEST_CASE("the ways fixture is marked on 方法") {
    auto s = fix::ways_simple_sentence();
    auto mark = detect_insertion_position(s);
    CHECK(mark.chunk_index == 0);
    CHECK(mark.noun_span == TokenSpan{0, 1});
    CHECK(render_marked(s, mark) ==
          std::vector<std::string>{"<ins>", "方法", "</ins>", "を", "探し", "て", "い", "ます"});
}

TEST_CASE("a sentence without nouns has no insertion point") {
    auto s = sentence("v", {chunk({tok("走り", Pos::Verb), tok("まし", Pos::Other),
                                   tok("た", Pos::Other)}, -1)});
    CHECK_THROWS_AS(detect_insertion_position(s), NoInsertionPoint);
}

TEST_CASE("a noun with a verb-phrase child is skipped; a later bare noun wins") {
    // 作った -> 服を (has VP child), 店で (bare noun), 買いました (root)
    auto s = sentence("skip", {
        chunk({tok("作っ", Pos::Verb), tok("た", Pos::Other)}, 1),
        chunk({tok("服", Pos::NounGeneral), tok("を", Pos::Particle)}, 3),
        chunk({tok("店", Pos::NounGeneral), tok("で", Pos::Particle)}, 3),
        chunk({tok("買い", Pos::Verb), tok("まし", Pos::Other), tok("た", Pos::Other)}, -1),
    });
    auto mark = detect_insertion_position(s);
    CHECK(mark.chunk_index == 2);
    CHECK(mark.noun_span == TokenSpan{0, 1});
}

TEST_CASE("when every noun has a verb-phrase child the leftmost noun wins") {
    // 作った -> 服を, 直した -> 店で: both nouns have VP children
    auto s = sentence("fallback", {
        chunk({tok("作っ", Pos::Verb), tok("た", Pos::Other)}, 1),
        chunk({tok("服", Pos::NounGeneral), tok("を", Pos::Particle)}, 4),
        chunk({tok("直し", Pos::Verb), tok("た", Pos::Other)}, 3),
        chunk({tok("店", Pos::NounGeneral), tok("で", Pos::Particle)}, 4),
        chunk({tok("買い", Pos::Verb), tok("まし", Pos::Other), tok("た", Pos::Other)}, -1),
    });
    auto mark = detect_insertion_position(s);
    CHECK(mark.chunk_index == 1);
}

TEST_CASE("NOUN_OTHER counts as a noun for detection") {
    auto s = sentence("pron", {
        chunk({tok("それ", Pos::NounOther), tok("は", Pos::Particle)}, 1),
        chunk({tok("良い", Pos::Adjective), tok("です", Pos::Other)}, -1),
    });
    auto mark = detect_insertion_position(s);
    CHECK(mark.chunk_index == 0);
    CHECK(mark.noun_span == TokenSpan{0, 1});
}

TEST_CASE("verb_only_children flag changes which children block a noun") {
    // 作った -> 英雄だ -> 彼は -> 笑います. Chunk 1 is a noun predicate with a
    // real verb child; chunk 2's only child is the copula chunk 1.
    auto s = sentence("flag", {
        chunk({tok("作っ", Pos::Verb), tok("た", Pos::Other)}, 1),
        chunk({tok("英雄", Pos::NounGeneral), tok("だ", Pos::Copula)}, 2),
        chunk({tok("彼", Pos::NounOther), tok("は", Pos::Particle)}, 3),
        chunk({tok("笑い", Pos::Verb), tok("ます", Pos::Other)}, -1),
    });
    SUBCASE("default: the copula chunk blocks 彼, every noun is blocked, min fallback") {
        auto mark = detect_insertion_position(s);
        CHECK(mark.chunk_index == 1);
    }
    SUBCASE("verb_only: the copula chunk does not block 彼") {
        MarkOptions verb_only;
        verb_only.verb_only_children = true;
        auto mark = detect_insertion_position(s, verb_only);
        CHECK(mark.chunk_index == 2);
    }
}

TEST_CASE("render_marked validates the mark") {
    auto s = fix::ways_simple_sentence();
    CHECK_THROWS_AS(render_marked(s, InsertionMark{5, {0, 1}}), ContractViolation);
    CHECK_THROWS_AS(render_marked(s, InsertionMark{0, {0, 9}}), ContractViolation);
    CHECK_THROWS_AS(render_marked(s, InsertionMark{0, {1, 1}}), ContractViolation);
}

TEST_CASE("marking then stripping restores the surface sequence") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto p = planted::make_planted(seed);
        auto mark = detect_insertion_position(p.sentence);
        auto marked = render_marked(p.sentence, mark);
        CHECK(strip_markers(marked) == p.sentence.surfaces());

        int opens = 0, closes = 0, open_at = -1, close_at = -1;
        for (int i = 0; i < static_cast<int>(marked.size()); ++i) {
            if (marked[i] == "<ins>") { ++opens; open_at = i; }
            if (marked[i] == "</ins>") { ++closes; close_at = i; }
        }
        CHECK(opens == 1);
        CHECK(closes == 1);
        CHECK(open_at < close_at);
    }
}

TEST_CASE("build_marked_pair uses extraction ground truth, not the detection rule") {
    auto rec = build_pair(fix::ways_sentence(), 3);
    REQUIRE(rec.has_value());
    auto pair = build_marked_pair(*rec);
    CHECK(pair.mode == PairMode::Marked);
    CHECK(pair.input ==
          std::vector<std::string>{"<ins>", "方法", "</ins>", "を", "探し", "て", "い", "ます"});
    CHECK(pair.output == std::vector<std::string>{"この", "先", "に", "進む", "方法", "を", "探し",
                                                  "て", "い", "ます"});
    CHECK(pair.clause_surface == "この 先 に 進む");
    CHECK_FALSE(validate(pair).has_value());
}

TEST_CASE("ground truth wins even when the detection rule would pick another noun") {
    // planted sentences may carry a bare pre-clause noun that Algorithm 2
    // would mark; the training-side mark must stay on the extracted noun.
    int disagreements = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        auto p = planted::make_planted(seed);
        auto rec = build_pair(p.sentence, 5);
        REQUIRE(rec.has_value());
        auto pair = build_marked_pair(*rec);
        REQUIRE_FALSE(validate(pair).has_value());

        auto detected = detect_insertion_position(rec->simple);
        if (detected.chunk_index != rec->simple_noun_chunk) ++disagreements;

        // reconstruction: stripped input with the clause at the mark == output
        std::vector<std::string> rebuilt;
        for (const std::string& t : pair.input) {
            if (t == "<ins>") {
                rebuilt.insert(rebuilt.end(), rec->clause_surface.begin(),
                               rec->clause_surface.end());
                continue;
            }
            if (t == "</ins>") continue;
            rebuilt.push_back(t);
        }
        CHECK(rebuilt == pair.output);
    }
    CHECK(disagreements > 0);  // the generator does produce such sentences
}

TEST_CASE("markers never appear on the output side of marked pairs") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto rec = build_pair(planted::make_planted(seed).sentence, 11);
        REQUIRE(rec.has_value());
        auto pair = build_marked_pair(*rec);
        for (const std::string& t : pair.output) {
            CHECK(t != "<ins>");
            CHECK(t != "</ins>");
        }
    }
}
