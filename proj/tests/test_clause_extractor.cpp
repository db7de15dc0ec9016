#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "modgen/clause_extract.hpp"
#include "modgen/errors.hpp"
#include "planted.hpp"

using namespace modgen;
using fix::chunk;
using fix::sentence;
using fix::tok;

namespace {

void check_clause_invariants(const ParsedSentence& s, const ModifierClause& c) {
    REQUIRE_FALSE(c.chunk_indices.empty());
    CHECK(c.contains(c.head_index));
    for (int idx : c.chunk_indices) CHECK(idx < c.modified_index);
    CHECK(s.chunks[c.head_index].dest == c.modified_index);
    CHECK(is_verb_phrase(s.chunks[c.head_index]));
    CHECK(contains_modifiable_noun(s.chunks[c.modified_index]).has_value());
    for (int idx : c.chunk_indices) {
        if (idx == c.head_index) continue;
        CHECK(c.contains(s.chunks[idx].dest));
    }
}

// Two clauses: 彼に/借りた -> 車に and 昨日/買った -> 服を, both hanging off 乗せました.
ParsedSentence two_clause_sentence() {
    return sentence("two", {
        chunk({tok("彼", Pos::NounOther), tok("に", Pos::Particle)}, 1),
        chunk({tok("借り", Pos::Verb), tok("た", Pos::Other)}, 2),
        chunk({tok("車", Pos::NounGeneral), tok("に", Pos::Particle)}, 6),
        chunk({tok("昨日", Pos::NounOther)}, 4),
        chunk({tok("買っ", Pos::Verb), tok("た", Pos::Other)}, 5),
        chunk({tok("服", Pos::NounGeneral), tok("を", Pos::Particle)}, 6),
        chunk({tok("乗せ", Pos::Verb), tok("まし", Pos::Other), tok("た", Pos::Other)}, -1),
    });
}

}  // namespace

TEST_CASE("car fixture yields the borrowed-from-him clause") {
    auto s = fix::car_sentence();
    auto candidates = find_modifier_candidates(s);
    REQUIRE(candidates.size() == 1);
    const ModifierClause& c = candidates[0];
    CHECK(c.chunk_indices == std::vector<int>{0, 1});
    CHECK(c.head_index == 1);
    CHECK(c.modified_index == 2);
    CHECK(c.noun_span == TokenSpan{0, 1});
    check_clause_invariants(s, c);
}

TEST_CASE("ways fixture yields the three-chunk clause") {
    auto s = fix::ways_sentence();
    auto candidates = find_modifier_candidates(s);
    REQUIRE(candidates.size() == 1);
    CHECK(candidates[0].chunk_indices == std::vector<int>{0, 1, 2});
    CHECK(candidates[0].head_index == 2);
    CHECK(candidates[0].modified_index == 3);
    check_clause_invariants(s, candidates[0]);
}

TEST_CASE("a sentence without verb phrases has no candidates") {
    auto s = sentence("nv", {
        chunk({tok("車", Pos::NounGeneral), tok("に", Pos::Particle)}, 1),
        chunk({tok("静か", Pos::Other), tok("です", Pos::Other)}, -1),
    });
    CHECK(find_modifier_candidates(s).empty());
}

TEST_CASE("seven-chunk sentence with two verb heads yields exactly two candidates") {
    auto s = two_clause_sentence();
    auto candidates = find_modifier_candidates(s);

    auto pairs = planted::head_noun_pairs(s);
    REQUIRE(pairs.size() == 2);
    REQUIRE(candidates.size() == pairs.size());

    // discovery order: head index descending
    CHECK(candidates[0].head_index == 4);
    CHECK(candidates[0].chunk_indices == std::vector<int>{3, 4});
    CHECK(candidates[0].modified_index == 5);
    CHECK(candidates[1].head_index == 1);
    CHECK(candidates[1].chunk_indices == std::vector<int>{0, 1});
    CHECK(candidates[1].modified_index == 2);

    for (std::size_t k = 0; k < candidates.size(); ++k) {
        check_clause_invariants(s, candidates[k]);
        CHECK(candidates[k].head_index == pairs[k].first);
        CHECK(candidates[k].modified_index == pairs[k].second);
        CHECK(candidates[k].chunk_indices == planted::subtree_of(s, candidates[k].head_index));
    }
}

TEST_CASE("literal pseudocode mode never flushes the final accumulation") {
    ExtractOptions literal;
    literal.literal_pseudocode = true;

    // single clause: read literally, nothing comes out
    CHECK(find_modifier_candidates(fix::car_sentence(), literal).empty());

    // two clauses: only the first accumulation is flushed
    auto candidates = find_modifier_candidates(two_clause_sentence(), literal);
    REQUIRE(candidates.size() == 1);
    CHECK(candidates[0].head_index == 4);
    CHECK(candidates[0].chunk_indices == std::vector<int>{3, 4});
}

TEST_CASE("planted clauses are recovered exactly") {
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        auto p = planted::make_planted(seed);
        REQUIRE_FALSE(validate(p.sentence).has_value());
        auto candidates = find_modifier_candidates(p.sentence);
        REQUIRE(candidates.size() == 1);
        CHECK(candidates[0].chunk_indices == p.clause.chunk_indices);
        CHECK(candidates[0].head_index == p.clause.head_index);
        CHECK(candidates[0].modified_index == p.clause.modified_index);
        CHECK(candidates[0].noun_span == p.clause.noun_span);
        check_clause_invariants(p.sentence, candidates[0]);
    }
}

TEST_CASE("choose_modifier") {
    auto s = two_clause_sentence();
    auto candidates = find_modifier_candidates(s);
    REQUIRE(candidates.size() == 2);

    CHECK_FALSE(choose_modifier({}, 7).has_value());

    std::vector<ModifierClause> one = {candidates[0]};
    for (std::uint64_t seed : {0ull, 1ull, 99ull})
        CHECK(choose_modifier(one, seed)->head_index == candidates[0].head_index);

    int first = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        auto chosen = choose_modifier(candidates, seed);
        REQUIRE(chosen.has_value());
        if (chosen->head_index == candidates[0].head_index) ++first;
    }
    // uniform choice: 50% +- 10%
    CHECK(first >= 400);
    CHECK(first <= 600);
}

TEST_CASE("remove_modifier deletes the clause and reindexes") {
    auto s = fix::car_sentence();
    auto clause = find_modifier_candidates(s)[0];
    auto simple = remove_modifier(s, clause);
    REQUIRE_FALSE(validate(simple).has_value());
    CHECK(simple.surface() == "車に乗りました");
    REQUIRE(simple.chunks.size() == 2);
    CHECK(simple.chunks[0].dest == 1);
    CHECK(simple.chunks[1].dest == -1);

    // the removed clause head is gone: no candidate with the same head surface remains
    for (const auto& c : find_modifier_candidates(simple))
        CHECK(simple.chunks[c.head_index].tokens[0].surface != "借り");

    ModifierClause bogus = clause;
    bogus.head_index = 2;
    CHECK_THROWS_AS(remove_modifier(s, bogus), ContractViolation);
}

TEST_CASE("surface length drops by exactly the clause surface length") {
    for (std::uint64_t seed = 500; seed < 700; ++seed) {
        auto p = planted::make_planted(seed);
        auto clause = find_modifier_candidates(p.sentence)[0];
        auto simple = remove_modifier(p.sentence, clause);
        std::size_t clause_len = 0;
        for (int idx : clause.chunk_indices) clause_len += p.sentence.chunks[idx].tokens.size();
        CHECK(simple.token_count() == p.sentence.token_count() - clause_len);
    }
}

TEST_CASE("build_pair composes extraction on the car fixture") {
    auto rec = build_pair(fix::car_sentence(), 42);
    REQUIRE(rec.has_value());
    CHECK(rec->simple.surface() == "車に乗りました");
    CHECK(rec->complex_surface ==
          std::vector<std::string>{"彼", "に", "借り", "た", "車", "に", "乗り", "まし", "た"});
    CHECK(rec->clause_surface == std::vector<std::string>{"彼", "に", "借り", "た"});
    CHECK(rec->modified_noun == "車");
    CHECK(rec->simple_noun_chunk == 0);
    CHECK(rec->simple_noun_span == TokenSpan{0, 1});
}

TEST_CASE("build_pair is absent when nothing can be extracted") {
    auto s = sentence("plain", {
        chunk({tok("車", Pos::NounGeneral), tok("に", Pos::Particle)}, 1),
        chunk({tok("乗り", Pos::Verb), tok("まし", Pos::Other), tok("た", Pos::Other)}, -1),
    });
    CHECK_FALSE(build_pair(s, 42).has_value());
}

TEST_CASE("build_pair is deterministic and re-insertion reconstructs the original") {
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        auto p = planted::make_planted(seed);
        auto rec = build_pair(p.sentence, 123);
        REQUIRE(rec.has_value());
        auto rec2 = build_pair(p.sentence, 123);
        REQUIRE(rec2.has_value());
        CHECK(rec->clause_surface == rec2->clause_surface);
        CHECK(rec->simple.surface() == rec2->simple.surface());

        CHECK(rec->clause_surface == p.clause_surface);

        // re-insert the clause surfaces right before the modified chunk
        std::vector<std::string> rebuilt;
        for (int i = 0; i < static_cast<int>(rec->simple.chunks.size()); ++i) {
            if (i == rec->simple_noun_chunk)
                rebuilt.insert(rebuilt.end(), rec->clause_surface.begin(),
                               rec->clause_surface.end());
            for (const Token& t : rec->simple.chunks[i].tokens) rebuilt.push_back(t.surface);
        }
        CHECK(rebuilt == rec->complex_surface);
    }
}

TEST_CASE("record JSONL round trips the fields that are serialized") {
    auto rec = build_pair(fix::ways_sentence(), 9);
    REQUIRE(rec.has_value());
    const std::string line = record_to_json(*rec);
    auto back = record_from_json(line);
    CHECK(back.id == rec->id);
    CHECK(back.complex_surface == rec->complex_surface);
    CHECK(back.clause_surface == rec->clause_surface);
    CHECK(back.modified_noun == rec->modified_noun);
    CHECK(back.simple.surfaces() == rec->simple.surfaces());
    CHECK(back.simple_noun_chunk == rec->simple_noun_chunk);
    CHECK(back.simple_noun_span == rec->simple_noun_span);
    CHECK(record_to_json(back) == line);
}
