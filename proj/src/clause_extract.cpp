#include "modgen/clause_extract.hpp"

#include <algorithm>

#include "json_conv.hpp"
#include "modgen/errors.hpp"
#include "modgen/rng.hpp"

namespace modgen {

using detail::ordered_json;

bool ModifierClause::contains(int chunk) const {
    return std::binary_search(chunk_indices.begin(), chunk_indices.end(), chunk);
}

bool ModifierClause::is_contiguous_prefix_of_noun() const {
    if (chunk_indices.empty()) return false;
    for (std::size_t k = 1; k < chunk_indices.size(); ++k)
        if (chunk_indices[k] != chunk_indices[k - 1] + 1) return false;
    return chunk_indices.back() + 1 == modified_index;
}

namespace {

ModifierClause make_clause(const ParsedSentence& s, std::vector<int> indices, int head) {
    ModifierClause mc;
    std::sort(indices.begin(), indices.end());
    mc.chunk_indices = std::move(indices);
    mc.head_index = head;
    mc.modified_index = s.chunks[head].dest;
    if (auto span = contains_modifiable_noun(s.chunks[mc.modified_index])) mc.noun_span = *span;
    return mc;
}

bool in_accumulation(const std::vector<int>& elements, int dest) {
    return std::find(elements.begin(), elements.end(), dest) != elements.end();
}

}  // namespace

std::vector<ModifierClause> find_modifier_candidates(const ParsedSentence& sentence,
                                                     const ExtractOptions& opts) {
    const int n = static_cast<int>(sentence.chunks.size());
    std::vector<ModifierClause> out;
    std::vector<int> elements;  // discovery order, indices descending
    int current_head = -1;

    for (int i = n - 1; i >= 0; --i) {
        const int dest = sentence.chunks[i].dest;
        const bool noun_dest =
            dest != kRoot && contains_modifiable_noun(sentence.chunks[dest]).has_value();
        if (opts.literal_pseudocode) {
            // Uncorrected scan: the verb-phrase test is nested under the
            // noun-dest test, flushes never clear the accumulator, and the
            // final accumulation is dropped.
            if (noun_dest) {
                if (is_verb_phrase(sentence.chunks[i])) {
                    if (!elements.empty()) out.push_back(make_clause(sentence, elements, current_head));
                    elements.push_back(i);
                    current_head = i;
                }
            } else if (dest != kRoot && in_accumulation(elements, dest)) {
                elements.push_back(i);
            }
        } else {
            if (noun_dest && is_verb_phrase(sentence.chunks[i])) {
                if (!elements.empty()) out.push_back(make_clause(sentence, elements, current_head));
                elements.assign(1, i);
                current_head = i;
            } else if (dest != kRoot && in_accumulation(elements, dest)) {
                elements.push_back(i);
            }
        }
    }
    if (!opts.literal_pseudocode && !elements.empty())
        out.push_back(make_clause(sentence, elements, current_head));
    return out;
}

std::uint64_t per_sentence_seed(std::uint64_t seed, const std::string& sentence_id) {
    return seed ^ fnv1a64(sentence_id);
}

std::optional<ModifierClause> choose_modifier(const std::vector<ModifierClause>& candidates,
                                              std::uint64_t seed) {
    if (candidates.empty()) return std::nullopt;
    Xorshift64Star rng(seed);
    return candidates[static_cast<std::size_t>(rng.next_below(candidates.size()))];
}

namespace {

void check_clause_fits(const ParsedSentence& s, const ModifierClause& c) {
    const int n = static_cast<int>(s.chunks.size());
    auto fail = [](const std::string& why) { throw ContractViolation("clause not in sentence: " + why); };
    if (c.chunk_indices.empty()) fail("empty clause");
    if (!std::is_sorted(c.chunk_indices.begin(), c.chunk_indices.end())) fail("indices not sorted");
    if (c.chunk_indices.front() < 0 || c.chunk_indices.back() >= n) fail("chunk index out of range");
    if (c.modified_index < 0 || c.modified_index >= n) fail("modified index out of range");
    if (!c.contains(c.head_index)) fail("head not a member");
    if (c.contains(c.modified_index)) fail("modified chunk is a member");
    if (s.chunks[c.head_index].dest != c.modified_index) fail("head does not depend on modified chunk");
    if (!is_verb_phrase(s.chunks[c.head_index])) fail("head is not a verb phrase");
    const auto span = contains_modifiable_noun(s.chunks[c.modified_index]);
    if (!span) fail("modified chunk has no modifiable noun");
    for (int idx : c.chunk_indices) {
        if (idx >= c.modified_index) fail("member at or after modified chunk");
        if (idx == c.head_index) continue;
        if (!c.contains(s.chunks[idx].dest)) fail("member depends outside the clause");
    }
}

}  // namespace

ParsedSentence remove_modifier(const ParsedSentence& sentence, const ModifierClause& clause) {
    check_clause_fits(sentence, clause);
    const int n = static_cast<int>(sentence.chunks.size());
    std::vector<bool> deleted(n, false);
    for (int idx : clause.chunk_indices) deleted[idx] = true;

    std::vector<int> new_index(n, -1);
    int next = 0;
    for (int i = 0; i < n; ++i)
        if (!deleted[i]) new_index[i] = next++;

    ParsedSentence out;
    out.id = sentence.id;
    out.chunks.reserve(static_cast<std::size_t>(next));
    for (int i = 0; i < n; ++i) {
        if (deleted[i]) continue;
        Chunk c = sentence.chunks[i];
        int d = c.dest;
        while (d != kRoot && deleted[d]) d = sentence.chunks[d].dest;
        c.dest = d == kRoot ? kRoot : new_index[d];
        out.chunks.push_back(std::move(c));
    }
    return out;
}

std::optional<ExtractionRecord> build_pair(const ParsedSentence& sentence, std::uint64_t seed,
                                           const ExtractOptions& opts) {
    std::vector<ModifierClause> candidates = find_modifier_candidates(sentence, opts);
    std::erase_if(candidates,
                  [](const ModifierClause& c) { return !c.is_contiguous_prefix_of_noun(); });
    auto chosen = choose_modifier(candidates, per_sentence_seed(seed, sentence.id));
    if (!chosen) return std::nullopt;

    ExtractionRecord rec;
    rec.id = sentence.id;
    rec.complex_surface = sentence.surfaces();
    rec.clause = *chosen;
    for (int idx : chosen->chunk_indices)
        for (const Token& t : sentence.chunks[idx].tokens) rec.clause_surface.push_back(t.surface);
    const Chunk& noun_chunk = sentence.chunks[chosen->modified_index];
    for (int k = chosen->noun_span.begin; k < chosen->noun_span.end; ++k) {
        if (!rec.modified_noun.empty()) rec.modified_noun += ' ';
        rec.modified_noun += noun_chunk.tokens[k].surface;
    }
    rec.simple = remove_modifier(sentence, *chosen);
    rec.simple_noun_chunk = chosen->modified_index - static_cast<int>(chosen->chunk_indices.size());
    rec.simple_noun_span = chosen->noun_span;
    return rec;
}

std::string record_to_json(const ExtractionRecord& r) {
    ordered_json j;
    j["id"] = r.id;
    j["simple"] = r.simple.surfaces();
    j["complex"] = r.complex_surface;
    j["clause"] = r.clause_surface;
    j["modified_noun"] = r.modified_noun;
    j["simple_parsed"] = detail::chunks_to_json(r.simple.chunks);
    j["noun_chunk"] = r.simple_noun_chunk;
    j["noun_span"] = ordered_json::array({r.simple_noun_span.begin, r.simple_noun_span.end});
    return j.dump();
}

ExtractionRecord record_from_json(const std::string& line) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    ExtractionRecord r;
    try {
        r.id = j.at("id").get<std::string>();
        r.complex_surface = j.at("complex").get<std::vector<std::string>>();
        r.clause_surface = j.at("clause").get<std::vector<std::string>>();
        r.modified_noun = j.at("modified_noun").get<std::string>();
        r.simple.id = r.id;
        r.simple.chunks = detail::chunks_from_json(j.at("simple_parsed"));
        r.simple_noun_chunk = j.at("noun_chunk").get<int>();
        r.simple_noun_span.begin = j.at("noun_span").at(0).get<int>();
        r.simple_noun_span.end = j.at("noun_span").at(1).get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed record object: ") + e.what());
    }
    if (auto reason = validate(r.simple)) throw ValidationError(*reason);
    if (j.at("simple").get<std::vector<std::string>>() != r.simple.surfaces())
        throw ValidationError("simple surfaces do not match simple_parsed");
    if (r.simple_noun_chunk < 0 ||
        r.simple_noun_chunk >= static_cast<int>(r.simple.chunks.size()))
        throw ValidationError("noun_chunk out of range");
    const Chunk& nc = r.simple.chunks[r.simple_noun_chunk];
    if (r.simple_noun_span.begin < 0 || r.simple_noun_span.end <= r.simple_noun_span.begin ||
        r.simple_noun_span.end > static_cast<int>(nc.tokens.size()))
        throw ValidationError("noun_span out of range");
    return r;
}

}  // namespace modgen
