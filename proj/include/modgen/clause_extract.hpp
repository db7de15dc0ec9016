#ifndef MODGEN_CLAUSE_EXTRACT_HPP
#define MODGEN_CLAUSE_EXTRACT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modgen/chunk.hpp"

namespace modgen {

// A modifier clause: dependency-closed set of chunks whose head is a verb
// phrase / noun predicate depending on a noun-bearing chunk to its right.
struct ModifierClause {
    std::vector<int> chunk_indices;  // ascending
    int head_index = -1;
    int modified_index = -1;
    TokenSpan noun_span;  // inside chunks[modified_index]

    bool contains(int chunk) const;
    // Contiguous run of chunks ending immediately before the modified chunk.
    bool is_contiguous_prefix_of_noun() const;
};

struct ExtractOptions {
    // Reproduce the uncorrected scan: the accumulator is not cleared when a
    // clause is flushed and the final accumulation is never flushed. With a
    // single clause in the sentence this yields no candidates.
    bool literal_pseudocode = false;
};

// Right-to-left scan over the chunks. A verb phrase / noun predicate whose
// dest chunk carries a general or proper noun opens a new accumulation
// (flushing the previous one); any other chunk joins the accumulation its
// dest already belongs to. Candidates come out ordered by head index
// descending. Every candidate satisfies the ModifierClause invariants.
std::vector<ModifierClause> find_modifier_candidates(const ParsedSentence& sentence,
                                                     const ExtractOptions& opts = {});

// Per-sentence seed derivation used by build_pair.
std::uint64_t per_sentence_seed(std::uint64_t seed, const std::string& sentence_id);

// Uniform choice with xorshift64*; empty input yields nothing.
std::optional<ModifierClause> choose_modifier(const std::vector<ModifierClause>& candidates,
                                              std::uint64_t seed);

// Deletes the clause chunks and reindexes surviving dest links. A surviving
// chunk that depended on a deleted one is re-attached to the first surviving
// chunk on the deleted chunk's dest walk. Throws ContractViolation when the
// clause does not fit the sentence.
ParsedSentence remove_modifier(const ParsedSentence& sentence, const ModifierClause& clause);

struct ExtractionRecord {
    std::string id;
    ParsedSentence simple;                 // sentence with the clause removed
    std::vector<std::string> complex_surface;      // original token surfaces
    std::vector<std::string> clause_surface;       // removed token surfaces
    ModifierClause clause;                 // vs. the original sentence; not serialized
    std::string modified_noun;             // noun-run surfaces, space-joined
    int simple_noun_chunk = -1;            // modified chunk index in `simple`
    TokenSpan simple_noun_span;            // noun run inside that chunk
};

// find -> choose -> remove. The choice is made among candidates that form a
// contiguous chunk run immediately preceding the modified chunk, so removal
// and re-insertion are exact inverses. Nothing to extract yields nullopt.
std::optional<ExtractionRecord> build_pair(const ParsedSentence& sentence, std::uint64_t seed,
                                           const ExtractOptions& opts = {});

// JSONL: {"id":...,"simple":[...],"complex":[...],"clause":[...],"modified_noun":...,
//         "simple_parsed":[chunks...],"noun_chunk":k,"noun_span":[s,e]}
std::string record_to_json(const ExtractionRecord& r);
ExtractionRecord record_from_json(const std::string& line);

}  // namespace modgen

#endif
