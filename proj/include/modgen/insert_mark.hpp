#ifndef MODGEN_INSERT_MARK_HPP
#define MODGEN_INSERT_MARK_HPP

#include <string>
#include <vector>

#include "modgen/chunk.hpp"
#include "modgen/clause_extract.hpp"
#include "modgen/corpus.hpp"

namespace modgen {

struct InsertionMark {
    int chunk_index = -1;
    TokenSpan noun_span;
};

struct MarkOptions {
    // Count only VERB-bearing chunks as verb-phrase children; by default the
    // noun-predicate (copula) case counts too.
    bool verb_only_children = false;
};

// Left-to-right scan: the first noun-bearing chunk without a verb-phrase
// child gets the mark; if every noun-bearing chunk has one, the leftmost
// noun-bearing chunk does. "Noun" here is any NOUN_* tag. Throws
// NoInsertionPoint when the sentence has no noun at all.
InsertionMark detect_insertion_position(const ParsedSentence& sentence,
                                        const MarkOptions& opts = {});

// Flat surface sequence with <ins> / </ins> wrapped tightly around the
// noun run. Throws ContractViolation when the mark does not fit.
std::vector<std::string> render_marked(const ParsedSentence& sentence, const InsertionMark& mark);

// Drops <ins> / </ins>; inverse of render_marked on its output.
std::vector<std::string> strip_markers(const std::vector<std::string>& tokens);

// Training-side marked pair. The mark is the ground-truth position of the
// removed clause, not a detect_insertion_position result.
ParallelPair build_marked_pair(const ExtractionRecord& rec);

}  // namespace modgen

#endif
