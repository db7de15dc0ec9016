#include "modgen/insert_mark.hpp"

#include "modgen/errors.hpp"

namespace modgen {

namespace {

bool vp_child_test(const Chunk& c, const MarkOptions& opts) {
    if (!opts.verb_only_children) return is_verb_phrase(c);
    for (const Token& t : c.tokens)
        if (t.pos == Pos::Verb) return true;
    return false;
}

}  // namespace

InsertionMark detect_insertion_position(const ParsedSentence& sentence, const MarkOptions& opts) {
    const int n = static_cast<int>(sentence.chunks.size());
    std::vector<int> noun_index;
    for (int i = 0; i < n; ++i) {
        if (!contains_any_noun(sentence.chunks[i])) continue;
        noun_index.push_back(i);
        bool has_vp_child = false;
        for (int j = 0; j < i; ++j) {
            if (sentence.chunks[j].dest == i && vp_child_test(sentence.chunks[j], opts)) {
                has_vp_child = true;
                break;
            }
        }
        if (!has_vp_child) return {i, *first_noun_run(sentence.chunks[i])};
    }
    if (noun_index.empty())
        throw NoInsertionPoint("sentence '" + sentence.id + "' has no noun chunk");
    const int i = noun_index.front();
    return {i, *first_noun_run(sentence.chunks[i])};
}

std::vector<std::string> render_marked(const ParsedSentence& sentence, const InsertionMark& mark) {
    const int n = static_cast<int>(sentence.chunks.size());
    if (mark.chunk_index < 0 || mark.chunk_index >= n)
        throw ContractViolation("insertion mark chunk index out of range");
    const Chunk& marked = sentence.chunks[mark.chunk_index];
    if (mark.noun_span.begin < 0 || mark.noun_span.end <= mark.noun_span.begin ||
        mark.noun_span.end > static_cast<int>(marked.tokens.size()))
        throw ContractViolation("insertion mark span out of range");

    std::vector<std::string> out;
    out.reserve(sentence.token_count() + 2);
    for (int i = 0; i < n; ++i) {
        const Chunk& c = sentence.chunks[i];
        for (int k = 0; k < static_cast<int>(c.tokens.size()); ++k) {
            if (i == mark.chunk_index && k == mark.noun_span.begin) out.emplace_back(kInsOpen);
            out.push_back(c.tokens[k].surface);
            if (i == mark.chunk_index && k == mark.noun_span.end - 1) out.emplace_back(kInsClose);
        }
    }
    return out;
}

std::vector<std::string> strip_markers(const std::vector<std::string>& tokens) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const std::string& t : tokens)
        if (t != kInsOpen && t != kInsClose) out.push_back(t);
    return out;
}

ParallelPair build_marked_pair(const ExtractionRecord& rec) {
    InsertionMark mark{rec.simple_noun_chunk, rec.simple_noun_span};
    ParallelPair p;
    p.id = rec.id;
    p.mode = PairMode::Marked;
    p.input = render_marked(rec.simple, mark);
    p.output = rec.complex_surface;
    for (const std::string& t : rec.clause_surface) {
        if (!p.clause_surface.empty()) p.clause_surface += ' ';
        p.clause_surface += t;
    }
    return p;
}

}  // namespace modgen
