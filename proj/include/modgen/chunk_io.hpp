#ifndef MODGEN_CHUNK_IO_HPP
#define MODGEN_CHUNK_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "modgen/chunk.hpp"
#include "modgen/errors.hpp"

namespace modgen {

// One sentence per JSONL line:
//   {"id":"s0001","chunks":[{"tokens":[{"s":"車","p":"NOUN_GENERAL"},...],"dest":1},...]}
// Output field order is fixed: id, chunks; tokens before dest; s before p.

std::string sentence_to_json(const ParsedSentence& s);

// Parses and validates one line. Throws ParseError / ValidationError.
ParsedSentence sentence_from_json(const std::string& line);

// Streaming reader over a line-oriented corpus. In strict mode the first bad
// line throws; otherwise bad lines are skipped and reported in diagnostics().
class SentenceReader {
public:
    SentenceReader(std::istream& in, bool strict);

    std::optional<ParsedSentence> next();

    const Diagnostics& diagnostics() const { return diags_; }
    std::size_t lines_read() const { return line_no_; }

private:
    std::istream& in_;
    bool strict_;
    std::size_t line_no_ = 0;
    Diagnostics diags_;
};

std::vector<ParsedSentence> read_parsed_corpus(std::istream& in, bool strict,
                                               Diagnostics* diags = nullptr);

void write_parsed_corpus(std::ostream& out, const std::vector<ParsedSentence>& corpus);

}  // namespace modgen

#endif
