#include "modgen/chunk_io.hpp"

#include <istream>
#include <ostream>

#include "json_conv.hpp"

namespace modgen {

using detail::ordered_json;

std::string sentence_to_json(const ParsedSentence& s) {
    ordered_json j;
    j["id"] = s.id;
    j["chunks"] = detail::chunks_to_json(s.chunks);
    return j.dump();
}

ParsedSentence sentence_from_json(const std::string& line) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    ParsedSentence s;
    try {
        if (!j.is_object()) throw ParseError("line is not a JSON object");
        s.id = j.at("id").get<std::string>();
        s.chunks = detail::chunks_from_json(j.at("chunks"));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed sentence object: ") + e.what());
    }
    if (auto reason = validate(s)) throw ValidationError(*reason);
    return s;
}

SentenceReader::SentenceReader(std::istream& in, bool strict) : in_(in), strict_(strict) {}

std::optional<ParsedSentence> SentenceReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_no_;
        if (line.empty()) continue;
        try {
            return sentence_from_json(line);
        } catch (const std::runtime_error& e) {
            if (strict_)
                throw ValidationError("line " + std::to_string(line_no_) + ": " + e.what());
            diags_.push_back({line_no_, e.what()});
        }
    }
    return std::nullopt;
}

std::vector<ParsedSentence> read_parsed_corpus(std::istream& in, bool strict, Diagnostics* diags) {
    SentenceReader reader(in, strict);
    std::vector<ParsedSentence> out;
    while (auto s = reader.next()) out.push_back(std::move(*s));
    if (diags) *diags = reader.diagnostics();
    return out;
}

void write_parsed_corpus(std::ostream& out, const std::vector<ParsedSentence>& corpus) {
    for (const ParsedSentence& s : corpus) out << sentence_to_json(s) << '\n';
}

}  // namespace modgen
