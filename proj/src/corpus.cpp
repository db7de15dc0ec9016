#include "modgen/corpus.hpp"

#include <algorithm>
#include <unordered_set>

#include "json_conv.hpp"
#include "modgen/errors.hpp"
#include "modgen/insert_mark.hpp"
#include "modgen/rng.hpp"

namespace modgen {

using detail::ordered_json;

const char* pair_mode_name(PairMode m) {
    return m == PairMode::Marked ? "MARKED" : "END2END";
}

std::optional<PairMode> pair_mode_from_name(std::string_view name) {
    if (name == "MARKED") return PairMode::Marked;
    if (name == "END2END") return PairMode::End2End;
    return std::nullopt;
}

namespace {

// Smallest k such that output == input[0..k) + block + input[k..). The block
// may be empty. nullopt when no such split exists.
std::optional<std::size_t> find_single_insertion(const std::vector<std::string>& input,
                                                 const std::vector<std::string>& output) {
    const std::size_t n = input.size(), m = output.size();
    if (m < n) return std::nullopt;
    std::size_t p = 0;
    while (p < n && input[p] == output[p]) ++p;
    std::size_t s = 0;
    while (s < n && input[n - 1 - s] == output[m - 1 - s]) ++s;
    if (p + s < n) return std::nullopt;
    return n - s;
}

bool block_matches_clause(const std::vector<std::string>& input,
                          const std::vector<std::string>& output,
                          const std::string& clause_surface) {
    const std::size_t n = input.size(), m = output.size();
    const std::size_t d = m - n;
    std::size_t p = 0;
    while (p < n && input[p] == output[p]) ++p;
    std::size_t s = 0;
    while (s < n && input[n - 1 - s] == output[m - 1 - s]) ++s;
    for (std::size_t k = n - s; k <= p; ++k) {
        std::string block;
        for (std::size_t i = 0; i < d; ++i) {
            if (!block.empty()) block += ' ';
            block += output[k + i];
        }
        if (block == clause_surface) return true;
    }
    return false;
}

}  // namespace

std::optional<std::string> validate(const ParallelPair& p) {
    if (p.input.empty()) return "empty input";
    if (p.output.empty()) return "empty output";
    for (const std::string& t : p.output)
        if (t == kInsOpen || t == kInsClose) return "marker token on the output side";
    if (p.mode == PairMode::End2End) {
        for (const std::string& t : p.input)
            if (t == kInsOpen || t == kInsClose) return "marker token in END2END input";
    } else {
        int open = -1, close = -1, opens = 0, closes = 0;
        for (int i = 0; i < static_cast<int>(p.input.size()); ++i) {
            if (p.input[i] == kInsOpen) { open = i; ++opens; }
            if (p.input[i] == kInsClose) { close = i; ++closes; }
        }
        if (opens != 1 || closes != 1) return "MARKED input must contain exactly one marker pair";
        if (close <= open + 1) return "markers must wrap at least one token";
    }
    const std::vector<std::string> stripped = strip_markers(p.input);
    auto k = find_single_insertion(stripped, p.output);
    if (!k) return "output does not embed the input split at one position";
    if (!p.clause_surface.empty() && !block_matches_clause(stripped, p.output, p.clause_surface))
        return "inserted block does not match the clause surface";
    return std::nullopt;
}

ParallelPair make_end2end_pair(const ExtractionRecord& rec) {
    ParallelPair p;
    p.id = rec.id;
    p.mode = PairMode::End2End;
    p.input = rec.simple.surfaces();
    p.output = rec.complex_surface;
    for (const std::string& t : rec.clause_surface) {
        if (!p.clause_surface.empty()) p.clause_surface += ' ';
        p.clause_surface += t;
    }
    return p;
}

std::vector<ParallelPair> dedup_by_clause(std::vector<ParallelPair> pairs) {
    std::unordered_set<std::string> seen;
    std::vector<ParallelPair> out;
    out.reserve(pairs.size());
    for (ParallelPair& p : pairs)
        if (seen.insert(p.clause_surface).second) out.push_back(std::move(p));
    return out;
}

CorpusSplit split_corpus(std::vector<ExtractionRecord> records, PairMode mode,
                         std::size_t dev_size, std::size_t test_size, std::uint64_t seed) {
    if (records.size() <= dev_size + test_size)
        throw SizingError("need more than " + std::to_string(dev_size + test_size) +
                          " records to carve dev " + std::to_string(dev_size) + " + test " +
                          std::to_string(test_size) + ", got " + std::to_string(records.size()));
    Xorshift64Star rng(seed);
    shuffle(records, rng);

    CorpusSplit split;
    split.test.assign(records.begin(), records.begin() + static_cast<std::ptrdiff_t>(test_size));
    split.dev.assign(records.begin() + static_cast<std::ptrdiff_t>(test_size),
                     records.begin() + static_cast<std::ptrdiff_t>(test_size + dev_size));
    std::vector<ParallelPair> train;
    train.reserve(records.size() - test_size - dev_size);
    for (std::size_t i = test_size + dev_size; i < records.size(); ++i)
        train.push_back(mode == PairMode::Marked ? build_marked_pair(records[i])
                                                 : make_end2end_pair(records[i]));
    split.train = dedup_by_clause(std::move(train));
    return split;
}

std::string pair_to_json(const ParallelPair& p) {
    ordered_json j;
    j["id"] = p.id;
    j["mode"] = pair_mode_name(p.mode);
    j["input"] = p.input;
    j["output"] = p.output;
    j["clause"] = p.clause_surface;
    return j.dump();
}

ParallelPair pair_from_json(const std::string& line) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    ParallelPair p;
    try {
        p.id = j.at("id").get<std::string>();
        const std::string mode = j.at("mode").get<std::string>();
        auto m = pair_mode_from_name(mode);
        if (!m) throw ValidationError("unknown pair mode '" + mode + "'");
        p.mode = *m;
        p.input = j.at("input").get<std::vector<std::string>>();
        p.output = j.at("output").get<std::vector<std::string>>();
        p.clause_surface = j.at("clause").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed pair object: ") + e.what());
    }
    if (auto reason = validate(p)) throw ValidationError(*reason);
    return p;
}

}  // namespace modgen
