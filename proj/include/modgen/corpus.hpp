#ifndef MODGEN_CORPUS_HPP
#define MODGEN_CORPUS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modgen/clause_extract.hpp"

namespace modgen {

enum class PairMode { End2End, Marked };

const char* pair_mode_name(PairMode m);
std::optional<PairMode> pair_mode_from_name(std::string_view name);

// One training example. END2END input is the bare simple sentence; MARKED
// input wraps the modified noun in <ins>...</ins>.
struct ParallelPair {
    std::string id;
    PairMode mode = PairMode::End2End;
    std::vector<std::string> input;
    std::vector<std::string> output;
    std::string clause_surface;  // space-joined; dedup key
};

// Checks marker placement and that the output equals the (marker-stripped)
// input split exactly once by an inserted block. Returns a reason on failure.
std::optional<std::string> validate(const ParallelPair& p);

ParallelPair make_end2end_pair(const ExtractionRecord& rec);

// First pair per clause_surface wins; order otherwise stable.
std::vector<ParallelPair> dedup_by_clause(std::vector<ParallelPair> pairs);

struct CorpusSplit {
    std::vector<ParallelPair> train;
    std::vector<ExtractionRecord> dev;
    std::vector<ExtractionRecord> test;
};

// Seeded shuffle, then test/dev carved off the front, remainder paired in
// the requested mode and deduplicated. Dev and test keep the full record:
// the pseudo-simple sentence is the input, the complex surface the
// reference. Throws SizingError when records <= dev_size + test_size.
CorpusSplit split_corpus(std::vector<ExtractionRecord> records, PairMode mode,
                         std::size_t dev_size, std::size_t test_size, std::uint64_t seed);

// JSONL: {"id":...,"mode":"MARKED","input":[...],"output":[...],"clause":"..."}
std::string pair_to_json(const ParallelPair& p);
ParallelPair pair_from_json(const std::string& line);

}  // namespace modgen

#endif
