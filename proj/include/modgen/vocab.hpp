#ifndef MODGEN_VOCAB_HPP
#define MODGEN_VOCAB_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "modgen/corpus.hpp"

namespace modgen {

// Token ids 0..5 are pinned so checkpoints stay portable across runs.
class Vocabulary {
public:
    static constexpr int kPadId = 0;
    static constexpr int kBosId = 1;
    static constexpr int kEosId = 2;
    static constexpr int kUnkId = 3;
    static constexpr int kInsOpenId = 4;
    static constexpr int kInsCloseId = 5;
    static constexpr int kNumReserved = 6;

    Vocabulary();  // reserved tokens only

    // Appends a token; rejects duplicates and reserved surfaces.
    int add(const std::string& token);

    int id_of(std::string_view token) const;  // kUnkId when absent
    bool contains(std::string_view token) const;
    const std::string& token_of(int id) const;  // throws ContractViolation

    int size() const { return static_cast<int>(tokens_.size()); }
    const std::vector<std::string>& tokens() const { return tokens_; }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, int> ids_;
};

// Frequency over both sides of the training pairs, ties broken by byte
// order, truncated to cap (reserved ids included in the cap).
Vocabulary build_vocab(const std::vector<ParallelPair>& train, std::size_t cap = 10000);

struct Encoded {
    std::vector<int> ids;
    // (position in ids, original surface) for every OOV token
    std::vector<std::pair<int, std::string>> unknowns;
};

Encoded encode(const std::vector<std::string>& tokens, const Vocabulary& vocab);

// Human-readable form with OOV rendered as <unk:surface>.
std::string render_unk_dump(const std::vector<std::string>& tokens, const Vocabulary& vocab);

// Ids back to surfaces. When source tokens and per-step attention rows are
// supplied, an <unk> output becomes the source token its step attends to
// most (ties toward the smaller source position).
std::vector<std::string> decode(const std::vector<int>& ids, const Vocabulary& vocab,
                                const std::vector<std::string>* source_tokens = nullptr,
                                const std::vector<std::vector<float>>* attention = nullptr);

// One token per line, line number = id.
void save_vocab(std::ostream& out, const Vocabulary& vocab);
Vocabulary load_vocab(std::istream& in);

}  // namespace modgen

#endif
