#ifndef MODGEN_NGRAM_LM_HPP
#define MODGEN_NGRAM_LM_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace modgen {

using TokenSeq = std::vector<std::string>;
using Corpus = std::vector<TokenSeq>;

// Interpolated n-gram model with modified Kneser-Ney discounts. The top
// order holds raw counts over <s>-padded, </s>-terminated sentences; each
// lower order holds continuation counts derived from the order above it.
// Probabilities interpolate down to the uniform distribution over the
// vocabulary (corpus types plus <s>, </s>, <unk>).
class NgramLM {
public:
    struct Discounts {
        double d1 = 0.75, d2 = 0.75, d3 = 0.75;
        bool fallback = false;  // counts-of-counts were unusable
    };

    // order >= 1, corpus non-empty. Throws ContractViolation otherwise.
    static NgramLM fit(const Corpus& corpus, int order);

    // Degenerate model: every probability is exactly 1/|vocab|.
    static NgramLM uniform(const Corpus& corpus);
    static NgramLM uniform_over(const std::vector<std::string>& types);

    int order() const { return order_; }
    bool is_uniform() const { return order_ == 0; }
    std::size_t vocab_size() const { return vocab_.size(); }
    bool in_vocab(std::string_view token) const;

    // log2 P(token | context). The context is the preceding tokens, most
    // recent last; only its last order-1 entries are consulted. Tokens
    // outside the vocabulary are treated as <unk>.
    double log2_prob(const std::string& token, const TokenSeq& context) const;
    double prob(const std::string& token, const TokenSeq& context) const;

    const Discounts& discounts(int order) const;
    const std::vector<std::string>& warnings() const { return warnings_; }
    const std::vector<std::string>& vocab() const { return vocab_; }

    // Sorted text format: header, vocabulary, per-order discounts, then
    // `order TAB context TAB token TAB count` lines.
    void save(std::ostream& out) const;
    static NgramLM load(std::istream& in);

    struct ScoreDetail {
        double log2p_sum = 0.0;
        std::size_t tokens = 0;  // scored events incl. </s>
        std::size_t oov = 0;     // real tokens mapped to <unk>
    };
    ScoreDetail score(const Corpus& corpus) const;

private:
    NgramLM() = default;

    int token_id(std::string_view token) const;  // unk id when absent
    double prob_ids(int order, const int* ctx, int token) const;
    void index_vocab();
    void finalize_tables();

    struct VecHash {
        std::size_t operator()(const std::vector<int>& v) const;
    };
    struct Successors {
        std::unordered_map<int, long> counts;
        long total = 0;
        long n1 = 0, n2 = 0, n3p = 0;  // successor types by count bucket
    };
    using Table = std::unordered_map<std::vector<int>, Successors, VecHash>;

    int order_ = 0;  // 0 = uniform
    std::vector<std::string> vocab_;  // sorted; includes <s>, </s>, <unk>
    std::unordered_map<std::string, int> ids_;
    std::vector<Table> tables_;       // tables_[n-1] holds order n
    std::vector<Discounts> discounts_;
    std::vector<std::string> warnings_;
};

// exp2 of the negative mean log2-probability per token (</s> included,
// <s> padding excluded). Throws ContractViolation on an empty corpus.
double perplexity(const NgramLM& lm, const Corpus& corpus);

struct PerplexityDetail {
    double perplexity = 0.0;
    std::size_t tokens = 0;
    std::size_t oov = 0;
    double oov_rate = 0.0;
};
PerplexityDetail perplexity_detail(const NgramLM& lm, const Corpus& corpus);

}  // namespace modgen

#endif
