#include "modgen/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <json.hpp>

#include "modgen/chunk.hpp"
#include "modgen/errors.hpp"

namespace modgen {

double avg_word_types(const Corpus& corpus) {
    if (corpus.empty()) throw ContractViolation("word-type average of an empty corpus");
    double sum = 0.0;
    for (const TokenSeq& sent : corpus) {
        std::set<std::string> types;
        for (const std::string& t : sent)
            if (!is_reserved_surface(t)) types.insert(t);
        sum += static_cast<double>(types.size());
    }
    return sum / static_cast<double>(corpus.size());
}

namespace {

constexpr double kBleuEpsilon = 1e-9;
constexpr int kBleuOrder = 4;

using NgramCounts = std::map<std::vector<std::string>, long>;

NgramCounts ngram_counts(const TokenSeq& tokens, int n) {
    NgramCounts counts;
    if (static_cast<int>(tokens.size()) < n) return counts;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i)
        ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                          tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
    return counts;
}

}  // namespace

double bleu(const Corpus& candidates, const Corpus& references) {
    if (candidates.size() != references.size())
        throw ContractViolation("BLEU needs one reference per candidate");
    if (candidates.empty()) return 0.0;

    long matched[kBleuOrder] = {0, 0, 0, 0};
    long total[kBleuOrder] = {0, 0, 0, 0};
    long cand_len = 0, ref_len = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        cand_len += static_cast<long>(candidates[i].size());
        ref_len += static_cast<long>(references[i].size());
        for (int n = 1; n <= kBleuOrder; ++n) {
            const NgramCounts cand = ngram_counts(candidates[i], n);
            const NgramCounts ref = ngram_counts(references[i], n);
            for (const auto& [gram, c] : cand) {
                auto it = ref.find(gram);
                const long clip = it == ref.end() ? 0 : it->second;
                matched[n - 1] += std::min(c, clip);
                total[n - 1] += c;
            }
        }
    }
    if (cand_len == 0) return 0.0;

    double log_sum = 0.0;
    for (int n = 0; n < kBleuOrder; ++n) {
        const double p = matched[n] > 0
                             ? static_cast<double>(matched[n]) / static_cast<double>(total[n])
                             : kBleuEpsilon;
        log_sum += std::log(p);
    }
    const double precision = std::exp(log_sum / kBleuOrder);
    const double bp =
        cand_len >= ref_len
            ? 1.0
            : std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(cand_len));
    return bp * precision;
}

MetricReport evaluate_corpus(const NgramLM& lm, const Corpus& generated) {
    MetricReport r;
    const PerplexityDetail d = perplexity_detail(lm, generated);
    r.perplexity = d.perplexity;
    r.avg_word_types = avg_word_types(generated);
    r.sentences = generated.size();
    r.oov_rate = d.oov_rate;
    return r;
}

std::string metric_report_to_json(const MetricReport& r) {
    nlohmann::ordered_json j;
    j["perplexity"] = r.perplexity;
    j["avg_word_types"] = r.avg_word_types;
    j["sentences"] = r.sentences;
    j["oov_rate"] = r.oov_rate;
    return j.dump();
}

}  // namespace modgen
