#ifndef MODGEN_METRICS_HPP
#define MODGEN_METRICS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "modgen/ngram_lm.hpp"

namespace modgen {

// Mean over sentences of the number of distinct token surfaces; markers and
// reserved tokens do not count. Throws ContractViolation on an empty corpus.
double avg_word_types(const Corpus& corpus);

// Corpus-level BLEU-4 with one reference per candidate: clipped modified
// n-gram precision, geometric mean, brevity penalty. An order with zero
// matches contributes epsilon 1e-9 instead of zero.
double bleu(const Corpus& candidates, const Corpus& references);

struct MetricReport {
    double perplexity = 0.0;
    double avg_word_types = 0.0;
    std::size_t sentences = 0;
    double oov_rate = 0.0;
};

MetricReport evaluate_corpus(const NgramLM& lm, const Corpus& generated);

std::string metric_report_to_json(const MetricReport& r);

}  // namespace modgen

#endif
