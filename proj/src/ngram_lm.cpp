#include "modgen/ngram_lm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "modgen/chunk.hpp"
#include "modgen/errors.hpp"
#include "modgen/rng.hpp"

namespace modgen {

std::size_t NgramLM::VecHash::operator()(const std::vector<int>& v) const {
    return fnv1a64(std::string_view(reinterpret_cast<const char*>(v.data()),
                                    v.size() * sizeof(int)));
}

void NgramLM::index_vocab() {
    ids_.clear();
    for (int i = 0; i < static_cast<int>(vocab_.size()); ++i) ids_[vocab_[i]] = i;
}

int NgramLM::token_id(std::string_view token) const {
    auto it = ids_.find(std::string(token));
    if (it != ids_.end()) return it->second;
    return ids_.at(kUnk);
}

bool NgramLM::in_vocab(std::string_view token) const {
    return ids_.count(std::string(token)) != 0;
}

namespace {

std::vector<std::string> collect_vocab(const Corpus& corpus) {
    std::set<std::string> types;
    for (const TokenSeq& sent : corpus)
        for (const std::string& t : sent) types.insert(t);
    types.insert(kBos);
    types.insert(kEos);
    types.insert(kUnk);
    return {types.begin(), types.end()};
}

}  // namespace

NgramLM NgramLM::fit(const Corpus& corpus, int order) {
    if (order < 1) throw ContractViolation("n-gram order must be >= 1");
    if (corpus.empty()) throw ContractViolation("cannot fit a language model on an empty corpus");

    NgramLM lm;
    lm.order_ = order;
    lm.vocab_ = collect_vocab(corpus);
    lm.index_vocab();
    lm.tables_.resize(static_cast<std::size_t>(order));
    const int bos = lm.ids_.at(kBos);
    const int eos = lm.ids_.at(kEos);

    // top order: raw counts over padded sentences
    Table& top = lm.tables_[static_cast<std::size_t>(order - 1)];
    for (const TokenSeq& sent : corpus) {
        std::vector<int> seq(static_cast<std::size_t>(order - 1), bos);
        for (const std::string& t : sent) seq.push_back(lm.ids_.at(t));
        seq.push_back(eos);
        for (std::size_t i = 0; i + static_cast<std::size_t>(order) <= seq.size(); ++i) {
            std::vector<int> ctx(seq.begin() + static_cast<std::ptrdiff_t>(i),
                                 seq.begin() + static_cast<std::ptrdiff_t>(i + order - 1));
            ++top[std::move(ctx)].counts[seq[i + static_cast<std::size_t>(order) - 1]];
        }
    }

    // each lower order counts distinct one-token-left extensions of the
    // order above it
    for (int n = order - 1; n >= 1; --n) {
        const Table& higher = lm.tables_[static_cast<std::size_t>(n)];
        Table& lower = lm.tables_[static_cast<std::size_t>(n - 1)];
        for (const auto& [ctx, succ] : higher) {
            std::vector<int> parent(ctx.begin() + 1, ctx.end());
            Successors& bucket = lower[parent];
            for (const auto& [w, c] : succ.counts) {
                (void)c;
                ++bucket.counts[w];
            }
        }
    }

    lm.finalize_tables();
    return lm;
}

void NgramLM::finalize_tables() {
    discounts_.assign(static_cast<std::size_t>(order_), Discounts{});
    for (int n = 1; n <= order_; ++n) {
        Table& table = tables_[static_cast<std::size_t>(n - 1)];
        long n1 = 0, n2 = 0, n3 = 0, n4 = 0;
        for (auto& [ctx, succ] : table) {
            (void)ctx;
            succ.total = 0;
            succ.n1 = succ.n2 = succ.n3p = 0;
            for (const auto& [w, c] : succ.counts) {
                (void)w;
                succ.total += c;
                if (c == 1) ++succ.n1;
                else if (c == 2) ++succ.n2;
                else ++succ.n3p;
                if (c == 1) ++n1;
                else if (c == 2) ++n2;
                else if (c == 3) ++n3;
                else if (c == 4) ++n4;
            }
        }
        Discounts& d = discounts_[static_cast<std::size_t>(n - 1)];
        if (n1 == 0 || n2 == 0 || n3 == 0) {
            d = Discounts{0.75, 0.75, 0.75, true};
            warnings_.push_back("order " + std::to_string(n) +
                                ": counts-of-counts too sparse for modified discounts (n1=" +
                                std::to_string(n1) + ", n2=" + std::to_string(n2) + ", n3=" +
                                std::to_string(n3) + "); using absolute discount 0.75");
        } else {
            const double y = static_cast<double>(n1) / (static_cast<double>(n1) + 2.0 * n2);
            d.d1 = std::max(0.0, 1.0 - 2.0 * y * n2 / n1);
            d.d2 = std::max(0.0, 2.0 - 3.0 * y * n3 / n2);
            d.d3 = std::max(0.0, 3.0 - 4.0 * y * n4 / n3);
            d.fallback = false;
        }
    }
}

NgramLM NgramLM::uniform(const Corpus& corpus) {
    NgramLM lm;
    lm.order_ = 0;
    lm.vocab_ = collect_vocab(corpus);
    lm.index_vocab();
    return lm;
}

NgramLM NgramLM::uniform_over(const std::vector<std::string>& types) {
    Corpus c;
    c.push_back(types);
    return uniform(c);
}

const NgramLM::Discounts& NgramLM::discounts(int order) const {
    if (order < 1 || order > order_) throw ContractViolation("discount order out of range");
    return discounts_[static_cast<std::size_t>(order - 1)];
}

double NgramLM::prob_ids(int order, const int* ctx, int token) const {
    if (order == 0) return 1.0 / static_cast<double>(vocab_.size());
    const Table& table = tables_[static_cast<std::size_t>(order - 1)];
    const std::vector<int> key(ctx, ctx + order - 1);
    auto it = table.find(key);
    if (it == table.end() || it->second.total == 0)
        return prob_ids(order - 1, ctx + 1, token);

    const Successors& succ = it->second;
    const Discounts& d = discounts_[static_cast<std::size_t>(order - 1)];
    long c = 0;
    if (auto cit = succ.counts.find(token); cit != succ.counts.end()) c = cit->second;
    const double discount = c == 0 ? 0.0 : (c == 1 ? d.d1 : (c == 2 ? d.d2 : d.d3));
    const double total = static_cast<double>(succ.total);
    const double gamma =
        (d.d1 * static_cast<double>(succ.n1) + d.d2 * static_cast<double>(succ.n2) +
         d.d3 * static_cast<double>(succ.n3p)) /
        total;
    return std::max(0.0, static_cast<double>(c) - discount) / total +
           gamma * prob_ids(order - 1, ctx + 1, token);
}

double NgramLM::prob(const std::string& token, const TokenSeq& context) const {
    if (order_ == 0) return 1.0 / static_cast<double>(vocab_.size());
    const int w = token_id(token);
    const int use = std::min<int>(order_ - 1, static_cast<int>(context.size()));
    std::vector<int> ctx;
    ctx.reserve(static_cast<std::size_t>(use));
    for (std::size_t i = context.size() - static_cast<std::size_t>(use); i < context.size(); ++i)
        ctx.push_back(token_id(context[i]));
    return prob_ids(use + 1, ctx.data(), w);
}

double NgramLM::log2_prob(const std::string& token, const TokenSeq& context) const {
    if (order_ == 0) return -std::log2(static_cast<double>(vocab_.size()));
    return std::log2(prob(token, context));
}

NgramLM::ScoreDetail NgramLM::score(const Corpus& corpus) const {
    ScoreDetail out;
    const double uniform_log2 = -std::log2(static_cast<double>(vocab_.size()));
    for (const TokenSeq& sent : corpus) {
        if (order_ == 0) {
            for (const std::string& t : sent)
                if (!in_vocab(t)) ++out.oov;
            out.tokens += sent.size() + 1;
            out.log2p_sum += uniform_log2 * static_cast<double>(sent.size() + 1);
            continue;
        }
        const int bos = ids_.at(kBos);
        const int eos = ids_.at(kEos);
        std::vector<int> ctx(static_cast<std::size_t>(order_ - 1), bos);
        auto score_one = [&](int w) {
            out.log2p_sum += std::log2(prob_ids(order_, ctx.data(), w));
            ++out.tokens;
            if (!ctx.empty()) {
                ctx.erase(ctx.begin());
                ctx.push_back(w);
            }
        };
        for (const std::string& t : sent) {
            if (!in_vocab(t)) ++out.oov;
            score_one(token_id(t));
        }
        score_one(eos);
    }
    return out;
}

void NgramLM::save(std::ostream& out) const {
    out << "modkn\t" << order_ << '\n';
    out << "vocab\t" << vocab_.size() << '\n';
    for (const std::string& t : vocab_) out << t << '\n';
    char buf[96];
    for (int n = 1; n <= order_; ++n) {
        const Discounts& d = discounts_[static_cast<std::size_t>(n - 1)];
        std::snprintf(buf, sizeof buf, "discounts\t%d\t%.17g\t%.17g\t%.17g\t%d", n, d.d1, d.d2,
                      d.d3, d.fallback ? 1 : 0);
        out << buf << '\n';
    }
    struct Line {
        int order;
        std::string ctx;
        std::string token;
        long count;
    };
    std::vector<Line> lines;
    for (int n = 1; n <= order_; ++n) {
        for (const auto& [ctx, succ] : tables_[static_cast<std::size_t>(n - 1)]) {
            std::string ctx_str;
            for (int id : ctx) {
                if (!ctx_str.empty()) ctx_str += ' ';
                ctx_str += vocab_[static_cast<std::size_t>(id)];
            }
            for (const auto& [w, c] : succ.counts)
                lines.push_back({n, ctx_str, vocab_[static_cast<std::size_t>(w)], c});
        }
    }
    std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
        if (a.order != b.order) return a.order < b.order;
        if (a.ctx != b.ctx) return a.ctx < b.ctx;
        return a.token < b.token;
    });
    out << "ngrams\t" << lines.size() << '\n';
    for (const Line& l : lines)
        out << l.order << '\t' << l.ctx << '\t' << l.token << '\t' << l.count << '\n';
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find('\t', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

}  // namespace

NgramLM NgramLM::load(std::istream& in) {
    NgramLM lm;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty language model file");
    auto head = split_tabs(line);
    if (head.size() != 2 || head[0] != "modkn") throw ParseError("bad language model header");
    lm.order_ = std::stoi(head[1]);
    if (lm.order_ < 0) throw ParseError("negative order");

    if (!std::getline(in, line)) throw ParseError("missing vocab header");
    auto vh = split_tabs(line);
    if (vh.size() != 2 || vh[0] != "vocab") throw ParseError("bad vocab header");
    const std::size_t vocab_size = std::stoul(vh[1]);
    lm.vocab_.reserve(vocab_size);
    for (std::size_t i = 0; i < vocab_size; ++i) {
        if (!std::getline(in, line)) throw ParseError("truncated vocab block");
        lm.vocab_.push_back(line);
    }
    lm.index_vocab();
    if (!lm.ids_.count(kUnk) || !lm.ids_.count(kBos) || !lm.ids_.count(kEos))
        throw ValidationError("language model vocabulary must contain <s>, </s>, <unk>");

    lm.tables_.resize(static_cast<std::size_t>(lm.order_));
    lm.discounts_.resize(static_cast<std::size_t>(lm.order_));
    for (int n = 1; n <= lm.order_; ++n) {
        if (!std::getline(in, line)) throw ParseError("missing discount line");
        auto f = split_tabs(line);
        if (f.size() != 6 || f[0] != "discounts" || std::stoi(f[1]) != n)
            throw ParseError("bad discount line for order " + std::to_string(n));
        Discounts d;
        d.d1 = std::stod(f[2]);
        d.d2 = std::stod(f[3]);
        d.d3 = std::stod(f[4]);
        d.fallback = f[5] == "1";
        lm.discounts_[static_cast<std::size_t>(n - 1)] = d;
    }

    if (!std::getline(in, line)) throw ParseError("missing ngrams header");
    auto nh = split_tabs(line);
    if (nh.size() != 2 || nh[0] != "ngrams") throw ParseError("bad ngrams header");
    const std::size_t total = std::stoul(nh[1]);
    for (std::size_t i = 0; i < total; ++i) {
        if (!std::getline(in, line)) throw ParseError("truncated ngram block");
        auto f = split_tabs(line);
        if (f.size() != 4) throw ParseError("bad ngram line");
        const int n = std::stoi(f[0]);
        if (n < 1 || n > lm.order_) throw ParseError("ngram order out of range");
        std::vector<int> ctx;
        if (!f[1].empty()) {
            std::istringstream cs(f[1]);
            std::string tok;
            while (cs >> tok) {
                if (!lm.ids_.count(tok)) throw ValidationError("context token not in vocab: " + tok);
                ctx.push_back(lm.ids_.at(tok));
            }
        }
        if (static_cast<int>(ctx.size()) != n - 1) throw ParseError("context length mismatch");
        if (!lm.ids_.count(f[2])) throw ValidationError("token not in vocab: " + f[2]);
        lm.tables_[static_cast<std::size_t>(n - 1)][ctx].counts[lm.ids_.at(f[2])] =
            std::stol(f[3]);
    }

    // rebuild totals and per-context buckets; keep the stored discounts
    const std::vector<Discounts> keep = lm.discounts_;
    lm.finalize_tables();
    lm.discounts_ = keep;
    lm.warnings_.clear();
    return lm;
}

double perplexity(const NgramLM& lm, const Corpus& corpus) {
    return perplexity_detail(lm, corpus).perplexity;
}

PerplexityDetail perplexity_detail(const NgramLM& lm, const Corpus& corpus) {
    if (corpus.empty()) throw ContractViolation("cannot score an empty corpus");
    const NgramLM::ScoreDetail d = lm.score(corpus);
    PerplexityDetail out;
    out.tokens = d.tokens;
    out.oov = d.oov;
    std::size_t real_tokens = d.tokens - corpus.size();  // minus the </s> events
    out.oov_rate = real_tokens == 0 ? 0.0
                                    : static_cast<double>(d.oov) / static_cast<double>(real_tokens);
    out.perplexity = std::exp2(-d.log2p_sum / static_cast<double>(d.tokens));
    return out;
}

}  // namespace modgen
