#include "modgen/vocab.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "modgen/chunk.hpp"
#include "modgen/errors.hpp"

namespace modgen {

Vocabulary::Vocabulary() {
    tokens_ = {kPad, kBos, kEos, kUnk, kInsOpen, kInsClose};
    for (int i = 0; i < static_cast<int>(tokens_.size()); ++i) ids_[tokens_[i]] = i;
}

int Vocabulary::add(const std::string& token) {
    if (is_reserved_surface(token))
        throw ContractViolation("reserved surface added to vocabulary: " + token);
    if (ids_.count(token)) throw ContractViolation("duplicate vocabulary token: " + token);
    const int id = size();
    tokens_.push_back(token);
    ids_[token] = id;
    return id;
}

int Vocabulary::id_of(std::string_view token) const {
    auto it = ids_.find(std::string(token));
    return it == ids_.end() ? kUnkId : it->second;
}

bool Vocabulary::contains(std::string_view token) const {
    return ids_.count(std::string(token)) != 0;
}

const std::string& Vocabulary::token_of(int id) const {
    if (id < 0 || id >= size())
        throw ContractViolation("vocabulary id out of range: " + std::to_string(id));
    return tokens_[static_cast<std::size_t>(id)];
}

Vocabulary build_vocab(const std::vector<ParallelPair>& train, std::size_t cap) {
    if (cap < Vocabulary::kNumReserved)
        throw ContractViolation("vocabulary cap below the reserved token count");
    std::unordered_map<std::string, long> freq;
    auto count_side = [&freq](const std::vector<std::string>& tokens) {
        for (const std::string& t : tokens)
            if (!is_reserved_surface(t)) ++freq[t];
    };
    for (const ParallelPair& p : train) {
        count_side(p.input);
        count_side(p.output);
    }
    std::vector<std::pair<std::string, long>> ranked(freq.begin(), freq.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    Vocabulary v;
    for (const auto& [token, n] : ranked) {
        (void)n;
        if (static_cast<std::size_t>(v.size()) >= cap) break;
        v.add(token);
    }
    return v;
}

Encoded encode(const std::vector<std::string>& tokens, const Vocabulary& vocab) {
    Encoded e;
    e.ids.reserve(tokens.size());
    for (int i = 0; i < static_cast<int>(tokens.size()); ++i) {
        const int id = vocab.id_of(tokens[static_cast<std::size_t>(i)]);
        if (id == Vocabulary::kUnkId && tokens[static_cast<std::size_t>(i)] != kUnk)
            e.unknowns.emplace_back(i, tokens[static_cast<std::size_t>(i)]);
        e.ids.push_back(id);
    }
    return e;
}

std::string render_unk_dump(const std::vector<std::string>& tokens, const Vocabulary& vocab) {
    std::string out;
    for (const std::string& t : tokens) {
        if (!out.empty()) out += ' ';
        if (vocab.contains(t))
            out += t;
        else
            out += "<unk:" + t + ">";
    }
    return out;
}

std::vector<std::string> decode(const std::vector<int>& ids, const Vocabulary& vocab,
                                const std::vector<std::string>* source_tokens,
                                const std::vector<std::vector<float>>* attention) {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (std::size_t t = 0; t < ids.size(); ++t) {
        const int id = ids[t];
        if (id != Vocabulary::kUnkId) {
            out.push_back(vocab.token_of(id));
            continue;
        }
        if (source_tokens && attention && t < attention->size() && !(*attention)[t].empty() &&
            (*attention)[t].size() <= source_tokens->size()) {
            const std::vector<float>& row = (*attention)[t];
            std::size_t best = 0;
            for (std::size_t j = 1; j < row.size(); ++j)
                if (row[j] > row[best]) best = j;
            out.push_back((*source_tokens)[best]);
        } else {
            out.emplace_back(kUnk);
        }
    }
    return out;
}

void save_vocab(std::ostream& out, const Vocabulary& vocab) {
    for (const std::string& t : vocab.tokens()) out << t << '\n';
}

Vocabulary load_vocab(std::istream& in) {
    Vocabulary v;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        if (line_no < Vocabulary::kNumReserved) {
            if (line != v.token_of(line_no))
                throw ValidationError("vocabulary line " + std::to_string(line_no) +
                                      " must be the reserved token " + v.token_of(line_no));
        } else {
            try {
                v.add(line);
            } catch (const ContractViolation& e) {
                throw ValidationError("vocabulary line " + std::to_string(line_no) + ": " +
                                      e.what());
            }
        }
        ++line_no;
    }
    if (line_no < Vocabulary::kNumReserved)
        throw ValidationError("vocabulary file shorter than the reserved token block");
    return v;
}

}  // namespace modgen
