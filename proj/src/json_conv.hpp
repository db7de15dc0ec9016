#ifndef MODGEN_SRC_JSON_CONV_HPP
#define MODGEN_SRC_JSON_CONV_HPP

// Internal chunk <-> JSON converters shared by the serialization TUs.

#include <json.hpp>

#include "modgen/chunk.hpp"
#include "modgen/errors.hpp"

namespace modgen::detail {

using ordered_json = nlohmann::ordered_json;

inline ordered_json chunks_to_json(const std::vector<Chunk>& chunks) {
    ordered_json arr = ordered_json::array();
    for (const Chunk& c : chunks) {
        ordered_json jc;
        ordered_json toks = ordered_json::array();
        for (const Token& t : c.tokens) {
            ordered_json jt;
            jt["s"] = t.surface;
            jt["p"] = pos_name(t.pos);
            toks.push_back(std::move(jt));
        }
        jc["tokens"] = std::move(toks);
        jc["dest"] = c.dest;
        arr.push_back(std::move(jc));
    }
    return arr;
}

inline std::vector<Chunk> chunks_from_json(const ordered_json& arr) {
    std::vector<Chunk> chunks;
    for (const auto& jc : arr) {
        Chunk c;
        for (const auto& jt : jc.at("tokens")) {
            Token t;
            t.surface = jt.at("s").get<std::string>();
            const std::string p = jt.at("p").get<std::string>();
            auto pos = pos_from_name(p);
            if (!pos) throw ValidationError("unknown POS tag '" + p + "'");
            t.pos = *pos;
            c.tokens.push_back(std::move(t));
        }
        c.dest = jc.at("dest").get<int>();
        chunks.push_back(std::move(c));
    }
    return chunks;
}

}  // namespace modgen::detail

#endif
