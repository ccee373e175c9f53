#pragma once

// JSON encoding of filters:
//   {"dims": 2, "entries": [[k1, k2, re, im], ...]}
//   {"dims": 1, "entries": [[j, re, im], ...]}
// Doubles are written with shortest round-trip formatting, so decode(encode(h)) == h.

#include <fstream>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "gramfield/symbols.hpp"

namespace gramfield {

using Filter = std::variant<FilterSequence1D, FilterSequence2D>;

namespace detail {

inline long json_index(const nlohmann::json& v) {
    if (!v.is_number_integer()) throw std::invalid_argument("filter JSON: index must be an integer");
    return v.get<long>();
}

inline double json_real(const nlohmann::json& v) {
    if (!v.is_number()) throw std::invalid_argument("filter JSON: coefficient must be a number");
    return v.get<double>();
}

inline int json_dims(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("dims") || !doc.contains("entries") ||
        !doc["entries"].is_array()) {
        throw std::invalid_argument("filter JSON: expected {\"dims\": .., \"entries\": [..]}");
    }
    const int dims = doc["dims"].get<int>();
    if (dims != 1 && dims != 2) throw std::invalid_argument("filter JSON: dims must be 1 or 2");
    return dims;
}

}  // namespace detail

inline FilterSequence2D filter2d_from_json(const nlohmann::json& doc) {
    if (detail::json_dims(doc) != 2) throw std::invalid_argument("filter JSON: expected dims = 2");
    std::vector<Tap2D> taps;
    for (const auto& e : doc["entries"]) {
        if (!e.is_array() || e.size() != 4) {
            throw std::invalid_argument("filter JSON: 2-D entry must be [k1, k2, re, im]");
        }
        taps.push_back({detail::json_index(e[0]), detail::json_index(e[1]),
                        {detail::json_real(e[2]), detail::json_real(e[3])}});
    }
    return FilterSequence2D(std::move(taps));
}

inline FilterSequence1D filter1d_from_json(const nlohmann::json& doc) {
    if (detail::json_dims(doc) != 1) throw std::invalid_argument("filter JSON: expected dims = 1");
    std::vector<Tap1D> taps;
    for (const auto& e : doc["entries"]) {
        if (!e.is_array() || e.size() != 3) {
            throw std::invalid_argument("filter JSON: 1-D entry must be [j, re, im]");
        }
        taps.push_back({detail::json_index(e[0]),
                        {detail::json_real(e[1]), detail::json_real(e[2])}});
    }
    return FilterSequence1D(std::move(taps));
}

inline Filter filter_from_json(const nlohmann::json& doc) {
    if (detail::json_dims(doc) == 1) return filter1d_from_json(doc);
    return filter2d_from_json(doc);
}

inline nlohmann::json to_json(const FilterSequence2D& h) {
    auto entries = nlohmann::json::array();
    for (const auto& t : h.taps()) {
        entries.push_back({t.k1, t.k2, t.coeff.real(), t.coeff.imag()});
    }
    return {{"dims", 2}, {"entries", entries}};
}

inline nlohmann::json to_json(const FilterSequence1D& a) {
    auto entries = nlohmann::json::array();
    for (const auto& t : a.taps()) entries.push_back({t.j, t.coeff.real(), t.coeff.imag()});
    return {{"dims", 1}, {"entries", entries}};
}

inline Filter load_filter(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open filter file: " + path);
    return filter_from_json(nlohmann::json::parse(in));
}

}  // namespace gramfield
