#pragma once

// `family:key=value,...` descriptors for the state factory. Vector values are
// comma-joined: a token without '=' extends the previous key's value list.
//
//   isotropic:d=3,p=0.3
//   bell-diagonal:t=0.2,0.2,0.2
//   max-entangled:d=4
//   ppt-3x3
//   example4:p=0.8
//   random-mixed:dA=2,dB=3,rank=2,seed=11     (or d=4 for a single system)
//   random-product-pure:dA=2,dB=3,seed=5
//   random-separable:dA=3,dB=3,k=4,seed=9

#include "weylsep/error.hpp"
#include "weylsep/states.hpp"

#include <charconv>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace weylsep {

struct StateSpec {
    std::string family;
    std::map<std::string, std::vector<double>> params;
    std::map<std::string, std::string> raw; // unparsed text, for integer keys like seeds

    bool has(const std::string& key) const { return params.count(key) != 0; }

    double scalar(const std::string& key) const {
        const auto it = params.find(key);
        if (it == params.end()) throw ParseError("state '" + family + "': missing parameter '" + key + "'");
        if (it->second.size() != 1) throw ParseError("state '" + family + "': parameter '" + key + "' must be a single value");
        return it->second.front();
    }

    long long integer(const std::string& key) const {
        const auto it = raw.find(key);
        if (it == raw.end() || it->second.find(',') != std::string::npos) {
            scalar(key); // produces the right message
        }
        const std::string& text = it->second;
        long long out = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw ParseError("state '" + family + "': parameter '" + key + "' must be an integer, got '" + text + "'");
        }
        return out;
    }

    std::uint64_t seed() const {
        const auto it = raw.find("seed");
        if (it == raw.end()) throw ParseError("state '" + family + "': random families need an explicit seed=<n>");
        std::uint64_t out = 0;
        const std::string& text = it->second;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
        if (ec != std::errc() || ptr != text.data() + text.size()) throw ParseError("state '" + family + "': bad seed '" + text + "'");
        return out;
    }
};

namespace detail {

inline double parse_double(std::string_view text, const std::string& context) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ParseError(context + ": '" + std::string(text) + "' is not a number");
    }
    return out;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

} // namespace detail

inline const std::set<std::string>& known_families() {
    static const std::set<std::string> names{"isotropic",     "bell-diagonal", "max-entangled",       "ppt-3x3",
                                             "example4",      "random-mixed",  "random-product-pure", "random-separable"};
    return names;
}

inline StateSpec parse_state_spec(std::string_view text) {
    StateSpec spec;
    const std::size_t colon = text.find(':');
    spec.family = std::string(text.substr(0, colon));
    if (!known_families().count(spec.family)) throw ParseError("unknown state family '" + spec.family + "'");
    if (colon == std::string_view::npos || colon + 1 == text.size()) return spec;

    std::string current;
    for (std::string_view token : detail::split(text.substr(colon + 1), ',')) {
        const std::size_t eq = token.find('=');
        std::string_view value = token;
        if (eq != std::string_view::npos) {
            current = std::string(token.substr(0, eq));
            value = token.substr(eq + 1);
            if (current.empty()) throw ParseError("state '" + spec.family + "': empty parameter name");
            if (spec.params.count(current)) throw ParseError("state '" + spec.family + "': duplicate parameter '" + current + "'");
            spec.params[current];
            spec.raw[current] = std::string(value);
        } else {
            if (current.empty()) throw ParseError("state '" + spec.family + "': value '" + std::string(token) + "' has no key");
            spec.raw[current] += "," + std::string(value);
        }
        spec.params[current].push_back(detail::parse_double(value, "state '" + spec.family + "' parameter '" + current + "'"));
    }
    return spec;
}

namespace detail {
inline int as_dim(const StateSpec& spec, const std::string& key) {
    const long long v = spec.integer(key);
    if (v < 1 || v > 64) throw DomainError("state '" + spec.family + "': " + key + " must lie in [1, 64]");
    return static_cast<int>(v);
}

inline void expect_keys(const StateSpec& spec, std::set<std::string> allowed) {
    for (const auto& [key, _] : spec.params)
        if (!allowed.count(key)) throw ParseError("state '" + spec.family + "': unexpected parameter '" + key + "'");
}
} // namespace detail

inline DensityMatrix make_state(const StateSpec& spec) {
    using detail::as_dim;
    using detail::expect_keys;
    const std::string& f = spec.family;
    if (f == "isotropic") {
        expect_keys(spec, {"d", "p"});
        return isotropic(as_dim(spec, "d"), spec.scalar("p"));
    }
    if (f == "bell-diagonal") {
        expect_keys(spec, {"t"});
        const auto it = spec.params.find("t");
        if (it == spec.params.end() || it->second.size() != 3) throw ParseError("state 'bell-diagonal': needs t=t1,t2,t3");
        return bell_diagonal(it->second[0], it->second[1], it->second[2]);
    }
    if (f == "max-entangled") {
        expect_keys(spec, {"d"});
        return max_entangled(as_dim(spec, "d"));
    }
    if (f == "ppt-3x3") {
        expect_keys(spec, {});
        return ppt_3x3();
    }
    if (f == "example4") {
        expect_keys(spec, {"p"});
        return example4(spec.scalar("p"));
    }
    if (f == "random-mixed") {
        expect_keys(spec, {"d", "dA", "dB", "rank", "seed"});
        std::vector<int> dims;
        if (spec.has("d"))
            dims = {as_dim(spec, "d")};
        else
            dims = {as_dim(spec, "dA"), as_dim(spec, "dB")};
        const long long rank = spec.integer("rank");
        return random_mixed(dims, static_cast<int>(rank), spec.seed());
    }
    if (f == "random-product-pure") {
        expect_keys(spec, {"dA", "dB", "seed"});
        return random_product_pure(as_dim(spec, "dA"), as_dim(spec, "dB"), spec.seed());
    }
    if (f == "random-separable") {
        expect_keys(spec, {"dA", "dB", "k", "seed"});
        return random_separable(as_dim(spec, "dA"), as_dim(spec, "dB"), static_cast<int>(spec.integer("k")), spec.seed());
    }
    throw ParseError("unknown state family '" + f + "'");
}

inline DensityMatrix make_state(std::string_view text) { return make_state(parse_state_spec(text)); }

} // namespace weylsep
