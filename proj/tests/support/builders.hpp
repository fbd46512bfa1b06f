#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "dlts/lts.hpp"

namespace dlts::testing {

using Edge = std::tuple<StateIndex, char, StateIndex>;

// States q0..q{n-1}; letters are single characters, declared in first-use order.
inline RawLts make_raw(std::size_t n, const std::vector<Edge>& edges) {
    RawLts raw;
    for (std::size_t q = 0; q < n; ++q) raw.states.push_back("q" + std::to_string(q));
    for (const auto& [src, letter, dst] : edges) {
        const std::string name(1, letter);
        LetterIndex a = 0;
        while (a < raw.letters.size() && raw.letters[a] != name) ++a;
        if (a == raw.letters.size()) raw.letters.push_back(name);
        raw.transitions.push_back({src, a, dst});
    }
    return raw;
}

inline NormalizedDlts make_dlts(std::size_t n, const std::vector<Edge>& edges) { return normalize(make_raw(n, edges)); }

inline Dfa make_dfa(std::size_t n, const std::vector<Edge>& edges, StateIndex initial, std::vector<StateIndex> finals,
                    std::vector<std::string> letters = {}) {
    Dfa dfa;
    dfa.lts = make_raw(n, edges);
    for (auto& name : letters) {
        bool known = false;
        for (const auto& l : dfa.lts.letters) known = known || l == name;
        if (!known) dfa.lts.letters.push_back(name);
    }
    dfa.initial = initial;
    dfa.finals = std::move(finals);
    return dfa;
}

}  // namespace dlts::testing
