#pragma once

#include <cstddef>
#include <vector>

#include "dlts/bisim.hpp"
#include "dlts/lts.hpp"

namespace dlts {

struct MinimizeReport {
    std::size_t states = 0;
    std::size_t letters = 0;
    std::size_t transitions = 0;
    std::size_t useless_removed = 0;
    std::size_t blocks_final = 0;
    ScanStats stats;
    double wall_ms = 0.0;
};

struct MinimizeResult {
    Dfa dfa;
    MinimizeReport report;
};

/// Throws ValidationError if the initial state or a final state is out of
/// range, or if finals are not sorted and unique.
void validate_dfa(const Dfa& dfa);

/// Per state: reachable from the initial state and able to reach a final one.
std::vector<char> useful_states(const Dfa& dfa);

/// Drops useless states, then quotients by the coarsest bisimulation inside
/// {finals, non-finals}. Each output state is named after the smallest input
/// state of its block. An empty language yields the 0-state automaton. The
/// alphabet is carried over unchanged. Throws NondeterminismError.
MinimizeResult minimize_dfa(const Dfa& dfa, const DbisimOptions& options = {});

}  // namespace dlts
