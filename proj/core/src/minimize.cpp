#include "dlts/minimize.hpp"

#include <algorithm>
#include <chrono>
#include <tuple>

#include "dlts/partition.hpp"

namespace dlts {

namespace {

// Adjacency in CSR form, keyed by `from` (src or dst).
struct Adjacency {
    std::vector<std::size_t> offsets;
    std::vector<StateIndex> targets;
};

Adjacency build_adjacency(const RawLts& raw, bool forward) {
    const std::size_t n = raw.states.size();
    Adjacency adj;
    adj.offsets.assign(n + 1, 0);
    for (const auto& t : raw.transitions) ++adj.offsets[(forward ? t.src : t.dst) + 1];
    for (std::size_t q = 0; q < n; ++q) adj.offsets[q + 1] += adj.offsets[q];
    adj.targets.resize(raw.transitions.size());
    std::vector<std::size_t> fill(adj.offsets.begin(), adj.offsets.end() - 1);
    for (const auto& t : raw.transitions) {
        if (forward)
            adj.targets[fill[t.src]++] = t.dst;
        else
            adj.targets[fill[t.dst]++] = t.src;
    }
    return adj;
}

std::vector<char> search(const Adjacency& adj, std::vector<StateIndex> frontier) {
    std::vector<char> seen(adj.offsets.size() - 1, 0);
    for (StateIndex q : frontier) seen[q] = 1;
    while (!frontier.empty()) {
        const StateIndex q = frontier.back();
        frontier.pop_back();
        for (std::size_t i = adj.offsets[q]; i < adj.offsets[q + 1]; ++i) {
            const StateIndex r = adj.targets[i];
            if (!seen[r]) {
                seen[r] = 1;
                frontier.push_back(r);
            }
        }
    }
    return seen;
}

}  // namespace

void validate_dfa(const Dfa& dfa) {
    const std::size_t n = dfa.lts.states.size();
    if (n > 0 && !dfa.initial) throw ValidationError("automaton has states but no initial state");
    if (dfa.initial && *dfa.initial >= n) throw ValidationError("initial state out of range");
    for (std::size_t i = 0; i < dfa.finals.size(); ++i) {
        if (dfa.finals[i] >= n) throw ValidationError("final state out of range");
        if (i > 0 && dfa.finals[i - 1] >= dfa.finals[i]) throw ValidationError("final states must be sorted and unique");
    }
    for (const auto& t : dfa.lts.transitions) {
        if (t.src >= n || t.dst >= n || t.letter >= dfa.lts.letters.size())
            throw ValidationError("transition refers to an unknown state or letter");
    }
}

std::vector<char> useful_states(const Dfa& dfa) {
    const std::size_t n = dfa.lts.states.size();
    if (n == 0 || !dfa.initial) return std::vector<char>(n, 0);
    const auto reachable = search(build_adjacency(dfa.lts, true), {*dfa.initial});
    const auto coreachable = search(build_adjacency(dfa.lts, false), dfa.finals);
    std::vector<char> useful(n);
    for (std::size_t q = 0; q < n; ++q) useful[q] = static_cast<char>(reachable[q] && coreachable[q]);
    return useful;
}

MinimizeResult minimize_dfa(const Dfa& dfa, const DbisimOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    validate_dfa(dfa);
    if (auto violations = check_deterministic(dfa.lts); !violations.empty())
        throw NondeterminismError(dfa.lts.states[violations.front().state], dfa.lts.letters[violations.front().letter]);

    const std::size_t n = dfa.lts.states.size();
    MinimizeResult result;
    auto& report = result.report;
    report.states = n;
    report.letters = dfa.lts.letters.size();
    report.transitions = dfa.lts.transitions.size();
    result.dfa.lts.letters = dfa.lts.letters;

    const auto useful = useful_states(dfa);
    std::vector<StateIndex> sub_of(n, static_cast<StateIndex>(-1));
    std::vector<StateIndex> original;
    for (std::size_t q = 0; q < n; ++q) {
        if (!useful[q]) continue;
        sub_of[q] = static_cast<StateIndex>(original.size());
        original.push_back(static_cast<StateIndex>(q));
    }
    report.useless_removed = n - original.size();

    auto finish = [&] {
        report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
        return std::move(result);
    };
    if (original.empty()) return finish();  // empty language

    RawLts sub;
    sub.letters = dfa.lts.letters;
    for (StateIndex q : original) sub.states.push_back(dfa.lts.states[q]);
    for (const auto& t : dfa.lts.transitions)
        if (useful[t.src] && useful[t.dst]) sub.transitions.push_back({sub_of[t.src], t.letter, sub_of[t.dst]});
    const NormalizedDlts normalized = normalize(sub);

    std::vector<char> is_final(n, 0);
    for (StateIndex q : dfa.finals) is_final[q] = 1;
    BlockList init(2);
    for (std::size_t s = 0; s < original.size(); ++s)
        init[is_final[original[s]] ? 0 : 1].push_back(static_cast<StateIndex>(s));
    std::erase_if(init, [](const auto& block) { return block.empty(); });

    const auto partition = dbisim(normalized, RefinablePartition::from_initial(original.size(), init), &report.stats, options);
    const BlockList blocks = partition.to_canonical();
    report.blocks_final = blocks.size();

    std::vector<StateIndex> out_of(original.size());
    std::vector<char> is_rep(original.size(), 0);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (StateIndex s : blocks[b]) out_of[s] = static_cast<StateIndex>(b);
        is_rep[blocks[b].front()] = 1;
        result.dfa.lts.states.push_back(sub.states[blocks[b].front()]);
        if (is_final[original[blocks[b].front()]]) result.dfa.finals.push_back(static_cast<StateIndex>(b));
    }
    for (const auto& t : sub.transitions)
        if (is_rep[t.src]) result.dfa.lts.transitions.push_back({out_of[t.src], t.letter, out_of[t.dst]});
    std::sort(result.dfa.lts.transitions.begin(), result.dfa.lts.transitions.end(),
              [](const Transition& x, const Transition& y) { return std::tie(x.src, x.letter) < std::tie(y.src, y.letter); });
    result.dfa.initial = out_of[sub_of[*dfa.initial]];
    return finish();
}

}  // namespace dlts
