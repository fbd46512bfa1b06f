#include "dlts/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <unordered_map>

namespace dlts::oracle {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::vector<std::size_t> labels_of(std::size_t n, const BlockPartitionView& p) {
    std::vector<std::size_t> label(n, kNone);
    for (std::size_t b = 0; b < p.size(); ++b)
        for (StateIndex q : p[b]) label[q] = b;
    return label;
}

// in[q] = 1 iff q has an `a`-transition into a state with mark set.
std::vector<char> pre_image(const NormalizedDlts& t, LetterIndex a, const std::vector<char>& mark) {
    std::vector<char> in(t.state_count(), 0);
    for (const auto& tr : t.transitions())
        if (tr.letter == a && mark[tr.dst]) in[tr.src] = 1;
    return in;
}

std::vector<char> membership(std::size_t n, const std::vector<StateIndex>& states) {
    std::vector<char> mark(n, 0);
    for (StateIndex q : states) mark[q] = 1;
    return mark;
}

// Every block meeting `in` lies inside it.
bool closed_under(const BlockPartitionView& p, const std::vector<std::size_t>& label, const std::vector<char>& in) {
    std::vector<std::size_t> hits(p.size(), 0);
    for (std::size_t q = 0; q < in.size(); ++q)
        if (in[q]) ++hits[label[q]];
    for (std::size_t b = 0; b < p.size(); ++b)
        if (hits[b] != 0 && hits[b] != p[b].size()) return false;
    return true;
}

std::string letter_name(std::size_t a) {
    if (a < 26) return std::string(1, static_cast<char>('a' + a));
    return "l" + std::to_string(a);
}

RawLts random_transitions(const GenConfig& cfg, std::mt19937_64& rng) {
    RawLts raw;
    for (std::size_t q = 0; q < cfg.n; ++q) raw.states.push_back("q" + std::to_string(q));
    for (std::size_t a = 0; a < cfg.k; ++a) raw.letters.push_back(letter_name(a));
    std::bernoulli_distribution emit(cfg.density);
    std::uniform_int_distribution<StateIndex> target(0, static_cast<StateIndex>(cfg.n - 1));
    for (std::size_t q = 0; q < cfg.n; ++q)
        for (std::size_t a = 0; a < cfg.k; ++a)
            if (emit(rng))
                raw.transitions.push_back({static_cast<StateIndex>(q), static_cast<LetterIndex>(a), target(rng)});
    return raw;
}

// Successor table with `missing` for absent transitions, letters reindexed by
// letter_map (from the automaton's own indices to a shared alphabet).
std::vector<std::size_t> successor_table(const Dfa& d, const std::vector<std::size_t>& letter_map, std::size_t k,
                                         std::size_t missing) {
    std::vector<std::size_t> delta(d.lts.states.size() * k, missing);
    for (const auto& tr : d.lts.transitions) delta[tr.src * k + letter_map[tr.letter]] = tr.dst;
    return delta;
}

// Maps d2's letters onto d1's indices; throws when the name sets differ.
std::vector<std::size_t> align_alphabets(const Dfa& d1, const Dfa& d2) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t a = 0; a < d1.lts.letters.size(); ++a) index.emplace(d1.lts.letters[a], a);
    if (d1.lts.letters.size() != d2.lts.letters.size()) throw ValidationError("alphabet mismatch");
    std::vector<std::size_t> map(d2.lts.letters.size());
    for (std::size_t a = 0; a < d2.lts.letters.size(); ++a) {
        auto it = index.find(d2.lts.letters[a]);
        if (it == index.end()) throw ValidationError("alphabet mismatch: '" + d2.lts.letters[a] + "'");
        map[a] = it->second;
    }
    return map;
}

std::vector<std::size_t> identity_map(std::size_t k) {
    std::vector<std::size_t> map(k);
    for (std::size_t a = 0; a < k; ++a) map[a] = a;
    return map;
}

}  // namespace

bool is_partition(std::size_t n, const BlockPartitionView& p) {
    std::vector<char> seen(n, 0);
    std::size_t total = 0;
    for (const auto& block : p) {
        if (block.empty()) return false;
        for (StateIndex q : block) {
            if (q >= n || seen[q]) return false;
            seen[q] = 1;
            ++total;
        }
    }
    return total == n;
}

bool is_bisimulation(const BlockPartitionView& p, const NormalizedDlts& t) {
    const std::size_t n = t.state_count();
    const auto label = labels_of(n, p);
    for (const auto& block : p) {
        const auto mark = membership(n, block);
        for (LetterIndex a = 0; a < t.letter_count(); ++a)
            if (!closed_under(p, label, pre_image(t, a, mark))) return false;
    }
    return true;
}

BlockPartitionView naive_fixpoint(const NormalizedDlts& t, const BlockPartitionView& p_init) {
    const std::size_t n = t.state_count();
    BlockPartitionView blocks = p_init;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t splitter = 0; splitter < blocks.size(); ++splitter) {
            const auto mark = membership(n, blocks[splitter]);
            for (LetterIndex a = 0; a < t.letter_count(); ++a) {
                const auto in = pre_image(t, a, mark);
                const std::size_t count = blocks.size();
                for (std::size_t c = 0; c < count; ++c) {
                    std::vector<StateIndex> inside, outside;
                    for (StateIndex q : blocks[c]) (in[q] ? inside : outside).push_back(q);
                    if (inside.empty() || outside.empty()) continue;
                    blocks[c] = std::move(inside);
                    blocks.push_back(std::move(outside));
                    changed = true;
                }
            }
        }
    }
    return canonicalize(std::move(blocks));
}

BlockPartitionView signature_grouping(const NormalizedDlts& t, const BlockPartitionView& p_init) {
    const std::size_t n = t.state_count();
    const auto label = labels_of(n, p_init);
    std::vector<std::vector<LetterIndex>> letters(n);
    for (const auto& tr : t.transitions()) letters[tr.src].push_back(tr.letter);
    std::map<std::pair<std::size_t, std::vector<LetterIndex>>, std::vector<StateIndex>> groups;
    for (std::size_t q = 0; q < n; ++q) {
        auto sig = letters[q];
        std::sort(sig.begin(), sig.end());
        groups[{label[q], std::move(sig)}].push_back(static_cast<StateIndex>(q));
    }
    BlockPartitionView out;
    for (auto& [key, members] : groups) out.push_back(std::move(members));
    return canonicalize(std::move(out));
}

bool coarseness_certificate(const NormalizedDlts& t, const BlockPartitionView& p_init,
                            const BlockPartitionView& result) {
    const std::size_t n = t.state_count();
    const auto init_label = labels_of(n, p_init);
    for (std::size_t i = 0; i < result.size(); ++i) {
        for (std::size_t j = i + 1; j < result.size(); ++j) {
            const StateIndex qi = result[i].front();
            const StateIndex qj = result[j].front();
            if (init_label[qi] != init_label[qj]) continue;
            BlockPartitionView merged;
            for (std::size_t b = 0; b < result.size(); ++b)
                if (b != i && b != j) merged.push_back(result[b]);
            auto joined = result[i];
            joined.insert(joined.end(), result[j].begin(), result[j].end());
            merged.push_back(std::move(joined));
            const auto closed = naive_fixpoint(t, merged);
            const auto label = labels_of(n, closed);
            if (label[qi] == label[qj]) return false;
        }
    }
    return true;
}

bool refines(const BlockPartitionView& a, const BlockPartitionView& b) {
    std::size_t n = 0;
    for (const auto& block : b) n += block.size();
    const auto label = labels_of(n, b);
    for (const auto& block : a) {
        for (StateIndex q : block) {
            if (q >= n || label[q] != label[block.front()]) return false;
        }
    }
    return true;
}

void GenConfig::validate() const {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("density must lie in [0, 1]");
    if (max_initial_blocks < 1) throw std::invalid_argument("initial block bound must be at least 1");
}

Instance gen_random_dlts(const GenConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    Instance inst;
    inst.raw = random_transitions(cfg, rng);
    inst.dlts = normalize(inst.raw);

    std::uniform_int_distribution<std::size_t> block_bound(1, cfg.max_initial_blocks);
    const std::size_t b = block_bound(rng);
    std::uniform_int_distribution<std::size_t> pick(0, b - 1);
    BlockPartitionView groups(b);
    for (std::size_t q = 0; q < cfg.n; ++q) groups[pick(rng)].push_back(static_cast<StateIndex>(q));
    for (auto& g : groups)
        if (!g.empty()) inst.p_init.push_back(std::move(g));
    return inst;
}

Dfa gen_random_dfa(const GenConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    Dfa dfa;
    dfa.lts = random_transitions(cfg, rng);
    dfa.initial = 0;
    std::bernoulli_distribution final_state(0.5);
    for (std::size_t q = 0; q < cfg.n; ++q)
        if (final_state(rng)) dfa.finals.push_back(static_cast<StateIndex>(q));
    return dfa;
}

bool dfa_language_equivalent(const Dfa& d1, const Dfa& d2) {
    const auto map2 = align_alphabets(d1, d2);
    const std::size_t k = d1.lts.letters.size();
    const std::size_t n1 = d1.lts.states.size();
    const std::size_t n2 = d2.lts.states.size();
    // Index n_i is the dead sink of automaton i.
    const auto delta1 = successor_table(d1, identity_map(k), k, n1);
    const auto delta2 = successor_table(d2, map2, k, n2);
    std::vector<char> final1(n1 + 1, 0), final2(n2 + 1, 0);
    for (auto q : d1.finals) final1[q] = 1;
    for (auto q : d2.finals) final2[q] = 1;

    std::vector<char> visited((n1 + 1) * (n2 + 1), 0);
    std::deque<std::pair<std::size_t, std::size_t>> queue;
    const std::size_t s1 = d1.initial ? *d1.initial : n1;
    const std::size_t s2 = d2.initial ? *d2.initial : n2;
    queue.emplace_back(s1, s2);
    visited[s1 * (n2 + 1) + s2] = 1;
    while (!queue.empty()) {
        auto [p, q] = queue.front();
        queue.pop_front();
        if (final1[p] != final2[q]) return false;
        for (std::size_t a = 0; a < k; ++a) {
            const std::size_t p2 = p < n1 ? delta1[p * k + a] : n1;
            const std::size_t q2 = q < n2 ? delta2[q * k + a] : n2;
            auto& seen = visited[p2 * (n2 + 1) + q2];
            if (!seen) {
                seen = 1;
                queue.emplace_back(p2, q2);
            }
        }
    }
    return true;
}

bool dfa_isomorphic(const Dfa& d1, const Dfa& d2) {
    std::vector<std::size_t> map2;
    try {
        map2 = align_alphabets(d1, d2);
    } catch (const ValidationError&) {
        return false;
    }
    const std::size_t n = d1.lts.states.size();
    if (n != d2.lts.states.size() || d1.finals.size() != d2.finals.size()) return false;
    if (d1.initial.has_value() != d2.initial.has_value()) return false;
    if (!d1.initial) return n == 0;
    const std::size_t k = d1.lts.letters.size();
    const auto delta1 = successor_table(d1, identity_map(k), k, kNone);
    const auto delta2 = successor_table(d2, map2, k, kNone);
    std::vector<char> final1(n, 0), final2(n, 0);
    for (auto q : d1.finals) final1[q] = 1;
    for (auto q : d2.finals) final2[q] = 1;

    std::vector<std::size_t> fwd(n, kNone), bwd(n, kNone);
    std::deque<std::size_t> queue{*d1.initial};
    fwd[*d1.initial] = *d2.initial;
    bwd[*d2.initial] = *d1.initial;
    std::size_t mapped = 1;
    while (!queue.empty()) {
        const std::size_t p = queue.front();
        queue.pop_front();
        const std::size_t q = fwd[p];
        if (final1[p] != final2[q]) return false;
        for (std::size_t a = 0; a < k; ++a) {
            const std::size_t p2 = delta1[p * k + a];
            const std::size_t q2 = delta2[q * k + a];
            if ((p2 == kNone) != (q2 == kNone)) return false;
            if (p2 == kNone) continue;
            if (fwd[p2] == kNone && bwd[q2] == kNone) {
                fwd[p2] = q2;
                bwd[q2] = p2;
                ++mapped;
                queue.push_back(p2);
            } else if (fwd[p2] != q2 || bwd[q2] != p2) {
                return false;
            }
        }
    }
    return mapped == n;
}

InvariantChecker::InvariantChecker(const NormalizedDlts& t, const BlockPartitionView& p_init, bool brute_force)
    : t_(&t), brute_force_(brute_force) {
    if (brute_force_) coarsest_ = naive_fixpoint(t, p_init);
}

void InvariantChecker::operator()(const IterationView& view) {
    check_structure(view);
    if (brute_force_) {
        check_contains_coarsest(view);
        check_stable_sets(view);
    }
    ++checks_;
}

void InvariantChecker::check_structure(const IterationView& view) const {
    const auto& p = view.partition;
    if (auto err = p.check_invariants(); !err.empty()) throw InvariantViolation("partition: " + err);
    if (!view.buckets.is_clean()) throw InvariantViolation("letter buckets not empty at loop entry");

    const std::size_t n = p.state_count();
    std::vector<char> covered(n, 0);
    for (const auto& entry : view.worklist) {
        if (entry.left >= entry.right || entry.right > n) throw InvariantViolation("worklist entry has a bad range");
        std::size_t blocks = 0;
        std::size_t i = entry.left;
        while (i < entry.right) {
            const auto& blk = p.block(p.block_of(p.at(i)));
            if (blk.left != i || blk.right > entry.right)
                throw InvariantViolation("worklist entry is not a union of whole blocks");
            i = blk.right;
            ++blocks;
        }
        if (blocks < 2) throw InvariantViolation("worklist entry holds fewer than two blocks");
        for (std::size_t j = entry.left; j < entry.right; ++j) {
            if (covered[j]) throw InvariantViolation("worklist entries overlap");
            covered[j] = 1;
        }
    }
    for (BlockId b = 0; b < p.block_count(); ++b) {
        const bool inside = covered[p.block(b).left] != 0;
        if (inside != p.block(b).in_splitter_union)
            throw InvariantViolation("splitter-union flag of block " + std::to_string(b) + " is stale");
    }
}

void InvariantChecker::check_contains_coarsest(const IterationView& view) const {
    for (const auto& block : coarsest_) {
        const BlockId b = view.partition.block_of(block.front());
        for (StateIndex q : block)
            if (view.partition.block_of(q) != b)
                throw InvariantViolation("a bisimulation inside R_init is no longer inside the current relation");
    }
}

void InvariantChecker::check_stable_sets(const IterationView& view) const {
    const auto& p = view.partition;
    const std::size_t n = p.state_count();
    BlockPartitionView current(p.block_count());
    for (StateIndex q = 0; q < n; ++q) current[p.block_of(q)].push_back(q);
    const auto label = labels_of(n, current);

    auto check = [&](const std::vector<char>& mark) {
        for (LetterIndex a = 0; a < t_->letter_count(); ++a)
            if (!closed_under(current, label, pre_image(*t_, a, mark)))
                throw InvariantViolation("R o pre_a(L) is not included in pre_a(L)");
    };
    for (const auto& entry : view.worklist) {
        std::vector<char> mark(n, 0);
        for (std::size_t i = entry.left; i < entry.right; ++i) mark[p.at(i)] = 1;
        check(mark);
    }
    for (BlockId b = 0; b < p.block_count(); ++b) {
        if (p.block(b).in_splitter_union) continue;
        std::vector<char> mark(n, 0);
        for (StateIndex q : p.block_members(b)) mark[q] = 1;
        check(mark);
    }
}

}  // namespace dlts::oracle
