#include "dlts/bisim.hpp"

#include <stdexcept>

namespace dlts {

LetterBuckets::LetterBuckets(std::size_t letter_count, std::size_t transition_count)
    : count_(letter_count, 0), start_(letter_count, 0), items_(transition_count) {
    touched_.reserve(letter_count);
}

std::span<const StateIndex> LetterBuckets::bucket(LetterIndex a) const noexcept {
    if (a >= count_.size() || count_[a] == 0) return {};
    return std::span<const StateIndex>(items_).subspan(start_[a], count_[a]);
}

void LetterBuckets::collect(const NormalizedDlts& t, std::span<const StateIndex> states, ScanStats* stats) {
    const auto offsets = t.in_offsets();
    const auto transitions = t.transitions();
    const bool per_transition = stats != nullptr && !stats->per_transition_counts.empty();

    // Count per letter and note first use.
    for (StateIndex q : states) {
        for (std::size_t i = offsets[q]; i < offsets[q + 1]; ++i) {
            const LetterIndex a = transitions[i].letter;
            if (count_[a]++ == 0) touched_.push_back(a);
            if (per_transition) ++stats->per_transition_counts[i];
        }
        if (stats != nullptr) stats->transitions_scanned += offsets[q + 1] - offsets[q];
    }
    std::size_t next = 0;
    for (LetterIndex a : touched_) {
        start_[a] = next;
        next += count_[a];
    }
    // Place sources; count_ doubles as a fill cursor and is restored afterwards.
    for (LetterIndex a : touched_) count_[a] = 0;
    for (StateIndex q : states) {
        for (std::size_t i = offsets[q]; i < offsets[q + 1]; ++i) {
            const LetterIndex a = transitions[i].letter;
            items_[start_[a] + count_[a]++] = transitions[i].src;
        }
    }
}

void LetterBuckets::clear() noexcept {
    for (LetterIndex a : touched_) count_[a] = 0;
    touched_.clear();
}

bool LetterBuckets::is_clean() const noexcept {
    if (!touched_.empty()) return false;
    for (auto c : count_)
        if (c != 0) return false;
    return true;
}

RefinablePartition init_refine(const NormalizedDlts& t, RefinablePartition p_init) {
    LetterBuckets buckets(t.letter_count(), t.transition_count());
    buckets.collect(t, p_init.elements(), nullptr);
    std::vector<SplitRecord> ignored;
    for (LetterIndex a : buckets.touched()) {
        p_init.split(buckets.bucket(a), ignored);
        ignored.clear();
    }
    buckets.clear();
    return p_init;
}

BlockId select_block(const SplitterDesc& l, const RefinablePartition& p) {
    if (l.left >= l.right) throw std::logic_error("select_block: empty splitter");
    const BlockId b = p.block_of(p.at(l.left));
    if (p.block(b).right >= l.right) throw std::logic_error("select_block: splitter holds a single block");
    return b;
}

void collect_smaller_preimages(const NormalizedDlts& t, const RefinablePartition& p, SplitterDesc smaller,
                               LetterBuckets& buckets, ScanStats* stats) {
    buckets.collect(t, p.elements().subspan(smaller.left, smaller.size()), stats);
}

RefinablePartition dbisim(const NormalizedDlts& t, RefinablePartition p_init, ScanStats* stats,
                          const DbisimOptions& options) {
    const std::size_t n = t.state_count();
    if (p_init.state_count() != n) throw std::invalid_argument("dbisim: partition and DLTS disagree on state count");

    ScanStats local;
    ScanStats* sink = stats != nullptr ? stats : (options.count_per_transition ? &local : nullptr);
    if (sink != nullptr && options.count_per_transition) sink->per_transition_counts.assign(t.transition_count(), 0);

    RefinablePartition p = init_refine(t, std::move(p_init));
    if (p.block_count() <= 1) {
        if (sink != nullptr) sink->blocks_final = p.block_count();
        return p;
    }

    std::vector<SplitterDesc> worklist;
    worklist.reserve(n);
    worklist.push_back({0, n});
    for (BlockId b = 0; b < p.block_count(); ++b) p.set_in_splitter_union(b, true);

    LetterBuckets buckets(t.letter_count(), t.transition_count());
    std::vector<SplitRecord> records;
    records.reserve(n);

    while (!worklist.empty()) {
        if (options.observer) options.observer(IterationView{p, worklist, buckets});
        if (sink != nullptr) ++sink->iterations;

        SplitterDesc& top = worklist.back();
        const SplitterDesc whole = top;
        const BlockId b = select_block(whole, p);
        const SplitterDesc first{whole.left, p.block(b).right};
        const SplitterDesc rest{first.right, whole.right};

        p.set_in_splitter_union(b, false);
        const BlockId next = p.block_of(p.at(rest.left));
        if (p.block(next).right == rest.right) {
            // Exactly two blocks: both leave the union of splitters.
            worklist.pop_back();
            p.set_in_splitter_union(next, false);
        } else {
            top.left = rest.left;
        }

        bool first_is_smaller = first.size() <= rest.size();
        if (options.policy == SmallerPolicy::kLargerHalf) first_is_smaller = !first_is_smaller;
        const SplitterDesc smaller = first_is_smaller ? first : rest;

        collect_smaller_preimages(t, p, smaller, buckets, sink);

        for (LetterIndex a : buckets.touched()) {
            records.clear();
            p.split(buckets.bucket(a), records);
            if (sink != nullptr) ++sink->split_calls;
            for (const SplitRecord& rec : records) {
                if (rec.was_in_splitter_union) continue;
                worklist.push_back({rec.left, rec.right});
                p.set_in_splitter_union(rec.c1, true);
                p.set_in_splitter_union(rec.c2, true);
            }
        }
        buckets.clear();
    }

    if (sink != nullptr) sink->blocks_final = p.block_count();
    return p;
}

}  // namespace dlts
