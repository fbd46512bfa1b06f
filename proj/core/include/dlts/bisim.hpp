#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dlts/lts.hpp"
#include "dlts/partition.hpp"

namespace dlts {

struct ScanStats;

/// A potential splitter: a union of whole blocks stored as the range
/// A[left, right).
struct SplitterDesc {
    std::size_t left = 0;
    std::size_t right = 0;

    std::size_t size() const noexcept { return right - left; }
};

/// Sources of the transitions entering a set of states, distributed by
/// letter with a counting sort into one flat array. Only touched letters are
/// reset by clear().
class LetterBuckets {
public:
    LetterBuckets() = default;
    LetterBuckets(std::size_t letter_count, std::size_t transition_count);

    std::span<const StateIndex> bucket(LetterIndex a) const noexcept;
    std::span<const LetterIndex> touched() const noexcept { return touched_; }
    bool empty() const noexcept { return touched_.empty(); }

    /// Walks the incoming slices of the given states. Precondition: empty().
    /// Each visited transition bumps the counters in stats, if given.
    void collect(const NormalizedDlts& t, std::span<const StateIndex> states, ScanStats* stats);

    void clear() noexcept;

    /// True when every per-letter count is zero and nothing is touched.
    bool is_clean() const noexcept;

private:
    std::vector<std::size_t> count_;
    std::vector<std::size_t> start_;
    std::vector<StateIndex> items_;
    std::vector<LetterIndex> touched_;
};

struct ScanStats {
    std::uint64_t transitions_scanned = 0;
    /// Indexed like NormalizedDlts::transitions(). Left empty unless
    /// requested through DbisimOptions::count_per_transition.
    std::vector<std::uint32_t> per_transition_counts;
    std::uint64_t split_calls = 0;
    std::uint64_t iterations = 0;
    std::size_t blocks_final = 0;
};

/// Snapshot handed to the observer at the top of each main-loop iteration.
struct IterationView {
    const RefinablePartition& partition;
    std::span<const SplitterDesc> worklist;
    const LetterBuckets& buckets;
};

enum class SmallerPolicy {
    kSmallerHalf,
    /// Deliberately wrong choice (the larger side) for mutation testing.
    kLargerHalf,
};

struct DbisimOptions {
    bool count_per_transition = false;
    SmallerPolicy policy = SmallerPolicy::kSmallerHalf;
    std::function<void(const IterationView&)> observer;
};

/// Separates states of each block by their set of outgoing letters.
RefinablePartition init_refine(const NormalizedDlts& t, RefinablePartition p_init);

/// Leftmost block of l. Throws std::logic_error if l holds a single block.
BlockId select_block(const SplitterDesc& l, const RefinablePartition& p);

/// Fills buckets with pre_a(smaller) for each letter a.
void collect_smaller_preimages(const NormalizedDlts& t, const RefinablePartition& p, SplitterDesc smaller,
                               LetterBuckets& buckets, ScanStats* stats);

/// Coarsest bisimulation over t included in the equivalence of p_init.
RefinablePartition dbisim(const NormalizedDlts& t, RefinablePartition p_init, ScanStats* stats = nullptr,
                          const DbisimOptions& options = {});

}  // namespace dlts
