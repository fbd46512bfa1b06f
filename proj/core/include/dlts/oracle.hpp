#pragma once

// Reference machinery for testing the refinement engine. Everything here
// works on plain sets and full scans of the transition list and shares no
// code with partition/bisim beyond the input and snapshot types.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "dlts/bisim.hpp"
#include "dlts/lts.hpp"
#include "dlts/partition.hpp"

namespace dlts::oracle {

using BlockPartitionView = BlockList;

/// Disjoint, non-empty, covering 0..n.
bool is_partition(std::size_t n, const BlockPartitionView& p);

/// For every block B and letter a: every block meeting pre_a(B) lies inside
/// pre_a(B).
bool is_bisimulation(const BlockPartitionView& p, const NormalizedDlts& t);

/// Coarsest bisimulation included in p_init, by splitting every block with
/// every pre_a(B) until nothing changes. Result is canonical.
BlockPartitionView naive_fixpoint(const NormalizedDlts& t, const BlockPartitionView& p_init);

/// p_init refined by outgoing-letter signatures. Canonical.
BlockPartitionView signature_grouping(const NormalizedDlts& t, const BlockPartitionView& p_init);

/// True when no two blocks of result can be merged: merging two blocks from
/// the same p_init block and re-running naive_fixpoint always separates them
/// again. Merges across p_init blocks leave R_init and are rejected outright.
bool coarseness_certificate(const NormalizedDlts& t, const BlockPartitionView& p_init,
                            const BlockPartitionView& result);

/// a refines b: every block of a lies inside one block of b.
bool refines(const BlockPartitionView& a, const BlockPartitionView& b);

struct GenConfig {
    std::size_t n = 8;
    std::size_t k = 2;
    double density = 0.5;
    std::uint64_t seed = 0;
    std::size_t max_initial_blocks = 1;

    /// Throws std::invalid_argument.
    void validate() const;
};

struct Instance {
    RawLts raw;
    NormalizedDlts dlts;
    BlockPartitionView p_init;
};

/// Per (q, a), with probability density, one transition to a uniform state.
/// The initial partition assigns every state to one of b random labels with b
/// uniform in [1, max_initial_blocks]. Deterministic in the seed.
Instance gen_random_dlts(const GenConfig& cfg);

/// Same transition structure as gen_random_dlts; initial state 0, each state
/// final with probability 1/2.
Dfa gen_random_dfa(const GenConfig& cfg);

/// Synchronized product search from the pair of initial states. Missing
/// transitions lead to a dead non-final sink. Throws ValidationError when
/// the alphabets (as sets of names) differ.
bool dfa_language_equivalent(const Dfa& d1, const Dfa& d2);

/// Same alphabet and a bijection of states, found from the initial states,
/// preserving transitions and finality. Unreachable states make it false.
bool dfa_isomorphic(const Dfa& d1, const Dfa& d2);

class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Observer for dbisim that checks, at the top of every iteration:
///  - worklist entries are disjoint unions of at least two whole blocks and
///    the splitter-union flags agree with them;
///  - the letter buckets are empty;
///  - (when brute force is enabled) the coarsest bisimulation stays inside
///    the current partition, and R o pre_a(L) is included in pre_a(L) for
///    every worklist entry and every block outside the worklist.
class InvariantChecker {
public:
    InvariantChecker(const NormalizedDlts& t, const BlockPartitionView& p_init, bool brute_force);

    void operator()(const IterationView& view);

    std::size_t checks_run() const noexcept { return checks_; }

private:
    void check_structure(const IterationView& view) const;
    void check_contains_coarsest(const IterationView& view) const;
    void check_stable_sets(const IterationView& view) const;

    const NormalizedDlts* t_;
    bool brute_force_;
    BlockPartitionView coarsest_;
    std::size_t checks_ = 0;
};

}  // namespace dlts::oracle
