#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "dlts/lts.hpp"

namespace dlts {

using BlockId = std::uint32_t;
using BlockList = std::vector<std::vector<StateIndex>>;

/// A block occupies A[left, right). The scratch cursor is only meaningful
/// inside RefinablePartition::split; elsewhere it equals left.
struct BlockDesc {
    std::size_t left = 0;
    std::size_t right = 0;
    bool in_splitter_union = false;
    std::size_t cursor = 0;

    std::size_t size() const noexcept { return right - left; }
};

/// One block C that was split by X. c1 = C ∩ X sits on the left of the
/// original range, c2 = C \ X on the right.
struct SplitRecord {
    std::size_t left = 0;
    std::size_t right = 0;
    BlockId c1 = 0;
    BlockId c2 = 0;
    bool was_in_splitter_union = false;
};

/// Array-backed partition of 0..n: states of a block are contiguous in A,
/// and splitting a block only permutes states inside its own subarray.
class RefinablePartition {
public:
    RefinablePartition() = default;

    /// Throws ValidationError on overlap, gap, empty block or bad index.
    static RefinablePartition from_initial(std::size_t n, const BlockList& blocks);
    static RefinablePartition single_block(std::size_t n);

    std::size_t state_count() const noexcept { return elements_.size(); }
    std::size_t block_count() const noexcept { return blocks_.size(); }

    const BlockDesc& block(BlockId b) const noexcept { return blocks_[b]; }
    BlockId block_of(StateIndex q) const noexcept { return block_of_[q]; }
    std::size_t position(StateIndex q) const noexcept { return pos_[q]; }
    StateIndex at(std::size_t i) const noexcept { return elements_[i]; }
    std::span<const StateIndex> elements() const noexcept { return elements_; }

    /// States of b in A-order.
    std::span<const StateIndex> block_members(BlockId b) const noexcept {
        return std::span<const StateIndex>(elements_).subspan(blocks_[b].left, blocks_[b].size());
    }

    void set_in_splitter_union(BlockId b, bool value) noexcept { blocks_[b].in_splitter_union = value; }

    /// Splits every block that has states both inside and outside x.
    /// Duplicates in x are ignored. Records are appended to out (not cleared).
    /// Performs at most |x| element moves.
    void split(std::span<const StateIndex> x, std::vector<SplitRecord>& out);
    std::vector<SplitRecord> split(std::span<const StateIndex> x);

    /// Element moves performed by all split calls so far.
    std::uint64_t element_moves() const noexcept { return element_moves_; }

    /// Blocks ordered by minimum state, members sorted.
    BlockList to_canonical() const;

    /// Full structural check; returns a description of the first broken
    /// invariant or an empty string.
    std::string check_invariants() const;

private:
    std::vector<StateIndex> elements_;  // A
    std::vector<std::size_t> pos_;
    std::vector<BlockId> block_of_;
    std::vector<BlockDesc> blocks_;
    std::vector<BlockId> touched_;
    std::uint64_t element_moves_ = 0;
};

/// Sorts members and orders blocks by their minimum.
BlockList canonicalize(BlockList blocks);

/// One block per line, member names separated by a space.
std::string format_partition(const BlockList& canonical, const std::vector<std::string>& state_names);

/// Reads the format written by format_partition, resolving names against
/// state_names. Blank lines and `#` comments are skipped. Does not check that
/// the result is a partition; from_initial does.
BlockList parse_partition(std::istream& in, const std::vector<std::string>& state_names);

}  // namespace dlts
