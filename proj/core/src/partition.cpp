#include "dlts/partition.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace dlts {

RefinablePartition RefinablePartition::from_initial(std::size_t n, const BlockList& blocks) {
    constexpr auto kUnassigned = static_cast<BlockId>(-1);
    RefinablePartition p;
    p.elements_.reserve(n);
    p.pos_.assign(n, 0);
    p.block_of_.assign(n, kUnassigned);
    p.blocks_.reserve(n);
    p.touched_.reserve(n);
    for (const auto& members : blocks) {
        if (members.empty()) throw ValidationError("empty block in initial partition");
        const auto id = static_cast<BlockId>(p.blocks_.size());
        BlockDesc desc;
        desc.left = p.elements_.size();
        for (StateIndex q : members) {
            if (q >= n) throw ValidationError("state " + std::to_string(q) + " out of range in initial partition");
            if (p.block_of_[q] != kUnassigned)
                throw ValidationError("state " + std::to_string(q) + " appears in two blocks");
            p.block_of_[q] = id;
            p.pos_[q] = p.elements_.size();
            p.elements_.push_back(q);
        }
        desc.right = p.elements_.size();
        desc.cursor = desc.left;
        p.blocks_.push_back(desc);
    }
    if (p.elements_.size() != n) throw ValidationError("initial partition does not cover every state");
    return p;
}

RefinablePartition RefinablePartition::single_block(std::size_t n) {
    if (n == 0) return from_initial(0, {});
    std::vector<StateIndex> all(n);
    for (std::size_t q = 0; q < n; ++q) all[q] = static_cast<StateIndex>(q);
    return from_initial(n, {std::move(all)});
}

void RefinablePartition::split(std::span<const StateIndex> x, std::vector<SplitRecord>& out) {
    touched_.clear();
    for (StateIndex q : x) {
        const BlockId b = block_of_[q];
        BlockDesc& blk = blocks_[b];
        const std::size_t i = pos_[q];
        if (i < blk.cursor) continue;  // already moved
        if (blk.cursor == blk.left) touched_.push_back(b);
        const std::size_t j = blk.cursor++;
        const StateIndex other = elements_[j];
        elements_[j] = q;
        pos_[q] = j;
        elements_[i] = other;
        pos_[other] = i;
        ++element_moves_;
    }
    for (BlockId b : touched_) {
        BlockDesc& blk = blocks_[b];
        const std::size_t cut = blk.cursor;
        blk.cursor = blk.left;
        if (cut == blk.right) continue;  // whole block inside x

        // The moved part C ∩ X gets the fresh id; relabelling it costs at most |x|.
        const auto fresh = static_cast<BlockId>(blocks_.size());
        SplitRecord rec{blk.left, blk.right, fresh, b, blk.in_splitter_union};
        BlockDesc left_part;
        left_part.left = blk.left;
        left_part.right = cut;
        left_part.cursor = blk.left;
        left_part.in_splitter_union = blk.in_splitter_union;
        blk.left = cut;
        blk.cursor = cut;
        for (std::size_t i = left_part.left; i < left_part.right; ++i) block_of_[elements_[i]] = fresh;
        blocks_.push_back(left_part);
        out.push_back(rec);
    }
    touched_.clear();
}

std::vector<SplitRecord> RefinablePartition::split(std::span<const StateIndex> x) {
    std::vector<SplitRecord> out;
    split(x, out);
    return out;
}

BlockList RefinablePartition::to_canonical() const {
    BlockList blocks;
    blocks.reserve(blocks_.size());
    for (BlockId b = 0; b < blocks_.size(); ++b) {
        auto members = block_members(b);
        blocks.emplace_back(members.begin(), members.end());
    }
    return canonicalize(std::move(blocks));
}

std::string RefinablePartition::check_invariants() const {
    const std::size_t n = elements_.size();
    if (pos_.size() != n || block_of_.size() != n) return "array sizes disagree";
    for (std::size_t i = 0; i < n; ++i) {
        if (elements_[i] >= n) return "A holds an out-of-range state";
        if (pos_[elements_[i]] != i) return "pos is not the inverse of A";
    }
    std::vector<char> covered(n, 0);
    for (BlockId b = 0; b < blocks_.size(); ++b) {
        const auto& blk = blocks_[b];
        if (blk.left >= blk.right || blk.right > n) return "block " + std::to_string(b) + " has a bad range";
        if (blk.cursor != blk.left) return "block " + std::to_string(b) + " has a stale split cursor";
        for (std::size_t i = blk.left; i < blk.right; ++i) {
            if (covered[i]) return "blocks overlap";
            covered[i] = 1;
            if (block_of_[elements_[i]] != b) return "block_of disagrees with block ranges";
        }
    }
    if (std::find(covered.begin(), covered.end(), char{0}) != covered.end()) return "blocks do not cover A";
    return {};
}

BlockList canonicalize(BlockList blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(), [](const auto& x, const auto& y) {
        if (x.empty() || y.empty()) return x.size() < y.size();
        return x.front() < y.front();
    });
    return blocks;
}

std::string format_partition(const BlockList& canonical, const std::vector<std::string>& state_names) {
    std::ostringstream out;
    for (const auto& block : canonical) {
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (i) out << ' ';
            out << state_names[block[i]];
        }
        out << '\n';
    }
    return out.str();
}

BlockList parse_partition(std::istream& in, const std::vector<std::string>& state_names) {
    std::unordered_map<std::string, StateIndex> index;
    for (std::size_t q = 0; q < state_names.size(); ++q) index.emplace(state_names[q], static_cast<StateIndex>(q));
    BlockList blocks;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream tokens(line);
        std::vector<StateIndex> block;
        std::string name;
        while (tokens >> name) {
            auto it = index.find(name);
            if (it == index.end()) {
                auto col = line.find(name);
                throw ParseError(line_no, col == std::string::npos ? 1 : col + 1, "unknown state '" + name + "'");
            }
            block.push_back(it->second);
        }
        if (!block.empty()) blocks.push_back(std::move(block));
    }
    return blocks;
}

}  // namespace dlts
