#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stocon/space.hpp"

namespace stocon {

/// Equivalence relation on a finite space, stored as blocks in canonical
/// form: each block sorted by label index, blocks sorted by least member.
class Partition {
public:
    Partition(SpacePtr space, std::vector<std::vector<std::size_t>> blocks);

    static Partition discrete(SpacePtr space);
    static Partition one_block(SpacePtr space);
    static Partition from_label_blocks(SpacePtr space,
                                       const std::vector<std::vector<std::string>>& blocks);

    const SpacePtr& space() const { return space_; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
    const std::vector<std::size_t>& block(std::size_t b) const { return blocks_.at(b); }
    std::size_t block_of(std::size_t element) const { return element_block_.at(element); }
    const std::vector<std::size_t>& block_index() const { return element_block_; }
    std::vector<std::string> block_labels(std::size_t b) const;
    bool same_block(std::size_t a, std::size_t b) const { return block_of(a) == block_of(b); }

    /// True iff every block of *this is contained in a block of coarser.
    bool refines(const Partition& coarser) const;

    bool operator==(const Partition& o) const {
        return *space_ == *o.space_ && blocks_ == o.blocks_;
    }

private:
    SpacePtr space_;
    std::vector<std::vector<std::size_t>> blocks_;
    std::vector<std::size_t> element_block_;
};

/// Blocks are the rectangles P x Q over product_space(p.space, q.space).
Partition product_partition(const Partition& p, const Partition& q);

/// Blocks are the nonempty fibers of the total map.
Partition kernel_partition(const SpacePtr& domain, const std::vector<std::size_t>& m);

/// Quotient space F/xi: one label per block, the least member's label
/// decorated as ⟨least⟩, in block order.
SpacePtr quotient_space(const Partition& p);

/// x equivalent to x' iff their xi-classes are zeta-equivalent; zeta must
/// partition quotient_space(xi). The result is coarser than or equal to xi.
Partition lift_partition(const Partition& xi, const Partition& zeta);

} // namespace stocon
