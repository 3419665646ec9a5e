#include "stocon/partition.hpp"

#include <algorithm>

#include "stocon/errors.hpp"

namespace stocon {

Partition::Partition(SpacePtr space, std::vector<std::vector<std::size_t>> blocks)
    : space_(std::move(space)), blocks_(std::move(blocks)) {
    const std::size_t n = space_->size();
    element_block_.assign(n, n); // n = unassigned sentinel
    for (auto& b : blocks_) {
        if (b.empty()) throw MalformedInputError("partition with an empty block");
        std::sort(b.begin(), b.end());
        for (std::size_t e : b) {
            if (e >= n) throw MalformedInputError("partition element out of range");
        }
        if (std::adjacent_find(b.begin(), b.end()) != b.end()) {
            throw MalformedInputError("partition block repeats an element");
        }
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        for (std::size_t e : blocks_[bi]) {
            if (element_block_[e] != n) {
                throw MalformedInputError("partition blocks overlap at '" + space_->label(e) + "'");
            }
            element_block_[e] = bi;
        }
    }
    for (std::size_t e = 0; e < n; ++e) {
        if (element_block_[e] == n) {
            throw MalformedInputError("partition does not cover '" + space_->label(e) + "'");
        }
    }
}

Partition Partition::discrete(SpacePtr space) {
    std::vector<std::vector<std::size_t>> blocks;
    blocks.reserve(space->size());
    for (std::size_t i = 0; i < space->size(); ++i) blocks.push_back({i});
    return Partition(std::move(space), std::move(blocks));
}

Partition Partition::one_block(SpacePtr space) {
    std::vector<std::size_t> all(space->size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return Partition(std::move(space), {std::move(all)});
}

Partition Partition::from_label_blocks(SpacePtr space,
                                       const std::vector<std::vector<std::string>>& blocks) {
    std::vector<std::vector<std::size_t>> idx;
    idx.reserve(blocks.size());
    for (const auto& b : blocks) idx.push_back(to_indices(*space, b));
    return Partition(std::move(space), std::move(idx));
}

std::vector<std::string> Partition::block_labels(std::size_t b) const {
    std::vector<std::string> out;
    out.reserve(blocks_.at(b).size());
    for (std::size_t e : blocks_.at(b)) out.push_back(space_->label(e));
    return out;
}

bool Partition::refines(const Partition& coarser) const {
    if (!(*space_ == *coarser.space_)) {
        throw PreconditionError("refines: partitions over different spaces");
    }
    for (const auto& b : blocks_) {
        const std::size_t target = coarser.block_of(b.front());
        for (std::size_t e : b) {
            if (coarser.block_of(e) != target) return false;
        }
    }
    return true;
}

Partition product_partition(const Partition& p, const Partition& q) {
    auto space = product_space(p.space(), q.space());
    const std::size_t qsize = q.space()->size();
    std::vector<std::vector<std::size_t>> blocks;
    blocks.reserve(p.block_count() * q.block_count());
    for (const auto& pb : p.blocks()) {
        for (const auto& qb : q.blocks()) {
            std::vector<std::size_t> block;
            block.reserve(pb.size() * qb.size());
            for (std::size_t l : pb) {
                for (std::size_t r : qb) block.push_back(pair_index(l, r, qsize));
            }
            blocks.push_back(std::move(block));
        }
    }
    return Partition(std::move(space), std::move(blocks));
}

Partition kernel_partition(const SpacePtr& domain, const std::vector<std::size_t>& m) {
    if (m.size() != domain->size()) {
        throw PreconditionError("kernel_partition: map not total on '" + domain->name() + "'");
    }
    std::map<std::size_t, std::vector<std::size_t>> fibers;
    for (std::size_t e = 0; e < m.size(); ++e) fibers[m[e]].push_back(e);
    std::vector<std::vector<std::size_t>> blocks;
    blocks.reserve(fibers.size());
    for (auto& [unused, fiber] : fibers) blocks.push_back(std::move(fiber));
    return Partition(domain, std::move(blocks));
}

SpacePtr quotient_space(const Partition& p) {
    std::vector<std::string> labels;
    labels.reserve(p.block_count());
    for (const auto& b : p.blocks()) {
        labels.push_back("⟨" + p.space()->label(b.front()) + "⟩");
    }
    return make_space(p.space()->name(), std::move(labels));
}

Partition lift_partition(const Partition& xi, const Partition& zeta) {
    const auto classes = quotient_space(xi);
    if (!same_space(zeta.space(), classes)) {
        throw PreconditionError("lift_partition: zeta does not partition the class space of xi");
    }
    std::vector<std::vector<std::size_t>> blocks;
    blocks.reserve(zeta.block_count());
    for (const auto& zb : zeta.blocks()) {
        std::vector<std::size_t> merged;
        for (std::size_t cls : zb) {
            const auto& xb = xi.block(cls);
            merged.insert(merged.end(), xb.begin(), xb.end());
        }
        blocks.push_back(std::move(merged));
    }
    return Partition(xi.space(), std::move(blocks));
}

} // namespace stocon
