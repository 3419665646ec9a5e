#include "stocon/friendship.hpp"

#include "stocon/errors.hpp"

namespace stocon {

StochasticRelation::StochasticRelation(SpacePtr source_, SpacePtr target_,
                                       std::vector<SubDistribution> rows_)
    : source(std::move(source_)), target(std::move(target_)), rows(std::move(rows_)) {
    if (rows.size() != source->size()) {
        throw PreconditionError("relation rows not total on '" + source->name() + "'");
    }
    for (const auto& r : rows) {
        if (!same_space(r.space(), target)) {
            throw PreconditionError("relation row not over '" + target->name() + "'");
        }
    }
}

std::vector<Rational> invariant_mass(const SubDistribution& d, const Partition& theta) {
    if (!same_space(d.space(), theta.space())) {
        throw PreconditionError("invariant_mass: distribution over '" + d.space()->name() +
                                "' but partition over '" + theta.space()->name() + "'");
    }
    std::vector<Rational> out(theta.block_count());
    for (const auto& [e, w] : d.weights()) out[theta.block_of(e)] += w;
    return out;
}

FriendshipReport is_friendly(const std::vector<SubDistribution>& rows, const Partition& xi,
                             const Partition& theta) {
    if (rows.size() != xi.space()->size()) {
        throw PreconditionError("is_friendly: rows not total on '" + xi.space()->name() + "'");
    }
    for (const auto& r : rows) {
        if (!same_space(r.space(), theta.space())) {
            throw PreconditionError("is_friendly: row space differs from '" +
                                    theta.space()->name() + "'");
        }
    }
    // Equality is transitive, so consecutive members of each block suffice.
    for (const auto& block : xi.blocks()) {
        std::vector<Rational> prev = invariant_mass(rows[block.front()], theta);
        for (std::size_t i = 1; i < block.size(); ++i) {
            std::vector<Rational> cur = invariant_mass(rows[block[i]], theta);
            if (cur == prev) continue;
            for (std::size_t b = 0; b < prev.size(); ++b) {
                if (prev[b] == cur[b]) continue;
                return {false,
                        FriendshipWitness{xi.space()->label(block[i - 1]),
                                          xi.space()->label(block[i]), theta.block_labels(b),
                                          prev[b], cur[b]}};
            }
        }
    }
    return {true, std::nullopt};
}

FriendshipReport is_friendly(const StochasticRelation& rel, const Partition& xi,
                             const Partition& theta) {
    if (!same_space(rel.source, xi.space())) {
        throw PreconditionError("is_friendly: xi not over the relation source");
    }
    return is_friendly(rel.rows, xi, theta);
}

} // namespace stocon
