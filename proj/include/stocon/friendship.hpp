#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stocon/distribution.hpp"
#include "stocon/partition.hpp"
#include "stocon/rational.hpp"

namespace stocon {

/// Counterexample to friendship: two xi-equivalent points whose measures
/// put different mass on one theta-block. A single block suffices as a
/// witness because block masses determine the mass of every invariant set
/// by additivity.
struct FriendshipWitness {
    std::string left, right;        // xi-equivalent points of F
    std::vector<std::string> block; // the separating theta-block
    Rational left_mass, right_mass;
};

struct FriendshipReport {
    bool friendly = true;
    std::optional<FriendshipWitness> witness;
};

/// A finite stochastic relation F => H given by one row per source element.
struct StochasticRelation {
    SpacePtr source;
    SpacePtr target;
    std::vector<SubDistribution> rows; // indexed by source element

    StochasticRelation(SpacePtr source, SpacePtr target, std::vector<SubDistribution> rows);
};

/// Mass the distribution puts on each theta-block, in block order. On a
/// finite space this vector determines the restriction of d to the
/// invariant sets of theta.
std::vector<Rational> invariant_mass(const SubDistribution& d, const Partition& theta);

/// xi is friendly to theta iff xi-equivalent points induce equal masses on
/// every theta-invariant set. Decided by comparing block-mass vectors of
/// consecutive members of each xi-block; the reported witness is the first
/// in canonical order.
FriendshipReport is_friendly(const std::vector<SubDistribution>& rows, const Partition& xi,
                             const Partition& theta);

FriendshipReport is_friendly(const StochasticRelation& rel, const Partition& xi,
                             const Partition& theta);

} // namespace stocon
