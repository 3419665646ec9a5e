#pragma once

#include <optional>
#include <utility>

#include "stocon/distribution.hpp"
#include "stocon/friendship.hpp"
#include "stocon/partition.hpp"

namespace stocon {

/// Linear extension of a relation from points to distributions:
/// K*(mu)(E) integrates the rows against mu. K*(delta_x) is rows[x].
SubDistribution kleisli_extension(const StochasticRelation& rel, const SubDistribution& mu);

/// mu and nu agree on every xi-invariant set, i.e. their block-mass
/// vectors coincide.
bool rnd_equivalent(const SubDistribution& mu, const SubDistribution& nu, const Partition& xi);

/// Two distributions compared under the randomization of xi.
struct RandomizedPair {
    SubDistribution mu, nu;
    Partition xi;

    bool equivalent() const { return rnd_equivalent(mu, nu, xi); }
};

struct RandomFriendReport {
    bool friendly = true;
    std::optional<std::pair<SubDistribution, SubDistribution>> witness;
};

/// xi is a random friend to zeta iff K* maps rnd(xi)-equivalent
/// distributions to rnd(zeta)-equivalent ones. Decided on the generating
/// differences: point masses of xi-equivalent points (K* is linear, and
/// any two distributions with equal block masses differ by a signed
/// combination of within-block point-mass differences). On finite spaces
/// this coincides with is_friendly.
RandomFriendReport is_random_friend(const StochasticRelation& rel, const Partition& xi,
                                    const Partition& zeta);

} // namespace stocon
