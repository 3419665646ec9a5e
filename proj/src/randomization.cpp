#include "stocon/randomization.hpp"

#include "stocon/errors.hpp"

namespace stocon {

SubDistribution kleisli_extension(const StochasticRelation& rel, const SubDistribution& mu) {
    if (!same_space(mu.space(), rel.source)) {
        throw PreconditionError("kleisli_extension: mu is not over the relation source");
    }
    std::map<std::size_t, Rational> acc;
    for (const auto& [x, m] : mu.weights()) {
        for (const auto& [h, w] : rel.rows[x].weights()) acc[h] += m * w;
    }
    return SubDistribution(rel.target, std::move(acc));
}

bool rnd_equivalent(const SubDistribution& mu, const SubDistribution& nu, const Partition& xi) {
    if (!same_space(mu.space(), nu.space())) {
        throw PreconditionError("rnd_equivalent: distributions over different spaces");
    }
    return invariant_mass(mu, xi) == invariant_mass(nu, xi);
}

RandomFriendReport is_random_friend(const StochasticRelation& rel, const Partition& xi,
                                    const Partition& zeta) {
    if (!same_space(xi.space(), rel.source) || !same_space(zeta.space(), rel.target)) {
        throw PreconditionError("is_random_friend: partitions do not match the relation");
    }
    for (const auto& block : xi.blocks()) {
        for (std::size_t i = 1; i < block.size(); ++i) {
            SubDistribution left = SubDistribution::point_mass(rel.source, block[i - 1]);
            SubDistribution right = SubDistribution::point_mass(rel.source, block[i]);
            if (!rnd_equivalent(kleisli_extension(rel, left), kleisli_extension(rel, right),
                                zeta)) {
                return {false, std::make_pair(std::move(left), std::move(right))};
            }
        }
    }
    return {true, std::nullopt};
}

} // namespace stocon
