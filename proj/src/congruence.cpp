#include "stocon/congruence.hpp"

#include <utility>
#include <vector>

#include "stocon/factor.hpp"

namespace stocon {

namespace {

void check_triple_spaces(const StochasticAutomaton& a, const CongruenceTriple& c) {
    if (!same_space(c.alpha.space(), a.inputs()) || !same_space(c.beta.space(), a.outputs()) ||
        !same_space(c.gamma.space(), a.states())) {
        throw PreconditionError("congruence triple does not match the automaton's spaces");
    }
}

std::vector<SubDistribution> law_rows(const StochasticAutomaton& a) {
    std::vector<SubDistribution> rows;
    rows.reserve(a.inputs()->size() * a.states()->size());
    for (std::size_t x = 0; x < a.inputs()->size(); ++x) {
        for (std::size_t z = 0; z < a.states()->size(); ++z) {
            rows.push_back(a.row(x, z));
        }
    }
    return rows;
}

} // namespace

FriendshipReport is_congruence(const StochasticAutomaton& a, const CongruenceTriple& c) {
    check_triple_spaces(a, c);
    const Partition xi = product_partition(c.alpha, c.gamma);
    const Partition theta = product_partition(c.gamma, c.beta);
    return is_friendly(law_rows(a), xi, theta);
}

Partition coarsest_state_congruence(const StochasticAutomaton& a, const Partition& alpha,
                                    const Partition& beta, const Partition& seed) {
    if (!same_space(alpha.space(), a.inputs()) || !same_space(beta.space(), a.outputs()) ||
        !same_space(seed.space(), a.states())) {
        throw PreconditionError("coarsest_state_congruence: partitions do not match the automaton");
    }
    const std::size_t nx = a.inputs()->size();
    const std::size_t nz = a.states()->size();

    Partition gamma = seed;
    for (std::size_t round = 0; round <= nz; ++round) {
        const Partition theta = product_partition(gamma, beta);
        // Per-state signature: block-mass vector of every input's row.
        std::vector<std::vector<std::vector<Rational>>> sig(nz);
        for (std::size_t z = 0; z < nz; ++z) {
            sig[z].reserve(nx);
            for (std::size_t x = 0; x < nx; ++x) {
                sig[z].push_back(invariant_mass(a.row(x, z), theta));
            }
        }
        std::vector<std::vector<std::size_t>> blocks;
        for (const auto& block : gamma.blocks()) {
            std::vector<std::pair<std::size_t, std::vector<std::size_t>>> groups; // (first, members)
            for (std::size_t z : block) {
                bool placed = false;
                for (auto& [first, members] : groups) {
                    if (sig[first] == sig[z]) {
                        members.push_back(z);
                        placed = true;
                        break;
                    }
                }
                if (!placed) groups.push_back({z, {z}});
            }
            for (auto& [first, members] : groups) blocks.push_back(std::move(members));
        }
        Partition next(a.states(), std::move(blocks));
        if (next == gamma) return gamma;
        gamma = std::move(next);
    }
    throw InternalConsistencyError("partition refinement did not stabilize in |Z| rounds");
}

CongruenceTriple compose_congruences(const StochasticAutomaton& a, const CongruenceTriple& c,
                                     const CongruenceTriple& c_prime) {
    const FriendshipReport base = is_congruence(a, c);
    if (!base.friendly) {
        throw NotACongruenceError("compose_congruences: the base triple is not a congruence", base);
    }
    const FactorResult fr = factor_automaton(a, c);
    const FriendshipReport upper = is_congruence(fr.factor, c_prime);
    if (!upper.friendly) {
        throw NotACongruenceError(
            "compose_congruences: the triple on the factor automaton is not a congruence", upper);
    }
    CongruenceTriple lifted{lift_partition(c.alpha, c_prime.alpha),
                            lift_partition(c.beta, c_prime.beta),
                            lift_partition(c.gamma, c_prime.gamma)};
    const FriendshipReport composed = is_congruence(a, lifted);
    if (!composed.friendly) {
        throw InternalConsistencyError("lifted triple fails is_congruence");
    }
    return lifted;
}

CongruenceTriple kernel_congruence(const Morphism& m) {
    const MorphismCheck chk = is_morphism(m);
    if (!chk.ok) {
        throw NotAMorphismError("kernel_congruence: the diagram does not commute", chk);
    }
    CongruenceTriple triple{kernel_partition(m.source().inputs(), m.f()),
                            kernel_partition(m.source().outputs(), m.g()),
                            kernel_partition(m.source().states(), m.h())};
    const FriendshipReport rep = is_congruence(m.source(), triple);
    if (!rep.friendly) {
        throw InternalConsistencyError("kernel triple of a morphism fails is_congruence");
    }
    return triple;
}

} // namespace stocon
