#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "stocon/automaton.hpp"
#include "stocon/congruence.hpp"
#include "stocon/distribution.hpp"
#include "stocon/friendship.hpp"
#include "stocon/morphism.hpp"
#include "stocon/partition.hpp"

namespace stocon::testgen {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi); // inclusive

/// Strictly positive rational with small numerator and denominator.
Rational random_rational(Rng& rng, long max_num = 4, long max_den = 6);

SpacePtr random_space(Rng& rng, const std::string& name, const std::string& prefix,
                      std::size_t min_size, std::size_t max_size);

/// Sparse distribution with exact total mass one (full_mass) or a random
/// rational mass strictly below one.
SubDistribution random_subdistribution(Rng& rng, const SpacePtr& space, bool full_mass,
                                       std::size_t max_support = 4);

SubDistribution uniform_distribution(const SpacePtr& space);

struct AutomatonOptions {
    std::size_t min_space = 1;
    std::size_t max_space = 4;
    std::size_t min_states = 0; // 0: inherit min_space
    std::size_t max_states = 0; // 0: inherit max_space
    bool fully_probabilistic = false;
    std::size_t max_moves = 4;
};

StochasticAutomaton random_automaton(Rng& rng, const AutomatonOptions& opts = {});

Partition random_partition(Rng& rng, const SpacePtr& space, std::size_t max_blocks = 0);

/// Rows over `target` built so that xi is friendly to theta: members of one
/// xi-block place identical mass on every theta-block, distributed freely
/// inside the blocks.
std::vector<SubDistribution> friendly_rows(Rng& rng, const SpacePtr& target, const Partition& xi,
                                           const Partition& theta);

/// Friendly rows with one row perturbed so that friendship fails whenever
/// xi relates two distinct points (returns plain friendly rows otherwise).
std::vector<SubDistribution> perturbed_rows(Rng& rng, const SpacePtr& target, const Partition& xi,
                                            const Partition& theta);

StochasticRelation random_relation(Rng& rng, std::size_t max_source = 5,
                                   std::size_t max_target = 5);

std::vector<std::size_t> random_input_word(Rng& rng, const StochasticAutomaton& a,
                                           std::size_t length);

struct BlowUpOptions {
    std::size_t base_min = 1;
    std::size_t base_max = 3;
    std::size_t fiber_max = 2;
    bool uniform_split = false;
    bool fully_probabilistic = true;
};

/// Automaton blown up from a random base along random fibers; the
/// surjections onto the base commute by construction, so the kernel triple
/// is a congruence. Uniform splits additionally make both stepwise stage
/// decompositions valid.
struct BlowUp {
    StochasticAutomaton big;
    Morphism onto_base;
    CongruenceTriple kernel;
};

BlowUp random_blowup(Rng& rng, const BlowUpOptions& opts = {});

/// Double blow-up: a congruence c on `a` plus a congruence on the factor
/// automaton of (a, c), transported from the intermediate level.
struct Stacked {
    StochasticAutomaton a;
    CongruenceTriple c;
    CongruenceTriple c_prime; // over factor_automaton(a, c).factor spaces
};

Stacked random_stacked(Rng& rng, bool uniform_split = true);

} // namespace stocon::testgen
