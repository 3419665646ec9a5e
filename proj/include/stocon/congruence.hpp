#pragma once

#include <string>
#include <utility>

#include "stocon/automaton.hpp"
#include "stocon/errors.hpp"
#include "stocon/friendship.hpp"
#include "stocon/morphism.hpp"
#include "stocon/partition.hpp"

namespace stocon {

/// Equivalence relations on inputs, outputs and states. The triple is a
/// congruence for an automaton iff alpha x gamma is friendly to
/// gamma x beta for its law.
struct CongruenceTriple {
    Partition alpha; // on inputs
    Partition beta;  // on outputs
    Partition gamma; // on states
};

class NotACongruenceError : public PreconditionError {
public:
    NotACongruenceError(const std::string& what, FriendshipReport report)
        : PreconditionError(what), report(std::move(report)) {}
    FriendshipReport report;
};

FriendshipReport is_congruence(const StochasticAutomaton& a, const CongruenceTriple& c);

/// Coarsest gamma refining `seed` such that (alpha, beta, gamma) is a
/// congruence, computed by signature-based partition refinement (split two
/// states whenever some input separates their block-mass vectors over
/// gamma x beta). Terminates in at most |Z| rounds; the fixed point is
/// independent of splitter order.
///
/// When alpha is not discrete a congruence-completing refinement of the
/// seed need not exist at all; in that case the returned fixed point fails
/// is_congruence (which callers can check), since any completing partition
/// would have to refine it.
Partition coarsest_state_congruence(const StochasticAutomaton& a, const Partition& alpha,
                                    const Partition& beta, const Partition& seed);

/// Componentwise lifting c * c_prime of a congruence on the factor
/// automaton back to the base automaton. Both inputs are verified; the
/// result is re-verified to pass is_congruence.
CongruenceTriple compose_congruences(const StochasticAutomaton& a, const CongruenceTriple& c,
                                     const CongruenceTriple& c_prime);

/// (Kern f, Kern g, Kern h) of a commuting morphism; verified to pass
/// is_congruence on the source.
CongruenceTriple kernel_congruence(const Morphism& m);

} // namespace stocon
