#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "stocon/automaton.hpp"
#include "stocon/congruence.hpp"
#include "stocon/errors.hpp"
#include "stocon/morphism.hpp"
#include "stocon/partition.hpp"

namespace stocon {

/// A base space together with its quotient by a partition and the class map.
struct QuotientSpace {
    SpacePtr base;
    Partition partition;
    SpacePtr classes;
    std::vector<std::size_t> eta; // base index -> class index
};

QuotientSpace make_quotient(const Partition& p);

/// Factor automaton plus the canonical morphism (eta_alpha, eta_beta,
/// eta_gamma) from the source onto it.
struct FactorResult {
    StochasticAutomaton factor;
    Morphism canonical;
};

class StageDecompositionError : public PreconditionError {
public:
    StageDecompositionError(const std::string& what, int stage, FriendshipReport report)
        : PreconditionError(what), stage(stage), report(std::move(report)) {}
    int stage;
    FriendshipReport report;
};

/// Quotient of the automaton by a congruence. Each factor row is computed
/// from the canonically least representative of its class pair and
/// re-verified against every other representative (representative
/// independence is guaranteed by the congruence precondition; a mismatch
/// raises InternalConsistencyError).
FactorResult factor_automaton(const StochasticAutomaton& a, const CongruenceTriple& c);

/// Splits a morphism into the canonical surjection onto its kernel
/// quotient followed by an injective part; the composition reproduces the
/// morphism exactly.
std::pair<Morphism, Morphism> em_factorization(const Morphism& m); // {canonical, mono_part}

/// Mutually inverse morphisms between the one-step factor by c * c_prime
/// and the two-step factor (first c, then c_prime on the factor).
std::pair<Morphism, Morphism> refactor_isomorphism(const StochasticAutomaton& a,
                                                   const CongruenceTriple& c,
                                                   const CongruenceTriple& c_prime);

enum class ReductionOrder { states_first, io_first };

/// Factors in two stages, (1,1,gamma) then the transported remainder (or
/// the symmetric io-first split). The stage-one triple need not inherit
/// the congruence property from c; if it fails, StageDecompositionError
/// reports the stage and witness. The result is isomorphic to direct
/// factoring by c; its canonical morphism is the composite of the stage
/// surjections.
FactorResult stepwise_reduction(const StochasticAutomaton& a, const CongruenceTriple& c,
                                ReductionOrder order);

} // namespace stocon
