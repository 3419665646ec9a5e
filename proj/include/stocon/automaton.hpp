#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stocon/distribution.hpp"
#include "stocon/space.hpp"

namespace stocon {

struct Violation {
    std::string code; // "mass-exceeds-one", "missing-row"
    std::string where;
};

/// Finite stochastic Mealy machine: for each (input, state) pair the law
/// gives a subprobability over (next state, output) pairs. Rows live over
/// the product space states*outputs. A law row may be absent or carry mass
/// above one; validate_automaton reports such defects.
class StochasticAutomaton {
public:
    using RowKey = std::pair<std::size_t, std::size_t>; // (input, state)

    StochasticAutomaton(SpacePtr inputs, SpacePtr outputs, SpacePtr states,
                        std::map<RowKey, SubDistribution> law);

    const SpacePtr& inputs() const { return inputs_; }
    const SpacePtr& outputs() const { return outputs_; }
    const SpacePtr& states() const { return states_; }
    /// Row space Z*Y shared by all rows.
    const SpacePtr& state_output_space() const { return state_output_; }
    /// Domain space X*Z of the law.
    const SpacePtr& input_state_space() const { return input_state_; }

    const std::map<RowKey, SubDistribution>& law() const { return law_; }
    bool has_row(std::size_t input, std::size_t state) const;
    /// Throws PreconditionError on a missing row.
    const SubDistribution& row(std::size_t input, std::size_t state) const;

    bool is_total() const;
    /// Total and every row has mass exactly one.
    bool is_fully_probabilistic() const { return fully_probabilistic_; }

    bool operator==(const StochasticAutomaton& o) const;

private:
    SpacePtr inputs_, outputs_, states_;
    SpacePtr state_output_, input_state_;
    std::map<RowKey, SubDistribution> law_;
    bool fully_probabilistic_;
};

/// Diagnostic check of the type invariants; empty result iff the automaton
/// is total with subprobability rows.
std::vector<Violation> validate_automaton(const StochasticAutomaton& a);

/// Throws PreconditionError naming the first violation. Used by operations
/// whose contract assumes a valid automaton.
void require_valid(const StochasticAutomaton& a);

} // namespace stocon
