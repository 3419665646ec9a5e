#include "stocon/automaton.hpp"

#include "stocon/errors.hpp"

namespace stocon {

StochasticAutomaton::StochasticAutomaton(SpacePtr inputs, SpacePtr outputs, SpacePtr states,
                                         std::map<RowKey, SubDistribution> law)
    : inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      states_(std::move(states)),
      state_output_(product_space(states_, outputs_)),
      input_state_(product_space(inputs_, states_)),
      law_(std::move(law)) {
    for (const auto& [key, row] : law_) {
        if (key.first >= inputs_->size() || key.second >= states_->size()) {
            throw MalformedInputError("law row outside input*state range");
        }
        if (!same_space(row.space(), state_output_)) {
            throw MalformedInputError("law row at (" + inputs_->label(key.first) + "," +
                                      states_->label(key.second) +
                                      ") is not over the state*output space");
        }
    }
    fully_probabilistic_ = is_total();
    if (fully_probabilistic_) {
        for (const auto& [key, row] : law_) {
            if (!row.has_full_mass()) { fully_probabilistic_ = false; break; }
        }
    }
}

bool StochasticAutomaton::has_row(std::size_t input, std::size_t state) const {
    return law_.count({input, state}) > 0;
}

const SubDistribution& StochasticAutomaton::row(std::size_t input, std::size_t state) const {
    auto it = law_.find({input, state});
    if (it == law_.end()) {
        throw PreconditionError("missing-row (" + inputs_->label(input) + "," +
                                states_->label(state) + ")");
    }
    return it->second;
}

bool StochasticAutomaton::is_total() const {
    return law_.size() == inputs_->size() * states_->size();
}

bool StochasticAutomaton::operator==(const StochasticAutomaton& o) const {
    return *inputs_ == *o.inputs_ && *outputs_ == *o.outputs_ && *states_ == *o.states_ &&
           law_ == o.law_;
}

std::vector<Violation> validate_automaton(const StochasticAutomaton& a) {
    std::vector<Violation> out;
    for (std::size_t x = 0; x < a.inputs()->size(); ++x) {
        for (std::size_t z = 0; z < a.states()->size(); ++z) {
            const std::string where =
                "(" + a.inputs()->label(x) + "," + a.states()->label(z) + ")";
            if (!a.has_row(x, z)) {
                out.push_back({"missing-row", where});
                continue;
            }
            if (!a.row(x, z).is_subprobability()) {
                out.push_back({"mass-exceeds-one", where});
            }
        }
    }
    return out;
}

void require_valid(const StochasticAutomaton& a) {
    const auto violations = validate_automaton(a);
    if (!violations.empty()) {
        throw PreconditionError("invalid automaton: " + violations.front().code + " at " +
                                violations.front().where);
    }
}

} // namespace stocon
