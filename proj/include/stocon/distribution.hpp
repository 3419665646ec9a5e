#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "stocon/rational.hpp"
#include "stocon/space.hpp"

namespace stocon {

/// Sparse nonnegative measure over a finite space. Stored zero-free and
/// index-sorted, so equality of values is structural equality. Mass is not
/// forced to stay below one here; validate_automaton and the operations
/// that need (sub)probability semantics check it where required.
class SubDistribution {
public:
    SubDistribution(SpacePtr space, std::map<std::size_t, Rational> weights);

    static SubDistribution zero(SpacePtr space);
    static SubDistribution point_mass(SpacePtr space, std::size_t element);

    const SpacePtr& space() const { return space_; }
    const std::map<std::size_t, Rational>& weights() const { return weights_; }
    Rational at(std::size_t i) const;
    const Rational& mass() const { return mass_; }
    bool is_subprobability() const { return mass_ <= Rational(1); }
    bool has_full_mass() const { return mass_ == Rational(1); }

    bool operator==(const SubDistribution& o) const {
        return *space_ == *o.space_ && weights_ == o.weights_;
    }

private:
    SpacePtr space_;
    std::map<std::size_t, Rational> weights_;
    Rational mass_;
};

/// Image measure along the total map `m` (given as index vector over the
/// source space): result(h) = sum of d over the fiber of h.
SubDistribution push_forward(const SubDistribution& d, const std::vector<std::size_t>& m,
                             SpacePtr target);

} // namespace stocon
