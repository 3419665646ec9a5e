#include "stocon/distribution.hpp"

#include "stocon/errors.hpp"

namespace stocon {

SubDistribution::SubDistribution(SpacePtr space, std::map<std::size_t, Rational> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
    for (auto it = weights_.begin(); it != weights_.end();) {
        if (it->first >= space_->size()) {
            throw MalformedInputError("distribution over '" + space_->name() +
                                      "': element index out of range");
        }
        if (it->second.sign() < 0) {
            throw MalformedInputError("negative weight " + it->second.str() + " at '" +
                                      space_->label(it->first) + "'");
        }
        if (it->second.is_zero()) {
            it = weights_.erase(it);
        } else {
            mass_ += it->second;
            ++it;
        }
    }
}

SubDistribution SubDistribution::zero(SpacePtr space) {
    return SubDistribution(std::move(space), {});
}

SubDistribution SubDistribution::point_mass(SpacePtr space, std::size_t element) {
    std::map<std::size_t, Rational> w;
    w.emplace(element, Rational(1));
    return SubDistribution(std::move(space), std::move(w));
}

Rational SubDistribution::at(std::size_t i) const {
    auto it = weights_.find(i);
    return it == weights_.end() ? Rational(0) : it->second;
}

SubDistribution push_forward(const SubDistribution& d, const std::vector<std::size_t>& m,
                             SpacePtr target) {
    if (m.size() != d.space()->size()) {
        throw MalformedInputError("push_forward: map not total on '" + d.space()->name() + "'");
    }
    std::map<std::size_t, Rational> acc;
    for (const auto& [e, w] : d.weights()) {
        const std::size_t h = m[e];
        if (h >= target->size()) {
            throw MalformedInputError("push_forward: image outside '" + target->name() + "'");
        }
        acc[h] += w;
    }
    return SubDistribution(std::move(target), std::move(acc));
}

} // namespace stocon
