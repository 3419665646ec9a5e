#include "stocon/morphism.hpp"

#include <algorithm>

#include "stocon/errors.hpp"

namespace stocon {

namespace {

void check_component(const char* name, const std::vector<std::size_t>& m, std::size_t domain,
                     std::size_t codomain) {
    if (m.size() != domain) {
        throw PreconditionError(std::string("morphism component ") + name + " is not total");
    }
    std::vector<bool> hit(codomain, false);
    for (std::size_t v : m) {
        if (v >= codomain) {
            throw PreconditionError(std::string("morphism component ") + name +
                                    " maps outside the target space");
        }
        hit[v] = true;
    }
    if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
        throw PreconditionError(std::string("non-surjective morphism component ") + name);
    }
}

} // namespace

Morphism::Morphism(StochasticAutomaton source, StochasticAutomaton target,
                   std::vector<std::size_t> f, std::vector<std::size_t> g,
                   std::vector<std::size_t> h)
    : source_(std::move(source)),
      target_(std::move(target)),
      f_(std::move(f)),
      g_(std::move(g)),
      h_(std::move(h)) {
    check_component("f", f_, source_.inputs()->size(), target_.inputs()->size());
    check_component("g", g_, source_.outputs()->size(), target_.outputs()->size());
    check_component("h", h_, source_.states()->size(), target_.states()->size());
}

MorphismCheck is_morphism(const Morphism& m) {
    const auto& src = m.source();
    const auto& tgt = m.target();
    const std::size_t ny = src.outputs()->size();
    const std::size_t ny2 = tgt.outputs()->size();

    // h x g as a map between the row spaces.
    std::vector<std::size_t> hg(src.state_output_space()->size());
    for (std::size_t k = 0; k < hg.size(); ++k) {
        const auto [z, y] = pair_split(k, ny);
        hg[k] = pair_index(m.h()[z], m.g()[y], ny2);
    }

    for (std::size_t x = 0; x < src.inputs()->size(); ++x) {
        for (std::size_t z = 0; z < src.states()->size(); ++z) {
            const SubDistribution pushed =
                push_forward(src.row(x, z), hg, tgt.state_output_space());
            const SubDistribution& expect = tgt.row(m.f()[x], m.h()[z]);
            if (pushed == expect) continue;
            // First differing singleton in index order.
            for (std::size_t k = 0; k < tgt.state_output_space()->size(); ++k) {
                const Rational lhs = expect.at(k);
                const Rational rhs = pushed.at(k);
                if (lhs == rhs) continue;
                const auto [z2, y2] = pair_split(k, ny2);
                return {false,
                        MorphismCounterexample{src.inputs()->label(x), src.states()->label(z),
                                               tgt.states()->label(z2), tgt.outputs()->label(y2),
                                               lhs, rhs}};
            }
        }
    }
    return {true, std::nullopt};
}

Morphism identity_morphism(const StochasticAutomaton& a) {
    auto iota = [](std::size_t n) {
        std::vector<std::size_t> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = i;
        return v;
    };
    return Morphism(a, a, iota(a.inputs()->size()), iota(a.outputs()->size()),
                    iota(a.states()->size()));
}

Morphism compose(const Morphism& outer, const Morphism& inner) {
    if (!(inner.target() == outer.source())) {
        throw PreconditionError("compose: inner target differs from outer source");
    }
    auto chain = [](const std::vector<std::size_t>& second, const std::vector<std::size_t>& first) {
        std::vector<std::size_t> out(first.size());
        for (std::size_t i = 0; i < first.size(); ++i) out[i] = second[first[i]];
        return out;
    };
    return Morphism(inner.source(), outer.target(), chain(outer.f(), inner.f()),
                    chain(outer.g(), inner.g()), chain(outer.h(), inner.h()));
}

} // namespace stocon
